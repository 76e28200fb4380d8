#include "vacuum/constants.hpp"

namespace vacuum::constants {

PlanckScales planck_scales(const PhysicalConstants& consts) {
  const double mass = std::sqrt(consts.hbar * consts.c / consts.G);
  const double energy_joule = std::sqrt(consts.hbar * std::pow(consts.c, 5) / consts.G);
  const double joule_per_GeV = consts.e_charge * 1e9;
  return {mass, energy_joule / joule_per_GeV};
}

double planck_length(const PhysicalConstants& consts) {
  return std::sqrt(consts.hbar * consts.G / (consts.c * consts.c * consts.c));
}

}  // namespace vacuum::constants
