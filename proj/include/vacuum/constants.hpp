#pragma once

#include <cmath>
#include <numbers>

namespace vacuum::constants {

// CODATA 2018. h, e, k_B and c are exact by SI definition; G is measured.
//
//   quantity        symbol   value                    unit
//   Planck          h        6.62607015e-34           J s
//   reduced Planck  hbar     h / 2pi                  J s
//   Boltzmann       k_B      1.380649e-23             J/K
//   gravitation     G        6.67430e-11              m^3/(kg s^2)
//   light speed     c        299792458                m/s
//   charge          e        1.602176634e-19          C
//   flux quantum    Phi_0    h / 2e                   Wb
//   standard g      g_n      9.80665                  m/s^2
struct PhysicalConstants {
  double h = 6.62607015e-34;
  double hbar = 6.62607015e-34 / (2.0 * std::numbers::pi);
  double k_B = 1.380649e-23;
  double G = 6.67430e-11;
  double c = 299792458.0;
  double e_charge = 1.602176634e-19;
  double flux_quantum = 6.62607015e-34 / (2.0 * 1.602176634e-19);
  double g_n = 9.80665;
};

inline constexpr PhysicalConstants kCodata2018{};

inline constexpr double kHbar = kCodata2018.hbar;
inline constexpr double kBoltzmann = kCodata2018.k_B;
inline constexpr double kGravitation = kCodata2018.G;
inline constexpr double kLightSpeed = kCodata2018.c;
inline constexpr double kFluxQuantum = kCodata2018.flux_quantum;
inline constexpr double kStandardGravity = kCodata2018.g_n;

struct PlanckScales {
  double mass_kg;
  double energy_GeV;
};

PlanckScales planck_scales(const PhysicalConstants& consts = kCodata2018);

// Planck length sqrt(hbar G / c^3) in metres.
double planck_length(const PhysicalConstants& consts = kCodata2018);

// Exponents of a quantity's SI dimension in the base (length, time, mass,
// temperature). Energy is {2, -2, 1, 0}.
struct Dimension {
  int length = 0;
  int time = 0;
  int mass = 0;
  int temperature = 0;
};

namespace dim {
inline constexpr Dimension kLength{1, 0, 0, 0};
inline constexpr Dimension kTime{0, 1, 0, 0};
inline constexpr Dimension kFrequency{0, -1, 0, 0};
inline constexpr Dimension kMass{0, 0, 1, 0};
inline constexpr Dimension kEnergy{2, -2, 1, 0};
inline constexpr Dimension kTemperature{0, 0, 0, 1};
inline constexpr Dimension kVelocity{1, -1, 0, 0};
inline constexpr Dimension kAcceleration{1, -2, 0, 0};
}  // namespace dim

enum class UnitMode { SI, natural };

// hbar = c = k_B = 1 with the second as the surviving unit: a length L
// becomes L/c seconds, an energy E becomes E/hbar per second, a temperature
// T becomes k_B T/hbar per second and a mass m becomes m c^2/hbar.
class UnitSystem {
 public:
  explicit UnitSystem(const PhysicalConstants& consts = kCodata2018) : consts_(consts) {}

  double to_natural(double value, Dimension d) const { return value * factor(d); }
  double to_si(double natural_value, Dimension d) const { return natural_value / factor(d); }

  // Power of seconds carried by the natural-unit value.
  static int natural_time_power(Dimension d) { return d.length + d.time - d.mass - d.temperature; }

  const PhysicalConstants& constants() const { return consts_; }

 private:
  double factor(Dimension d) const {
    return std::pow(consts_.c, -d.length) * std::pow(consts_.c * consts_.c / consts_.hbar, d.mass) *
           std::pow(consts_.k_B / consts_.hbar, d.temperature);
  }

  PhysicalConstants consts_;
};

}  // namespace vacuum::constants
