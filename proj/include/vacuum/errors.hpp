#pragma once

#include <stdexcept>
#include <string>

namespace vacuum {

// Base of every error raised by the library. `code()` is a stable identifier
// that ends up in CLI run reports.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define VACUUM_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {}  \
  }

VACUUM_DEFINE_ERROR(InvalidArgument);
VACUUM_DEFINE_ERROR(SymplecticViolation);
VACUUM_DEFINE_ERROR(ZeroSqueezing);
VACUUM_DEFINE_ERROR(StepSizeUnderflow);
VACUUM_DEFINE_ERROR(NormDrift);
VACUUM_DEFINE_ERROR(InsufficientWindow);
VACUUM_DEFINE_ERROR(FitDiverged);
VACUUM_DEFINE_ERROR(InsideHorizon);
VACUUM_DEFINE_ERROR(ResidualExceeded);
VACUUM_DEFINE_ERROR(NonMonotone);
VACUUM_DEFINE_ERROR(OutOfGrid);
VACUUM_DEFINE_ERROR(UnitarityLoss);
VACUUM_DEFINE_ERROR(SuppressedJunction);
VACUUM_DEFINE_ERROR(OverCritical);
VACUUM_DEFINE_ERROR(NoHorizon);
VACUUM_DEFINE_ERROR(ParseError);
VACUUM_DEFINE_ERROR(SchemaError);

#undef VACUUM_DEFINE_ERROR

}  // namespace vacuum
