#pragma once

#include <stdexcept>
#include <string>

namespace tworlicz {

/// Base class of every error raised by the library. `kind()` is the stable
/// name reported by the CLI (e.g. "BracketError").
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TWORLICZ_DEFINE_ERROR(Name)                                 \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {}  \
  }

TWORLICZ_DEFINE_ERROR(NonMonotoneInput);
TWORLICZ_DEFINE_ERROR(DivergenceError);
TWORLICZ_DEFINE_ERROR(BracketError);
TWORLICZ_DEFINE_ERROR(InconclusiveGrowth);
TWORLICZ_DEFINE_ERROR(NoStableSlope);
TWORLICZ_DEFINE_ERROR(ParamError);
TWORLICZ_DEFINE_ERROR(DimensionError);
TWORLICZ_DEFINE_ERROR(OverflowError);
TWORLICZ_DEFINE_ERROR(ToleranceError);
TWORLICZ_DEFINE_ERROR(ConcavityError);
TWORLICZ_DEFINE_ERROR(DifferentiabilityError);
TWORLICZ_DEFINE_ERROR(SearchExhausted);
TWORLICZ_DEFINE_ERROR(VerificationError);
TWORLICZ_DEFINE_ERROR(FormatError);
TWORLICZ_DEFINE_ERROR(IoError);

#undef TWORLICZ_DEFINE_ERROR

}  // namespace tworlicz
