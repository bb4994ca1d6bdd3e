// Error hierarchy shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace tailwave {

// Bad input: parameters, ranges, files. Maps to CLI exit code 1.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure during a run. Maps to CLI exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define TAILWAVE_ERROR(Name, Base)          \
  struct Name : Base {                      \
    explicit Name(const std::string& what)  \
        : Base(#Name ": " + what) {}        \
  };

TAILWAVE_ERROR(OutOfRange, ValidationError)
TAILWAVE_ERROR(DomainError, ValidationError)
TAILWAVE_ERROR(IndexError, ValidationError)
TAILWAVE_ERROR(BandLimitError, ValidationError)
TAILWAVE_ERROR(DegenerateError, ValidationError)
TAILWAVE_ERROR(SupportError, ValidationError)
TAILWAVE_ERROR(HypothesisError, ValidationError)
TAILWAVE_ERROR(RangeError, ValidationError)
TAILWAVE_ERROR(EmptyWindowError, ValidationError)
TAILWAVE_ERROR(ZeroSampleError, ValidationError)
TAILWAVE_ERROR(ConfigError, ValidationError)

TAILWAVE_ERROR(CflError, NumericalError)
TAILWAVE_ERROR(BlowUpError, NumericalError)
TAILWAVE_ERROR(SingularSystemError, NumericalError)
TAILWAVE_ERROR(AxisError, NumericalError)

#undef TAILWAVE_ERROR

}  // namespace tailwave
