#pragma once

#include <stdexcept>
#include <string>

namespace ffwd {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FFWD_DEFINE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  };

FFWD_DEFINE_ERROR(PoleError)       // Gamma evaluated at a non-positive integer
FFWD_DEFINE_ERROR(ParameterError)  // inadmissible special-function parameter
FFWD_DEFINE_ERROR(NoConvergence)   // series exhausted its term cap
FFWD_DEFINE_ERROR(RangeError)      // adiabatic parameter outside admitted range
FFWD_DEFINE_ERROR(ThresholdError)  // wavenumber below propagation threshold
FFWD_DEFINE_ERROR(StepSizeError)   // grid too coarse for requested accuracy
FFWD_DEFINE_ERROR(NodeError)       // amplitude vanished; state is not a scattering state
FFWD_DEFINE_ERROR(DomainError)     // time outside the fast-forward interval
FFWD_DEFINE_ERROR(StabilityError)  // propagator step monitor tripped
FFWD_DEFINE_ERROR(ConfigError)     // malformed or invalid scenario configuration
FFWD_DEFINE_ERROR(IOError)         // filesystem failure during export

#undef FFWD_DEFINE_ERROR

}  // namespace ffwd
