#pragma once

#include <stdexcept>
#include <string>

namespace aeris {

// Base of every error raised by the library. Each subclass corresponds to one
// named failure mode so callers (and the CLI exit-code mapping) can dispatch
// on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define AERIS_DEFINE_ERROR(Name)              \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

AERIS_DEFINE_ERROR(InvalidArgument);
AERIS_DEFINE_ERROR(GenerationFailed);
AERIS_DEFINE_ERROR(DegenerateLink);
AERIS_DEFINE_ERROR(EmptySampleSet);
AERIS_DEFINE_ERROR(UnknownNode);
AERIS_DEFINE_ERROR(OutOfRange);
AERIS_DEFINE_ERROR(OutOfRegion);
AERIS_DEFINE_ERROR(NoFeasiblePath);
AERIS_DEFINE_ERROR(EscalateToStrategic);
AERIS_DEFINE_ERROR(InfeasibleSchedule);
AERIS_DEFINE_ERROR(ExceedsPMax);
AERIS_DEFINE_ERROR(ConfigInvalid);

#undef AERIS_DEFINE_ERROR

}  // namespace aeris
