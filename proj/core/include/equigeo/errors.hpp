#pragma once

#include <stdexcept>
#include <string>

namespace equigeo {

// Base class for all library errors, so callers can catch one type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidDimensionError : Error {
  using Error::Error;
};

struct IncompatibleElementsError : Error {
  using Error::Error;
};

struct InvalidParametersError : Error {
  using Error::Error;
};

struct InternalConsistencyError : Error {
  using Error::Error;
};

struct InvalidInputError : Error {
  using Error::Error;
};

struct InvalidMetricError : Error {
  using Error::Error;
};

struct NotFoundError : Error {
  using Error::Error;
};

struct ConstraintViolationError : Error {
  using Error::Error;
};

struct NotApplicableError : Error {
  using Error::Error;
};

}  // namespace equigeo
