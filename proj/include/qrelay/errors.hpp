#pragma once

#include <stdexcept>
#include <string>

namespace qrelay {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Duplicate, missing, or clashing subsystem labels.
struct LabelError : Error {
  using Error::Error;
};

// Dimension bookkeeping violations (matrix size vs. shape, mismatched operands).
struct ShapeError : Error {
  using Error::Error;
};

// Inputs outside a numeric contract: non-Hermitian where Hermitian is required,
// trace or positivity out of tolerance, non-unitary rotations, zero-norm vectors.
struct NumericError : Error {
  using Error::Error;
};

// Out-of-range or malformed parameters for channel/optimizer/config construction.
struct ParameterError : Error {
  using Error::Error;
};

}  // namespace qrelay
