#pragma once

#include <stdexcept>
#include <string>

namespace cspline {

/// Base class of all errors thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dimension or block-shape mismatch between operands.
struct ShapeError : Error {
  using Error::Error;
};

/// Input fails a structural precondition (incomplete value table,
/// a map that is not A-linear, a malformed problem file, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// Operation applied outside its mathematical domain
/// (e.g. ellipticity constant of a non-positive form).
struct DomainError : Error {
  using Error::Error;
};

}  // namespace cspline
