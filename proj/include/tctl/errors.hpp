#pragma once

#include <stdexcept>
#include <string>

namespace tctl {

// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ShapeMismatch : public Error {
  public:
    using Error::Error;
};

class NotSquare : public ShapeMismatch {
  public:
    using ShapeMismatch::ShapeMismatch;
};

class DimensionMismatch : public ShapeMismatch {
  public:
    using ShapeMismatch::ShapeMismatch;
};

class NonMonotoneGrid : public Error {
  public:
    using Error::Error;
};

// Errors carrying the offending frontal-slice index (1-based, as reported).
class SliceError : public Error {
  public:
    SliceError(const std::string& msg, int slice) : Error(msg), slice_(slice) {}
    int slice() const { return slice_; }

  private:
    int slice_;
};

class SingularTensor : public SliceError {
  public:
    using SliceError::SliceError;
};

class DefectiveSlice : public SliceError {
  public:
    using SliceError::SliceError;
};

class Uncontrollable : public SliceError {
  public:
    using SliceError::SliceError;
};

class ConjugacyViolation : public Error {
  public:
    using Error::Error;
};

class ConsistencyError : public Error {
  public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
  public:
    using Error::Error;
};

class OverflowError : public Error {
  public:
    using Error::Error;
};

class Unsupported : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

}  // namespace tctl
