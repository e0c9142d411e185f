#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lglab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial text or command line input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An operation was called on input outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class InfiniteMilnorNumber : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NonIsolatedCritical : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotQuasiHomogeneous : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotConvenient : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DegenerateFace : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class TamenessUnverified : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NoStabilization : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An internal identity that must hold exactly did not.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class SocleNotOneDimensional : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

}  // namespace lglab
