#pragma once

#include <stdexcept>
#include <string>

namespace nonfree {

/// Malformed or inconsistent input (bad JSON, wrong degree, unknown name).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A configured resource bound was exceeded.
class BoundError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public InputError {
public:
  using InputError::InputError;
};

class OrderBoundExceeded : public BoundError {
public:
  using BoundError::BoundError;
};

class LatticeBoundExceeded : public BoundError {
public:
  using BoundError::BoundError;
};

class TableBoundExceeded : public BoundError {
public:
  using BoundError::BoundError;
};

class NotInvariant : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

class NotExtremelyNonfree : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

class NegativeWeight : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

} // namespace nonfree
