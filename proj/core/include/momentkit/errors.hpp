#pragma once

#include <stdexcept>

namespace momentkit {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Operands over different generator lists or at different t-orders.
class ShapeError : public Error {
public:
  using Error::Error;
};

// An operation was called on input that violates its contract
// (non-unit passed to invert_unit, unverified system passed to trivialize, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

} // namespace momentkit
