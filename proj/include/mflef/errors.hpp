#pragma once

#include <stdexcept>
#include <string>

namespace mflef {

// Root of every error the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user input (bad document, wrong arity, ...).
class InputError : public Error {
public:
  using Error::Error;
};

// A quotient that should be finite-dimensional turned out not to be.
class NonIsolatedError : public Error {
public:
  using Error::Error;
};

// lift_through was asked to express an element outside the submodule.
class NotMemberError : public Error {
public:
  using Error::Error;
};

// A structural identity (delta^2 = w, closedness, ...) does not hold.
class ValidationError : public Error {
public:
  using Error::Error;
};

// Something that the mathematics guarantees did not happen.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace mflef
