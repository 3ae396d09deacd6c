#pragma once

#include <stdexcept>
#include <string>

namespace stonespec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (unknown element, bad size, bad grid).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The operation is defined only for a narrower class of structures.
class UnsupportedStructure : public Error {
 public:
  using Error::Error;
};

/// A spectral family violates its defining laws.
class InvalidFamily : public Error {
 public:
  using Error::Error;
};

}  // namespace stonespec
