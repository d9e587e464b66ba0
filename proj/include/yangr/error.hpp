#pragma once

#include <stdexcept>
#include <string>

namespace yangr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inadmissible input (bad Cartan data, dimension mismatch,
/// unparsable rational, ...). The CLI maps this to exit code 2.
class InputError : public Error {
public:
  using Error::Error;
};

/// A mathematical precondition of an operation does not hold for otherwise
/// well-formed input (e.g. no admissible anchor in rank 1).
class DomainError : public Error {
public:
  using Error::Error;
};

} // namespace yangr
