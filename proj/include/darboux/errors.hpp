#pragma once

#include <stdexcept>
#include <string>

namespace darboux {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
	using std::runtime_error::runtime_error;
};

/// Malformed input documents (bad syntax, bad rational strings, schema violations).
class ParseError : public Error {
  public:
	using Error::Error;
};

/// Semantically invalid inputs: chart mismatches, unknown coordinates,
/// violated generator invariants, wrong chart kind.
class InputError : public Error {
  public:
	using Error::Error;
};

/// A solver input that is provably outside the image of the contraction map.
class NotInImageError : public Error {
  public:
	using Error::Error;
};

/// A broken internal invariant (failed cross-check). Indicates a library bug.
class InternalError : public Error {
  public:
	using Error::Error;
};

} // namespace darboux
