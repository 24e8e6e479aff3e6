#pragma once

#include <stdexcept>
#include <string>

namespace normtrace {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameter value or malformed input. Messages name the offending field.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input (spec files, element literals).
class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Elements of two different fields were combined without an embedding.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

// An enumeration or table would exceed its configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A floating-point result that must be an integer was not close to one.
class NumericalIntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace normtrace
