// Exception hierarchy shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace tdac {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (CSV rows, dates, JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Date axes that cannot be joined.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Series too short for the requested operation.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Rank-deficient regression design.
class SingularDesignError : public Error {
 public:
  using Error::Error;
};

// A node's series does not cover the requested period.
class CoverageError : public Error {
 public:
  using Error::Error;
};

}  // namespace tdac
