#pragma once

#include <stdexcept>
#include <string>

namespace matchdiff {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (bad argument, out of range index).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An r-exponent fell outside the declared Laurent window.
class WindowOverflow : public Error {
 public:
  using Error::Error;
};

// A coefficient was requested beyond the truncation order of a series.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

// Exact data disagreed with itself: inconsistent linear system, nonzero
// held-out residual, cross-validation conflict.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// A retry, search or enumeration budget ran out.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace matchdiff
