#pragma once

#include <stdexcept>
#include <string>

namespace qclab {

// Every failure raised by the library derives from Error so callers (notably
// the CLI) can map families of failures onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// A matrix or vector that fails a state invariant (norm, trace, positivity).
class InvalidState : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParamTooLarge : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  SearchExhausted(const std::string& what, double best_delta)
      : Error(what), best_delta_(best_delta) {}
  double best_delta() const noexcept { return best_delta_; }

 private:
  double best_delta_;
};

class BudgetOverflow : public Error {
 public:
  using Error::Error;
};

class NetTooLarge : public Error {
 public:
  using Error::Error;
};

class BadDistribution : public Error {
 public:
  using Error::Error;
};

class AdversaryFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qclab
