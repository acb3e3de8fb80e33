#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace acorr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A non-finite value reached a function that only accepts finite input.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller violated a precondition: mismatched dimensions, invalid parameters,
/// malformed configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Singular systems, failed quadrature and other numerical breakdowns.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An online filter produced non-finite weights.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t iteration)
      : Error(what), iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

}  // namespace acorr
