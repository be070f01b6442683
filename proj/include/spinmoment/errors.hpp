#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinmoment {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition or malformed input.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be real and non-negative came out otherwise.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Dense expansion would exceed the configured amplitude cap.
class CapacityError : public Error {
 public:
  CapacityError(int dim, int n_sites, std::size_t cap)
      : Error("dense state of dimension " + std::to_string(dim) + "^" +
              std::to_string(n_sites) + " exceeds amplitude cap " +
              std::to_string(cap)),
        dim_(dim),
        n_sites_(n_sites),
        cap_(cap) {}

  int dim() const { return dim_; }
  int n_sites() const { return n_sites_; }
  std::size_t cap() const { return cap_; }

 private:
  int dim_;
  int n_sites_;
  std::size_t cap_;
};

/// A requested search is too large to run.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// No restart of a local search met its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_value)
      : Error(what + " (best value found: " + std::to_string(best_value) + ")"),
        best_value_(best_value) {}

  double best_value() const { return best_value_; }

 private:
  double best_value_;
};

}  // namespace spinmoment
