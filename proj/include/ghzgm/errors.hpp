#pragma once

#include <stdexcept>
#include <string>

namespace ghzgm {

// Input lies outside the region where an operation is defined (e.g. the
// fidelity-border formula on a separable point, or the pole of an objective).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A constructed object failed its own consistency check.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// An iterative search ran out of iterations; carries the best value seen.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_so_far)
      : std::runtime_error(what), best_so_far_(best_so_far) {}
  double best_so_far() const noexcept { return best_so_far_; }

 private:
  double best_so_far_;
};

}  // namespace ghzgm
