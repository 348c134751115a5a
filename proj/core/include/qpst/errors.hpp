#pragma once

#include <stdexcept>
#include <string>

namespace qpst {

// Invalid argument values: out-of-range levels, sites, labels, probabilities.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A Hilbert-space dimension exceeded the configured cap.
class DimensionError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// An operation was handed data violating its mathematical precondition
// (e.g. a non-Hermitian generator for a unitary exponential).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// No time in the scan window reached the transfer threshold.
class PstNotFoundError : public std::runtime_error {
 public:
  PstNotFoundError(const std::string& what, double best_time, double best_fidelity)
      : std::runtime_error(what), best_time_(best_time), best_fidelity_(best_fidelity) {}

  double best_time() const noexcept { return best_time_; }
  double best_fidelity() const noexcept { return best_fidelity_; }

 private:
  double best_time_;
  double best_fidelity_;
};

}  // namespace qpst
