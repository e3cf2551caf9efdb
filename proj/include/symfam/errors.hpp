#pragma once

#include <stdexcept>
#include <string>

namespace symfam {

/// Precondition or argument violation (bad N, non-normalized state, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// choose_points ran out of attempts; carries the best condition number seen.
class ConditioningError : public NumericalError {
 public:
  ConditioningError(const std::string& what, double best_condition)
      : NumericalError(what), best_condition_(best_condition) {}
  double best_condition() const noexcept { return best_condition_; }

 private:
  double best_condition_;
};

}  // namespace symfam
