#pragma once

#include <stdexcept>
#include <string>

namespace toprank {

// Malformed input: dimension mismatches, out-of-range levels, bad config.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A measure/learner pairing that has no sublinear-regret algorithm.
class RefusedCombination : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Span-membership residual fell between the accept and reject thresholds.
class InconclusiveResidual : public std::runtime_error {
 public:
  InconclusiveResidual(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Learner state machine driven out of order.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace toprank
