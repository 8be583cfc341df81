#include "gradual/solve.hpp"

namespace gradual {

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Converged: return "converged";
    case Outcome::Diverged: return "diverged";
    case Outcome::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

std::optional<CycleEvidence> CycleDetector::observe(const StrengthVector& state) {
  std::optional<CycleEvidence> evidence;
  if (older_ && last_) {
    const double back_two = (state - *older_).lpNorm<Eigen::Infinity>();
    const double one_step = (state - *last_).lpNorm<Eigen::Infinity>();
    if (back_two <= match_tolerance_ && one_step > step_tolerance_ &&
        back_two <= kRelativeMatch * one_step) {
      evidence = CycleEvidence{*last_, state};
    }
  }
  older_ = std::move(last_);
  last_ = state;
  return evidence;
}

}  // namespace gradual
