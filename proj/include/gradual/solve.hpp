#pragma once

#include "gradual/bag.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gradual {

/// Sampled states. times[k] is the iteration index for discrete runs and the
/// integration time k*delta for continuous ones.
struct Trajectory {
  std::vector<double> times;
  std::vector<StrengthVector> states;

  bool empty() const { return states.empty(); }
  std::size_t size() const { return states.size(); }

  void push(double t, const StrengthVector& s) {
    times.push_back(t);
    states.push_back(s);
  }
};

enum class Outcome { Converged, Diverged, BudgetExhausted };

std::string to_string(Outcome outcome);

/// Two consecutive states of a detected period-2 oscillation.
using CycleEvidence = std::pair<StrengthVector, StrengthVector>;

struct SolveResult {
  Outcome outcome = Outcome::BudgetExhausted;
  /// Final state on convergence, otherwise the last state reached.
  StrengthVector strengths;
  /// Steps taken (iterations or integration steps).
  std::size_t steps = 0;
  /// Integrated time; equals steps for discrete runs.
  double time = 0.0;
  /// Max-norm of the last update step (discrete) or of the derivative (continuous).
  double residual = 0.0;
  std::optional<CycleEvidence> divergence_evidence;
  Trajectory trajectory;

  bool converged() const { return outcome == Outcome::Converged; }
};

/// Period-2 detector shared by the discrete and continuous engines.
///
/// Feed states in order. A cycle is reported when the newest state is within
/// `match_tolerance` (max-norm) of the state two steps earlier while the most
/// recent one-step change still exceeds the run tolerance. The match must
/// also be at most `kRelativeMatch` times that one-step change, so a sequence
/// that is merely converging below `match_tolerance` is never reported.
class CycleDetector {
 public:
  explicit CycleDetector(double step_tolerance, double match_tolerance = 1e-9)
      : step_tolerance_(step_tolerance), match_tolerance_(match_tolerance) {}

  /// Returns evidence (previous state, newest state) when a 2-cycle closes.
  std::optional<CycleEvidence> observe(const StrengthVector& state);

  static constexpr double kRelativeMatch = 1e-6;

 private:
  double step_tolerance_;
  double match_tolerance_;
  std::optional<StrengthVector> older_;
  std::optional<StrengthVector> last_;
};

}  // namespace gradual
