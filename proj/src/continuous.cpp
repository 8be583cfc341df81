#include "gradual/continuous.hpp"

#include <cmath>
#include <stdexcept>

namespace gradual {

namespace {

StrengthVector clamp_unit(const StrengthVector& s) { return s.cwiseMax(0.0).cwiseMin(1.0); }

// Fixed-step driver. `advance(s, f)` returns the next state given the update
// f = f_S(s) already evaluated at s; the derivative there is f - s.
template <typename Advance>
SolveResult integrate(const Bag& bag, const SemanticsSpec& spec, const IntegratorOptions& options,
                      Advance advance) {
  if (!(options.delta > 0.0)) throw std::invalid_argument("step size delta must be positive");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(options.t_max >= 0.0)) throw std::invalid_argument("t_max must be non-negative");
  require_valid(bag, spec);

  const auto max_steps =
      static_cast<std::size_t>(std::ceil(options.t_max / options.delta - 1e-9));

  SolveResult result;
  StrengthVector s = bag.weights();
  result.trajectory.push(0.0, s);
  CycleDetector cycles(options.tolerance);
  cycles.observe(s);

  std::size_t k = 0;
  for (;;) {
    const StrengthVector f = update(bag, spec, s);
    result.residual = (f - s).lpNorm<Eigen::Infinity>();
    if (result.residual <= options.tolerance) {
      result.outcome = Outcome::Converged;
      break;
    }
    if (k == max_steps) {
      result.outcome = Outcome::BudgetExhausted;
      break;
    }
    s = clamp_unit(advance(s, f));
    ++k;
    result.steps = k;
    result.time = static_cast<double>(k) * options.delta;
    if (options.record_trajectory) result.trajectory.push(result.time, s);
    if (auto evidence = cycles.observe(s)) {
      result.outcome = Outcome::Diverged;
      result.divergence_evidence = std::move(evidence);
      break;
    }
  }
  if (!options.record_trajectory && k > 0) result.trajectory.push(result.time, s);
  result.strengths = std::move(s);
  return result;
}

}  // namespace

SolveResult integrate_euler(const Bag& bag, const SemanticsSpec& spec,
                            const IntegratorOptions& options) {
  const double delta = options.delta;
  return integrate(bag, spec, options, [delta](const StrengthVector& s, const StrengthVector& f) {
    // s + delta * (f - s) in convex form, so delta = 1 yields f exactly.
    return StrengthVector((1.0 - delta) * s + delta * f);
  });
}

SolveResult integrate_rk4(const Bag& bag, const SemanticsSpec& spec,
                          const IntegratorOptions& options) {
  const double h = options.delta;
  return integrate(bag, spec, options, [&](const StrengthVector& s, const StrengthVector& f) {
    const StrengthVector k1 = f - s;
    // Stage points are projected onto [0,1]^n so aggregates stay in their codomain.
    const StrengthVector k2 = rhs(bag, spec, clamp_unit(s + 0.5 * h * k1));
    const StrengthVector k3 = rhs(bag, spec, clamp_unit(s + 0.5 * h * k2));
    const StrengthVector k4 = rhs(bag, spec, clamp_unit(s + h * k3));
    return StrengthVector(s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  });
}

bool verify_fixed_point(const Bag& bag, const SemanticsSpec& spec, const StrengthVector& s,
                        double tol) {
  return (update(bag, spec, s) - s).lpNorm<Eigen::Infinity>() <= tol;
}

}  // namespace gradual
