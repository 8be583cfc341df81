#pragma once

#include "gradual/bag.hpp"
#include "gradual/semantics.hpp"
#include "gradual/solve.hpp"

namespace gradual {

/// sigma' = f_S(sigma) - sigma.
template <typename Derived>
StrengthVectorT<typename Derived::Scalar> rhs(const Bag& bag, const SemanticsSpec& spec,
                                              const Eigen::MatrixBase<Derived>& sigma) {
  return update(bag, spec, sigma) - sigma;
}

struct IntegratorOptions {
  double delta = 0.01;
  /// Converged once max-norm of the derivative drops to this value.
  double tolerance = 1e-4;
  double t_max = 1e4;
  bool record_trajectory = true;
};

/// Explicit Euler: sigma <- (1 - delta) * sigma + delta * f_S(sigma).
/// With delta = 1 the states coincide bit-for-bit with discrete iteration.
SolveResult integrate_euler(const Bag& bag, const SemanticsSpec& spec,
                            const IntegratorOptions& options);

/// Classical fourth-order Runge-Kutta with fixed step delta.
SolveResult integrate_rk4(const Bag& bag, const SemanticsSpec& spec,
                          const IntegratorOptions& options);

inline SolveResult integrate_euler(const Bag& bag, const SemanticsSpec& spec, double delta,
                                   double tolerance, double t_max) {
  return integrate_euler(bag, spec, IntegratorOptions{delta, tolerance, t_max, true});
}

inline SolveResult integrate_rk4(const Bag& bag, const SemanticsSpec& spec, double delta,
                                 double tolerance, double t_max) {
  return integrate_rk4(bag, spec, IntegratorOptions{delta, tolerance, t_max, true});
}

/// True iff max-norm(f_S(s) - s) <= tol.
bool verify_fixed_point(const Bag& bag, const SemanticsSpec& spec, const StrengthVector& s,
                        double tol);

}  // namespace gradual
