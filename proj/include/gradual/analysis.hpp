#pragma once

#include "gradual/bag.hpp"
#include "gradual/semantics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gradual {

/// A(k, va, vb): k arguments a1..ak weighted va and k arguments b1..bk
/// weighted vb. Each group attacks itself completely (self-attacks
/// included) and every a supports every b and vice versa.
/// Throws std::invalid_argument for k < 1 or weights outside [0,1].
Bag generate_family(int k, double va, double vb);

/// Argument `a` weighted w_center, attacked by k leaves b1..bk weighted w_leaf.
Bag generate_star(int k, double w_center, double w_leaf);

/// Three triples (a_i, x_i, b_i): x_i attacks a_i and supports b_i, with
/// weights a = (0.5, 0.7, 0.2), x = (0.8, 0.6, 0.4), b = (0.5, 0.3, 0.8).
/// Argument order: a1 a2 a3 x1 x2 x3 b1 b2 b3.
Bag fixture_duality_bag();

/// Outcome of a randomized property check.
struct CheckReport {
  bool passed = true;
  int trials = 0;
  /// Human-readable counterexample with both side values; empty when passed.
  std::string counterexample;
  /// Largest observed violation (or deviation) over all trials.
  double worst = 0.0;
};

/// alpha_v(s) == -alpha_{-v}(s) within 1e-12 on random (v, s).
CheckReport check_duality_aggregation(const SemanticsSpec& spec, int trials = 10000,
                                      std::uint64_t seed = 1);

/// 1 - iota_{1-w}(a) == iota_w(-a) within 1e-12 on random (w, a).
CheckReport check_duality_influence(const SemanticsSpec& spec, int trials = 10000,
                                    std::uint64_t seed = 1);

/// Random pairs never exceed the analytic Lipschitz constants (slack 1e-12),
/// for both the aggregation and the influence function of spec.
CheckReport check_lipschitz(const SemanticsSpec& spec, int trials = 10000, std::uint64_t seed = 1);

/// Per-argument interval [w_i - B_i * l_i, w_i + B_i * l_i] that any fixed
/// point must lie in, with B_i the aggregation codomain bound and l_i the
/// influence Lipschitz constant. Intervals are not clipped to [0,1].
struct OpenMindednessBound {
  StrengthVector lower;
  StrengthVector upper;

  bool contains(const StrengthVector& s, double slack = 0.0) const;
};

OpenMindednessBound open_mindedness_bound(const Bag& bag, const SemanticsSpec& spec);

}  // namespace gradual
