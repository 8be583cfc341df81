#pragma once

#include "gradual/bag.hpp"
#include "gradual/semantics.hpp"
#include "gradual/solve.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace gradual {

class CyclicGraphError : public std::runtime_error {
 public:
  CyclicGraphError()
      : std::runtime_error(
            "graph has a cycle; use discrete iteration or continuous integration instead") {}
};

/// Exact evaluation of an acyclic BAG: one pass in topological order, each
/// argument computed once from already-final parents. O(n + |edges|).
/// Throws CyclicGraphError on cyclic input and SpecError on an invalid spec.
StrengthVector solve_acyclic(const Bag& bag, const SemanticsSpec& spec);

struct IterationOptions {
  double tolerance = 1e-4;
  std::size_t max_iterations = 100000;
  bool record_trajectory = true;
};

/// Repeats s <- f_S(s) from the initial weights.
///
/// Converged once a step moves no coordinate by more than `tolerance`.
/// Diverged when the state returns to within 1e-9 of the state two steps
/// earlier while steps remain above tolerance. BudgetExhausted otherwise.
SolveResult iterate(const Bag& bag, const SemanticsSpec& spec, const IterationOptions& options);

inline SolveResult iterate(const Bag& bag, const SemanticsSpec& spec, double tolerance,
                           std::size_t max_iterations) {
  return iterate(bag, spec, IterationOptions{tolerance, max_iterations, true});
}

/// f_S^k(w), without any termination test.
StrengthVector iterate_exactly(const Bag& bag, const SemanticsSpec& spec, std::size_t k);

/// Banach contraction certificate for the update function.
struct ConvergenceCertificate {
  /// lambda^alpha_{g_i} * lambda^iota_{w_i} per argument.
  StrengthVector per_argument_lambda;
  double global_lambda = 0.0;
  bool guaranteed = false;

  /// Smallest k with k > log(epsilon) / log(lambda); f_S^k(w) is then within
  /// epsilon of the fixed point. std::nullopt unless guaranteed.
  /// Throws std::invalid_argument unless 0 < epsilon < 1.
  std::optional<std::size_t> iterations_for(double epsilon) const;
};

ConvergenceCertificate certify(const Bag& bag, const SemanticsSpec& spec);

struct CorollaryVerdict {
  bool guaranteed = false;
  /// Name of the rule that decided; "none" when nothing applies.
  std::string rule = "none";
};

/// Closed-form convergence rules keyed on the maximum indegree, falling back
/// to the general contraction check. Never claims divergence.
CorollaryVerdict guarantee_by_corollary(const Bag& bag, const SemanticsSpec& spec);

}  // namespace gradual
