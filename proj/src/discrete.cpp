#include "gradual/discrete.hpp"

#include <cmath>
#include <sstream>

namespace gradual {

StrengthVector solve_acyclic(const Bag& bag, const SemanticsSpec& spec) {
  require_valid(bag, spec);
  const auto order = topological_order(bag);
  if (!order) throw CyclicGraphError();

  StrengthVector s = bag.weights();
  for (Index i : *order) {
    const auto& parents = bag.parents(i);
    if (parents.empty()) continue;
    s(i) = influence(spec, bag.weight(i), aggregate(spec, std::span<const Parent>(parents), s));
  }
  return s;
}

SolveResult iterate(const Bag& bag, const SemanticsSpec& spec, const IterationOptions& options) {
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  require_valid(bag, spec);

  SolveResult result;
  StrengthVector s = bag.weights();
  result.trajectory.push(0.0, s);
  CycleDetector cycles(options.tolerance);
  cycles.observe(s);

  for (std::size_t k = 1; k <= options.max_iterations; ++k) {
    StrengthVector next = update(bag, spec, s);
    result.residual = (next - s).lpNorm<Eigen::Infinity>();
    s = std::move(next);
    result.steps = k;
    result.time = static_cast<double>(k);
    if (options.record_trajectory) result.trajectory.push(result.time, s);

    if (result.residual <= options.tolerance) {
      result.outcome = Outcome::Converged;
      break;
    }
    if (auto evidence = cycles.observe(s)) {
      result.outcome = Outcome::Diverged;
      result.divergence_evidence = std::move(evidence);
      break;
    }
  }
  if (!options.record_trajectory && result.steps > 0) result.trajectory.push(result.time, s);
  result.strengths = std::move(s);
  return result;
}

StrengthVector iterate_exactly(const Bag& bag, const SemanticsSpec& spec, std::size_t k) {
  require_valid(bag, spec);
  StrengthVector s = bag.weights();
  for (std::size_t step = 0; step < k; ++step) s = update(bag, spec, s);
  return s;
}

std::optional<std::size_t> ConvergenceCertificate::iterations_for(double epsilon) const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie strictly between 0 and 1");
  }
  if (!guaranteed) return std::nullopt;
  if (global_lambda == 0.0) return 1;
  const double bound = std::log(epsilon) / std::log(global_lambda);
  return static_cast<std::size_t>(std::floor(bound)) + 1;
}

ConvergenceCertificate certify(const Bag& bag, const SemanticsSpec& spec) {
  ConvergenceCertificate cert;
  cert.per_argument_lambda.resize(bag.size());
  for (Index i = 0; i < bag.size(); ++i) {
    cert.per_argument_lambda(i) = lipschitz_aggregation(spec, bag.indegree(i)) *
                                  lipschitz_influence(spec, bag.weight(i));
  }
  cert.global_lambda = bag.size() == 0 ? 0.0 : cert.per_argument_lambda.maxCoeff();
  cert.guaranteed = cert.global_lambda < 1.0;
  return cert;
}

namespace {

std::string real(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// D < bound, or D <= bound when every weight is strictly inside (0,1).
bool below(double d, double bound, bool interior) { return d < bound || (interior && d <= bound); }

}  // namespace

CorollaryVerdict guarantee_by_corollary(const Bag& bag, const SemanticsSpec& spec) {
  const auto d = static_cast<double>(max_indegree(bag));
  const StrengthVector& w = bag.weights();
  const bool interior = bag.size() == 0 || ((w.array() > 0.0).all() && (w.array() < 1.0).all());
  const double kappa = spec.kappa;
  const double p = spec.p;

  if (spec.influence == Influence::Constant) return {true, "constant influence: lambda = 0"};

  switch (spec.aggregation) {
    case Aggregation::Product:
      if (spec.influence == Influence::Linear && below(d, kappa, interior)) {
        return {true, "Product + Linear(kappa): D < kappa (D = " + real(d) + ", kappa = " +
                          real(kappa) + ")"};
      }
      if (spec.influence == Influence::EulerBased && d < 4.0) {
        return {true, "Product + Euler: D * 1/4 < 1 (D = " + real(d) + ")"};
      }
      if (spec.influence == Influence::PMax && below(d, kappa / p, interior)) {
        return {true, "Product + p-Max(kappa): D < kappa/p (D = " + real(d) + ", kappa/p = " +
                          real(kappa / p) + ")"};
      }
      break;
    case Aggregation::Sum:
      if (spec.influence == Influence::PMax && below(d, kappa / p, interior)) {
        return {true, "Sum + p-Max(kappa): D < kappa/p (D = " + real(d) + ", kappa/p = " +
                          real(kappa / p) + ")"};
      }
      if (spec.influence == Influence::EulerBased && d < 4.0) {
        return {true, "Sum + Euler: D * 1/4 < 1 (D = " + real(d) + ")"};
      }
      break;
    case Aggregation::Top: {
      // Top aggregation is 2-Lipschitz, so any influence slope below 1/2 contracts.
      double slope = 0.0;
      switch (spec.influence) {
        case Influence::Linear: slope = 1.0 / kappa; break;
        case Influence::EulerBased: slope = 0.25; break;
        case Influence::PMax: slope = p / kappa; break;
        case Influence::Constant: slope = 0.0; break;
      }
      if (slope < 0.5) {
        return {true, "Top + influence with Lipschitz constant < 1/2 (" + real(slope) + ")"};
      }
      break;
    }
  }

  const ConvergenceCertificate cert = certify(bag, spec);
  if (cert.guaranteed) {
    return {true, "contraction: lambda = " + real(cert.global_lambda) + " < 1"};
  }
  return {false, "none"};
}

}  // namespace gradual
