#include "gradual/analysis.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gradual {

namespace {

void require_weight(double w, const char* what) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
  }
}

ParentVector random_parents(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_int_distribution<int> entry(-1, 1);
  ParentVector v(size(rng));
  for (Index j = 0; j < v.size(); ++j) v(j) = entry(rng);
  return v;
}

StrengthVector random_strengths(std::mt19937_64& rng, Index n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StrengthVector s(n);
  for (Index j = 0; j < n; ++j) s(j) = unit(rng);
  return s;
}

// Aggregate values the influence function can see for spec.
double aggregate_span(const SemanticsSpec& spec) {
  if (spec.influence == Influence::Linear) return spec.kappa;
  if (spec.influence == Influence::PMax) return 5.0 * std::max(1.0, spec.kappa);
  return 5.0;
}

std::string vec(const StrengthVector& x) {
  std::ostringstream os;
  os << '(';
  for (Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x(i);
  os << ')';
  return os.str();
}

std::string vec(const ParentVector& v) { return vec(StrengthVector(v.cast<double>())); }

constexpr double kExact = 1e-12;

}  // namespace

Bag generate_family(int k, double va, double vb) {
  if (k < 1) throw std::invalid_argument("family size k must be at least 1");
  require_weight(va, "va");
  require_weight(vb, "vb");

  std::vector<std::string> names;
  StrengthVector weights(2 * k);
  for (int i = 0; i < k; ++i) {
    names.push_back("a" + std::to_string(i + 1));
    weights(i) = va;
  }
  for (int i = 0; i < k; ++i) {
    names.push_back("b" + std::to_string(i + 1));
    weights(k + i) = vb;
  }

  std::vector<Edge> attacks, supports;
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      attacks.push_back({i, j});
      attacks.push_back({k + i, k + j});
      supports.push_back({i, k + j});
      supports.push_back({k + i, j});
    }
  }
  return Bag(std::move(names), std::move(weights), std::move(attacks), std::move(supports));
}

Bag generate_star(int k, double w_center, double w_leaf) {
  if (k < 1) throw std::invalid_argument("star size k must be at least 1");
  require_weight(w_center, "center weight");
  require_weight(w_leaf, "leaf weight");

  std::vector<std::string> names{"a"};
  StrengthVector weights = StrengthVector::Constant(k + 1, w_leaf);
  weights(0) = w_center;
  std::vector<Edge> attacks;
  for (Index i = 1; i <= k; ++i) {
    names.push_back("b" + std::to_string(i));
    attacks.push_back({i, 0});
  }
  return Bag(std::move(names), std::move(weights), std::move(attacks), {});
}

Bag fixture_duality_bag() {
  std::vector<std::string> names{"a1", "a2", "a3", "x1", "x2", "x3", "b1", "b2", "b3"};
  StrengthVector weights(9);
  weights << 0.5, 0.7, 0.2, 0.8, 0.6, 0.4, 0.5, 0.3, 0.8;
  std::vector<Edge> attacks{{3, 0}, {4, 1}, {5, 2}};
  std::vector<Edge> supports{{3, 6}, {4, 7}, {5, 8}};
  return Bag(std::move(names), std::move(weights), std::move(attacks), std::move(supports));
}

CheckReport check_duality_aggregation(const SemanticsSpec& spec, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  std::mt19937_64 rng(seed);
  CheckReport report;
  for (int t = 0; t < trials; ++t) {
    const ParentVector v = random_parents(rng);
    const StrengthVector s = random_strengths(rng, v.size());
    const double lhs = aggregate(spec, v, s);
    const double rhs = -aggregate(spec, ParentVector(-v), s);
    const double gap = std::abs(lhs - rhs);
    report.worst = std::max(report.worst, gap);
    ++report.trials;
    if (gap > kExact) {
      std::ostringstream os;
      os << "v=" << vec(v) << ", s=" << vec(s) << ": alpha_v(s) = " << lhs
         << " but -alpha_{-v}(s) = " << rhs;
      report.passed = false;
      report.counterexample = os.str();
      break;
    }
  }
  return report;
}

CheckReport check_duality_influence(const SemanticsSpec& spec, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double span = aggregate_span(spec);
  std::uniform_real_distribution<double> agg(-span, span);
  CheckReport report;
  for (int t = 0; t < trials; ++t) {
    const double w = unit(rng);
    const double a = agg(rng);
    const double lhs = 1.0 - influence(spec, 1.0 - w, a);
    const double rhs = influence(spec, w, -a);
    const double gap = std::abs(lhs - rhs);
    report.worst = std::max(report.worst, gap);
    ++report.trials;
    if (gap > kExact) {
      std::ostringstream os;
      os << "w=" << w << ", a=" << a << ": 1 - iota_{1-w}(a) = " << lhs
         << " but iota_w(-a) = " << rhs;
      report.passed = false;
      report.counterexample = os.str();
      break;
    }
  }
  return report;
}

CheckReport check_lipschitz(const SemanticsSpec& spec, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> jitter(0.0, 1e-3);
  CheckReport report;

  // Half the pairs are far apart, half are close together to probe local slopes.
  for (int t = 0; t < trials; ++t) {
    const ParentVector v = random_parents(rng);
    const StrengthVector s1 = random_strengths(rng, v.size());
    StrengthVector s2 = random_strengths(rng, v.size());
    if (t % 2 == 1) {
      for (Index j = 0; j < s2.size(); ++j) s2(j) = std::clamp(s1(j) + jitter(rng), 0.0, 1.0);
    }
    const double change = std::abs(aggregate(spec, v, s1) - aggregate(spec, v, s2));
    const double bound = lipschitz_aggregation(spec, v) * (s1 - s2).lpNorm<Eigen::Infinity>();
    report.worst = std::max(report.worst, change - bound);
    ++report.trials;
    if (change > bound + kExact) {
      std::ostringstream os;
      os << to_string(spec.aggregation) << " aggregation, v=" << vec(v) << ", s1=" << vec(s1)
         << ", s2=" << vec(s2) << ": change " << change << " exceeds bound " << bound;
      report.passed = false;
      report.counterexample = os.str();
      return report;
    }
  }

  const double span = aggregate_span(spec);
  std::uniform_real_distribution<double> agg(-span, span);
  for (int t = 0; t < trials; ++t) {
    const double w = unit(rng);
    const double a1 = agg(rng);
    double a2 = agg(rng);
    if (t % 2 == 1) a2 = std::clamp(a1 + jitter(rng), -span, span);
    const double change = std::abs(influence(spec, w, a1) - influence(spec, w, a2));
    const double bound = lipschitz_influence(spec, w) * std::abs(a1 - a2);
    report.worst = std::max(report.worst, change - bound);
    ++report.trials;
    if (change > bound + kExact) {
      std::ostringstream os;
      os << to_string(spec) << " influence, w=" << w << ", a1=" << a1 << ", a2=" << a2
         << ": change " << change << " exceeds bound " << bound;
      report.passed = false;
      report.counterexample = os.str();
      return report;
    }
  }
  return report;
}

bool OpenMindednessBound::contains(const StrengthVector& s, double slack) const {
  return s.size() == lower.size() && (s.array() >= lower.array() - slack).all() &&
         (s.array() <= upper.array() + slack).all();
}

OpenMindednessBound open_mindedness_bound(const Bag& bag, const SemanticsSpec& spec) {
  OpenMindednessBound bound;
  bound.lower.resize(bag.size());
  bound.upper.resize(bag.size());
  for (Index i = 0; i < bag.size(); ++i) {
    const double radius =
        codomain_bound(spec, bag.indegree(i)).value * lipschitz_influence(spec, bag.weight(i));
    bound.lower(i) = bag.weight(i) - radius;
    bound.upper(i) = bag.weight(i) + radius;
  }
  return bound;
}

}  // namespace gradual
