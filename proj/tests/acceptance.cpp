// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "gradual/analysis.hpp"
#include "gradual/continuous.hpp"
#include "gradual/discrete.hpp"
#include "test_support.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace gradual;
using gradual::testing::max_abs_diff;

namespace {

struct Verdict {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail << what;
    passed = passed && ok;
  }
};

using Criterion = std::function<void(Verdict&)>;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

void duality_table(Verdict& o) {
  const Bag bag = fixture_duality_bag();
  struct Row {
    SemanticsSpec spec;
    std::array<double, 6> a_then_b;
  };
  const std::vector<Row> rows{
      {SemanticsSpec::euler(), {0.39, 0.63, 0.15, 0.65, 0.41, 0.84}},
      {SemanticsSpec::dfq(1), {0.10, 0.28, 0.12, 0.90, 0.72, 0.88}},
      {SemanticsSpec::qe(1), {0.30, 0.51, 0.17, 0.70, 0.49, 0.83}},
  };
  const std::array<const char*, 6> names{"a1", "a2", "a3", "b1", "b2", "b3"};
  double worst = 0.0;
  for (const auto& row : rows) {
    const StrengthVector s = solve_acyclic(bag, row.spec);
    for (std::size_t j = 0; j < names.size(); ++j) {
      const double got = s(*bag.find(names[j]));
      const double err = std::abs(got - row.a_then_b[j]);
      worst = std::max(worst, err);
      o.require(err <= 0.005, to_string(row.spec) + " " + names[j] + " = " + fmt(got) + "; ");
    }
  }
  o.detail << "18 values, max deviation " << fmt(worst);
}

void star_table(Verdict& o) {
  struct Row {
    SemanticsSpec spec;
    std::array<double, 3> cells;
  };
  const SemanticsSpec top_euler{Aggregation::Top, Influence::EulerBased, 1.0, 2};
  const SemanticsSpec top_pmax1{Aggregation::Top, Influence::PMax, 1.0, 2};
  const SemanticsSpec top_pmax5{Aggregation::Top, Influence::PMax, 5.0, 2};
  const std::vector<Row> rows{
      {SemanticsSpec::euler(), {0.862, 0.811, 0.811}}, {top_euler, {0.862, 0.862, 0.862}},
      {SemanticsSpec::qe(1), {0.498, 0.012, 0.001}},  {top_pmax1, {0.498, 0.498, 0.498}},
      {SemanticsSpec::qe(5), {0.873, 0.213, 0.004}},  {top_pmax5, {0.873, 0.873, 0.873}},
  };
  const std::array<int, 3> ks{1, 10, 100};
  double worst = 0.0;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < ks.size(); ++c) {
      const double got = solve_acyclic(generate_star(ks[c], 0.9, 0.9), row.spec)(0);
      const double err = std::abs(got - row.cells[c]);
      worst = std::max(worst, err);
      o.require(err <= 0.005, to_string(row.spec) + " k=" + std::to_string(ks[c]) + " = " +
                                  fmt(got) + "; ");
    }
  }
  o.detail << "18 cells, max deviation " << fmt(worst);
}

void divergence(Verdict& o) {
  const Bag bag = generate_family(1, 0.9, 0.1);
  for (const auto& spec : {SemanticsSpec::qe(1), SemanticsSpec::dfq(1)}) {
    const SolveResult r = iterate(bag, spec, 1e-4, 100000);
    o.require(r.outcome == gradual::Outcome::Diverged && r.divergence_evidence && r.steps <= 1000,
              to_string(spec) + " did not report period-2 divergence; ");
    o.detail << to_string(spec) << " diverged after " << r.steps << "; ";
  }
  for (const auto& spec : {SemanticsSpec::qe(2.1), SemanticsSpec::dfq(1.9)}) {
    const SolveResult r = iterate(bag, spec, 1e-4, 100000);
    o.require(r.converged() && r.residual <= 1e-4, to_string(spec) + " did not converge; ");
    o.detail << to_string(spec) << " converged after " << r.steps << "; ";
  }
}

void continuization(Verdict& o) {
  const Bag bag = generate_family(1, 0.9, 0.1);
  for (const auto& spec : {SemanticsSpec::qe(1), SemanticsSpec::dfq(1)}) {
    const SolveResult r = integrate_rk4(bag, spec, IntegratorOptions{});
    o.require(r.converged(), to_string(spec) + " rk4 did not converge; ");
    o.require(verify_fixed_point(bag, spec, r.strengths, 1e-3),
              to_string(spec) + " limit is not a fixed point; ");
    o.detail << to_string(spec) << " t = " << r.time << "; ";
  }
}

void step_size(Verdict& o) {
  const Bag bag = generate_family(1, 0.9, 0.1);
  const SemanticsSpec dfq = SemanticsSpec::dfq(1);
  for (double delta : {1.0, 0.9}) {
    const SolveResult r = integrate_euler(bag, dfq, delta, 1e-4, 1e4);
    o.require(r.outcome == gradual::Outcome::Diverged, "delta " + fmt(delta) + " did not diverge; ");
  }
  const SolveResult half = integrate_euler(bag, dfq, 0.5, 1e-4, 1e4);
  o.require(half.converged(), "delta 0.5 did not converge; ");

  const SolveResult discrete = iterate(bag, dfq, 1e-4, 100000);
  const SolveResult unit = integrate_euler(bag, dfq, 1.0, 1e-4, 1e4);
  const bool same_length = discrete.trajectory.size() == unit.trajectory.size();
  o.require(same_length, "sequence lengths differ; ");
  std::size_t equal = 0;
  for (std::size_t k = 0; same_length && k < unit.trajectory.size(); ++k) {
    if (unit.trajectory.states[k] == discrete.trajectory.states[k]) ++equal;
  }
  o.require(same_length && equal == unit.trajectory.size(), "delta 1 states differ from iteration; ");
  o.detail << equal << " of " << unit.trajectory.size() << " states bit-identical";
}

void contraction(Verdict& o) {
  std::mt19937_64 rng(20240601);
  int bags = 0, failures = 0, drawn = 0;
  while (bags < 50 && drawn < 100000) {
    ++drawn;
    const Bag bag = gradual::testing::random_bag(rng, 10, 0.3, false);
    const SemanticsSpec spec = gradual::testing::random_spec(rng, bag);
    const ConvergenceCertificate cert = certify(bag, spec);
    if (!cert.guaranteed) continue;
    ++bags;
    const SolveResult limit = iterate(bag, spec, IterationOptions{1e-14, 10000000, false});
    o.require(limit.converged(), "reference run did not converge; ");
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      const StrengthVector s = iterate_exactly(bag, spec, *cert.iterations_for(eps));
      if (max_abs_diff(s, limit.strengths) > eps) ++failures;
    }
  }
  o.require(bags == 50, "only " + std::to_string(bags) + " certified bags drawn; ");
  o.require(failures == 0, std::to_string(failures) + " bound violations; ");
  o.detail << bags << " certified BAGs x 3 epsilons, " << failures << " failures";
}

void acyclic_equivalence(Verdict& o) {
  std::mt19937_64 rng(20240602);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Bag bag = gradual::testing::random_bag(rng, 12, 0.3, true);
    const SemanticsSpec spec = gradual::testing::random_spec(rng, bag);
    const StrengthVector exact = solve_acyclic(bag, spec);
    const SolveResult discrete = iterate(bag, spec, IterationOptions{1e-12, 100000, false});
    const SolveResult rk4 = integrate_rk4(bag, spec, IntegratorOptions{0.01, 1e-10, 1e4, false});
    o.require(discrete.converged() && rk4.converged(), "reference run did not converge; ");
    worst = std::max({worst, max_abs_diff(exact, discrete.strengths),
                      max_abs_diff(exact, rk4.strengths),
                      max_abs_diff(discrete.strengths, rk4.strengths)});
  }
  o.require(worst <= 1e-4, "disagreement " + fmt(worst) + "; ");
  o.detail << "50 DAGs, max pairwise difference " << worst;
}

void duality(Verdict& o) {
  for (Aggregation agg : {Aggregation::Sum, Aggregation::Product, Aggregation::Top}) {
    const SemanticsSpec spec{agg, Influence::Constant, 1.0, 2};
    o.require(check_duality_aggregation(spec, 10000).passed, to_string(agg) + " failed; ");
  }
  for (const auto& spec : {SemanticsSpec::dfq(1), SemanticsSpec::qe(1)}) {
    o.require(check_duality_influence(spec, 10000).passed, to_string(spec.influence) + " failed; ");
  }
  const CheckReport euler = check_duality_influence(SemanticsSpec::euler(), 10000);
  o.require(!euler.passed && !euler.counterexample.empty(), "Euler-based passed unexpectedly; ");

  const Bag bag = fixture_duality_bag();
  double worst = 0.0;
  for (const auto& spec : {SemanticsSpec::dfq(1), SemanticsSpec::qe(1)}) {
    const StrengthVector s = solve_acyclic(bag, spec);
    for (int i = 1; i <= 3; ++i) {
      const double sum = s(*bag.find("a" + std::to_string(i))) + s(*bag.find("b" + std::to_string(i)));
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  o.require(worst <= 1e-3, "dual sums off by " + fmt(worst) + "; ");
  o.detail << "Euler counterexample: " << euler.counterexample << "; dual sums within " << worst;
}

StrengthVector solve_fixture(const Bag& bag, const SemanticsSpec& spec, Verdict& o) {
  if (is_acyclic(bag)) return solve_acyclic(bag, spec);
  const SolveResult r = integrate_rk4(bag, spec, IntegratorOptions{0.01, 1e-10, 1e4, false});
  o.require(r.converged(), "fixture run did not converge; ");
  return r.strengths;
}

void open_mindedness(Verdict& o) {
  const std::vector<Bag> fixtures{fixture_duality_bag(), gradual::testing::figure1_bag(),
                                  generate_family(1, 0.9, 0.1), generate_star(1, 0.9, 0.9),
                                  generate_star(10, 0.9, 0.9), generate_star(100, 0.9, 0.9)};
  const SemanticsSpec top_euler{Aggregation::Top, Influence::EulerBased, 1.0, 2};
  double top_dev = 0.0, floor_gap = 1.0;
  for (const Bag& bag : fixtures) {
    const StrengthVector top = solve_fixture(bag, top_euler, o);
    top_dev = std::max(top_dev, (top - bag.weights()).cwiseAbs().maxCoeff());
    for (const auto& spec : {top_euler, SemanticsSpec::euler()}) {
      const StrengthVector s = solve_fixture(bag, spec, o);
      floor_gap = std::min(floor_gap, (s.array() - bag.weights().array().square()).minCoeff());
    }
  }
  o.require(top_dev <= 0.25, "Top + Euler-based moved " + fmt(top_dev) + "; ");
  o.require(floor_gap >= -1e-12, "Euler-based strength below w^2; ");
  const double star = solve_acyclic(generate_star(100, 0.9, 0.9), SemanticsSpec::qe(1))(0);
  o.require(star <= 0.001, "QE(1) star k=100 only reached " + fmt(star) + "; ");
  o.detail << "Top + Euler-based max move " << fmt(top_dev) << ", QE(1) k=100 center " << star;
}

void lipschitz(Verdict& o) {
  int functions = 0;
  double worst = 0.0;
  for (Aggregation agg : {Aggregation::Sum, Aggregation::Product, Aggregation::Top}) {
    for (Influence inf : {Influence::Linear, Influence::EulerBased, Influence::PMax}) {
      for (double kappa : {1.0, 5.0}) {
        const SemanticsSpec spec{agg, inf, kappa, 2};
        const CheckReport r = check_lipschitz(spec, 10000, 7);
        o.require(r.passed, to_string(spec) + ": " + r.counterexample + "; ");
        worst = std::max(worst, r.worst);
        ++functions;
      }
    }
  }
  o.detail << functions << " aggregation/influence pairs x 10^4 samples, worst excess " << worst;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Criterion>> criteria{
      {"duality-fixture strengths", duality_table},
      {"star-graph strengths", star_table},
      {"discrete divergence and convergence", divergence},
      {"continuized RK4 convergence", continuization},
      {"Euler step-size study", step_size},
      {"contraction iteration bound", contraction},
      {"acyclic equivalence", acyclic_equivalence},
      {"duality", duality},
      {"open-mindedness", open_mindedness},
      {"empirical Lipschitz constants", lipschitz},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < 5.0, "; took " + std::to_string(secs) + " s");
    if (!o.passed) ++failed;
    std::printf("[%s] %2zu. %s (%.2f s): %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first,
                secs, o.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
