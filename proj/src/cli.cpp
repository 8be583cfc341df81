#include "gradual/cli.hpp"

#include "gradual/analysis.hpp"
#include "gradual/bag_io.hpp"
#include "gradual/continuous.hpp"
#include "gradual/discrete.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace gradual::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SemanticsFlags {
  std::string preset = "dfq";
  std::string aggregation;
  std::string influence;
  std::optional<double> kappa;
  int p = 2;
};

struct RunConfig {
  std::string input;
  SemanticsFlags semantics;
  std::string mode = "auto";
  double delta = 0.01;
  double tolerance = 1e-4;
  std::size_t max_iterations = 100000;
  double t_max = 1e4;
  std::string trajectory;
  double epsilon = 1e-6;
  std::uint64_t seed = 1;
  int trials = 10000;
  unsigned jobs = 1;
};

void add_semantics_flags(CLI::App* cmd, SemanticsFlags& flags) {
  cmd->add_option("--semantics", flags.preset,
                  "Preset: dfq (Product + Linear), euler (Sum + Euler), qe (Sum + 2-Max), or custom")
      ->check(CLI::IsMember({"dfq", "euler", "qe", "custom"}))
      ->capture_default_str();
  cmd->add_option("--aggregation", flags.aggregation, "Override aggregation")
      ->check(CLI::IsMember({"sum", "product", "top"}));
  cmd->add_option("--influence", flags.influence, "Override influence")
      ->check(CLI::IsMember({"linear", "euler", "pmax", "constant"}));
  cmd->add_option("--kappa", flags.kappa, "Conservativeness for linear / pmax (default 1)");
  cmd->add_option("--p", flags.p, "p-Max exponent")->capture_default_str();
}

SemanticsSpec resolve(const SemanticsFlags& flags) {
  SemanticsSpec spec;
  if (flags.preset == "dfq") {
    spec = SemanticsSpec::dfq();
  } else if (flags.preset == "euler") {
    spec = SemanticsSpec::euler();
  } else if (flags.preset == "qe") {
    spec = SemanticsSpec::qe();
  } else if (flags.aggregation.empty() || flags.influence.empty()) {
    throw UsageError("--semantics custom needs both --aggregation and --influence");
  }

  if (flags.aggregation == "sum") spec.aggregation = Aggregation::Sum;
  if (flags.aggregation == "product") spec.aggregation = Aggregation::Product;
  if (flags.aggregation == "top") spec.aggregation = Aggregation::Top;
  if (flags.influence == "linear") spec.influence = Influence::Linear;
  if (flags.influence == "euler") spec.influence = Influence::EulerBased;
  if (flags.influence == "pmax") spec.influence = Influence::PMax;
  if (flags.influence == "constant") spec.influence = Influence::Constant;

  if (flags.kappa) spec.kappa = *flags.kappa;
  spec.p = flags.p;
  if (!(spec.kappa > 0.0)) throw UsageError("--kappa must be positive");
  if (spec.p < 1) throw UsageError("--p must be at least 1");
  return spec;
}

struct Loaded {
  std::optional<Bag> bag;
  std::string diagnostics;
};

Loaded load(const fs::path& path) {
  Loaded loaded;
  std::ifstream in(path);
  if (!in) {
    loaded.diagnostics = path.string() + ": cannot open file\n";
    return loaded;
  }
  ParseResult parsed = parse_bag(in);
  for (const auto& d : parsed.diagnostics) {
    loaded.diagnostics += path.string() + ":" + d.to_string() + "\n";
  }
  loaded.bag = std::move(parsed.bag);
  return loaded;
}

std::string fixed6(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << x;
  return os.str();
}

std::string real(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// solve

struct SolveOutput {
  int code = kOk;
  std::string report;
  std::string errors;
};

SolveOutput solve_bag(const Bag& bag, const RunConfig& config, const SemanticsSpec& spec) {
  SolveOutput output;
  if (auto problem = validate_spec(bag, spec)) {
    output.code = kUsage;
    output.errors = "configuration error: " + *problem + "\n";
    return output;
  }

  std::string mode = config.mode;
  if (mode == "auto") mode = is_acyclic(bag) ? "acyclic" : "rk4";

  SolveResult result;
  if (mode == "acyclic") {
    try {
      result.strengths = solve_acyclic(bag, spec);
    } catch (const CyclicGraphError& e) {
      output.code = kUsage;
      output.errors = std::string("error: ") + e.what() + "\n";
      return output;
    }
    result.outcome = Outcome::Converged;
    result.trajectory.push(0.0, bag.weights());
    result.trajectory.push(1.0, result.strengths);
  } else if (mode == "discrete") {
    result = iterate(bag, spec, IterationOptions{config.tolerance, config.max_iterations, true});
  } else {
    IntegratorOptions options{config.delta, config.tolerance, config.t_max,
                              !config.trajectory.empty()};
    result = mode == "euler" ? integrate_euler(bag, spec, options)
                             : integrate_rk4(bag, spec, options);
  }

  std::ostringstream os;
  os << "semantics: " << to_string(spec) << "\n";
  os << "mode: " << mode << "\n";
  os << "outcome: " << to_string(result.outcome);
  if (mode == "discrete") {
    os << " after " << result.steps << " iterations";
  } else if (mode != "acyclic") {
    os << " at t = " << real(result.time) << " (" << result.steps << " steps)";
  }
  os << "\n";
  if (result.outcome == Outcome::Diverged) {
    os << "note: period-2 oscillation between two states; try --mode rk4 or a larger --kappa\n";
  } else if (result.outcome == Outcome::BudgetExhausted) {
    os << "note: budget exhausted before the residual " << real(result.residual)
       << " reached tolerance " << real(config.tolerance) << "\n";
  }

  std::size_t width = 8;
  for (const auto& name : bag.names()) width = std::max(width, name.size());
  os << std::left << std::setw(static_cast<int>(width)) << "argument" << "  weight    strength\n";
  for (Index i = 0; i < bag.size(); ++i) {
    os << std::left << std::setw(static_cast<int>(width)) << bag.name(i) << "  "
       << fixed6(bag.weight(i)) << "  " << fixed6(result.strengths(i)) << "\n";
  }
  output.report = os.str();

  if (!config.trajectory.empty()) {
    std::ofstream csv(config.trajectory);
    if (!csv) {
      output.code = kUsage;
      output.errors = "error: cannot write trajectory to " + config.trajectory + "\n";
      return output;
    }
    write_trajectory_csv(result.trajectory, bag.names(), csv);
  }
  output.code = result.converged() ? kOk : kNotConverged;
  return output;
}

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SemanticsSpec spec = resolve(config.semantics);
  const fs::path input(config.input);

  if (!fs::is_directory(input)) {
    Loaded loaded = load(input);
    err << loaded.diagnostics;
    if (!loaded.bag) return kUsage;
    SolveOutput result = solve_bag(*loaded.bag, config, spec);
    out << result.report;
    err << result.errors;
    return result.code;
  }

  if (!config.trajectory.empty()) throw UsageError("--trajectory needs a single input file");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(input)) {
    if (entry.is_regular_file() && entry.path().extension() == ".bag") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  auto job = [&](const fs::path& file) {
    Loaded loaded = load(file);
    SolveOutput result;
    if (loaded.bag) {
      result = solve_bag(*loaded.bag, config, spec);
    } else {
      result.code = kUsage;
    }
    result.errors = loaded.diagnostics + result.errors;
    return result;
  };

  // Runs at most `jobs` solves at a time; reports come out in file order.
  std::vector<SolveOutput> results(files.size());
  const std::size_t batch = std::max(1u, config.jobs);
  for (std::size_t start = 0; start < files.size(); start += batch) {
    std::vector<std::future<SolveOutput>> running;
    for (std::size_t i = start; i < std::min(files.size(), start + batch); ++i) {
      running.push_back(std::async(std::launch::async, job, files[i]));
    }
    for (std::size_t i = 0; i < running.size(); ++i) results[start + i] = running[i].get();
  }

  int code = kOk;
  for (std::size_t i = 0; i < files.size(); ++i) {
    out << "== " << files[i].filename().string() << " ==\n" << results[i].report;
    err << results[i].errors;
    if (results[i].code == kUsage) {
      code = kUsage;
    } else if (results[i].code == kNotConverged && code == kOk) {
      code = kNotConverged;
    }
  }
  return code;
}

// ---------------------------------------------------------------------------
// certify

int cmd_certify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SemanticsSpec spec = resolve(config.semantics);
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
    throw UsageError("--epsilon must lie strictly between 0 and 1");
  }
  Loaded loaded = load(config.input);
  err << loaded.diagnostics;
  if (!loaded.bag) return kUsage;
  const Bag& bag = *loaded.bag;
  if (auto problem = validate_spec(bag, spec)) {
    err << "configuration error: " << *problem << "\n";
    return kUsage;
  }

  const ConvergenceCertificate cert = certify(bag, spec);
  const CorollaryVerdict verdict = guarantee_by_corollary(bag, spec);

  out << "semantics: " << to_string(spec) << "\n";
  std::size_t width = 8;
  for (const auto& name : bag.names()) width = std::max(width, name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "argument" << "  indegree  lambda\n";
  for (Index i = 0; i < bag.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(width)) << bag.name(i) << "  "
        << std::setw(8) << bag.indegree(i) << "  " << fixed6(cert.per_argument_lambda(i)) << "\n";
  }
  out << "global lambda: " << fixed6(cert.global_lambda) << "\n";
  out << "guaranteed: " << (cert.guaranteed ? "yes" : "no") << "\n";
  if (auto k = cert.iterations_for(config.epsilon)) {
    out << "iterations for epsilon " << real(config.epsilon) << ": " << *k << "\n";
  }
  out << "max indegree: " << max_indegree(bag) << "\n";
  out << "closed-form rule: " << (verdict.guaranteed ? verdict.rule : "none applies") << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// generate

double parse_real(const std::string& text, const char* what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  return value;
}

int parse_count(const std::string& text) {
  const double k = parse_real(text, "k");
  if (k < 1 || k != std::floor(k)) throw UsageError("k must be a positive integer, got '" + text + "'");
  return static_cast<int>(k);
}

int cmd_generate(const std::string& kind, const std::vector<std::string>& params,
                 const std::string& output, std::ostream& out, std::ostream& err) {
  Bag bag;
  try {
    if (kind == "family") {
      if (params.size() != 3) throw UsageError("usage: generate family K VA VB");
      bag = generate_family(parse_count(params[0]), parse_real(params[1], "va"),
                            parse_real(params[2], "vb"));
    } else if (kind == "star") {
      if (params.size() != 3) throw UsageError("usage: generate star K W_CENTER W_LEAF");
      bag = generate_star(parse_count(params[0]), parse_real(params[1], "center weight"),
                          parse_real(params[2], "leaf weight"));
    } else {
      if (!params.empty()) throw UsageError("usage: generate duality-fixture");
      bag = fixture_duality_bag();
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const std::string text = serialize_bag(bag);
  if (output.empty() || output == "-") {
    out << text;
    return kOk;
  }
  std::ofstream file(output);
  if (!file || !(file << text)) {
    err << "error: cannot write " << output << "\n";
    return kUsage;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// check

void print_report(std::ostream& out, const std::string& label, const CheckReport& report) {
  out << label << ": " << (report.passed ? "pass" : "FAIL") << " (" << report.trials << " trials)\n";
  if (!report.passed) out << "  counterexample: " << report.counterexample << "\n";
}

int cmd_check(const std::string& property, const RunConfig& config, std::ostream& out,
              std::ostream& err) {
  const SemanticsSpec spec = resolve(config.semantics);
  if (config.trials < 1) throw UsageError("--trials must be at least 1");
  out << "semantics: " << to_string(spec) << "\n";

  if (property == "duality") {
    const CheckReport agg = check_duality_aggregation(spec, config.trials, config.seed);
    const CheckReport inf = check_duality_influence(spec, config.trials, config.seed);
    print_report(out, "aggregation duality", agg);
    print_report(out, "influence duality", inf);
    return agg.passed && inf.passed ? kOk : kNotConverged;
  }

  if (property == "lipschitz") {
    const CheckReport report = check_lipschitz(spec, config.trials, config.seed);
    print_report(out, "empirical <= analytic Lipschitz constants", report);
    return report.passed ? kOk : kNotConverged;
  }

  // open-mindedness: solved strengths must sit inside their a-priori intervals.
  std::vector<std::pair<std::string, Bag>> bags;
  if (!config.input.empty()) {
    Loaded loaded = load(config.input);
    err << loaded.diagnostics;
    if (!loaded.bag) return kUsage;
    bags.emplace_back(config.input, std::move(*loaded.bag));
  } else {
    bags.emplace_back("duality-fixture", fixture_duality_bag());
    for (int k : {1, 10, 100}) {
      bags.emplace_back("star " + std::to_string(k), generate_star(k, 0.9, 0.9));
    }
    bags.emplace_back("family 1 0.9 0.1", generate_family(1, 0.9, 0.1));
  }

  bool passed = true;
  for (const auto& [label, bag] : bags) {
    if (auto problem = validate_spec(bag, spec)) {
      out << label << ": skipped (" << *problem << ")\n";
      continue;
    }
    SolveResult result;
    if (is_acyclic(bag)) {
      result.strengths = solve_acyclic(bag, spec);
      result.outcome = Outcome::Converged;
    } else {
      result = integrate_rk4(bag, spec,
                             IntegratorOptions{config.delta, config.tolerance, config.t_max, false});
    }
    if (!result.converged()) {
      out << label << ": skipped (" << to_string(result.outcome) << ")\n";
      continue;
    }
    const OpenMindednessBound bound = open_mindedness_bound(bag, spec);
    const StrengthVector deviation = (result.strengths - bag.weights()).cwiseAbs();
    const bool inside = bound.contains(result.strengths, 1e-9);
    passed = passed && inside;
    out << label << ": " << (inside ? "pass" : "FAIL") << " (max |strength - weight| = "
        << fixed6(deviation.maxCoeff()) << ", max allowed = "
        << fixed6(((bound.upper - bound.lower) / 2.0).maxCoeff()) << ")\n";
    if (!inside) {
      for (Index i = 0; i < bag.size(); ++i) {
        const double s = result.strengths(i);
        if (s < bound.lower(i) - 1e-9 || s > bound.upper(i) + 1e-9) {
          out << "  counterexample: " << bag.name(i) << " = " << fixed6(s) << " outside ["
              << fixed6(bound.lower(i)) << ", " << fixed6(bound.upper(i)) << "]\n";
        }
      }
    }
  }
  return passed ? kOk : kNotConverged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gradual semantics for weighted bipolar argumentation graphs", "gradual"};
  app.require_subcommand(1);
  RunConfig config;

  auto* solve = app.add_subcommand("solve", "Compute final strengths for a BAG file or directory");
  solve->add_option("input", config.input, "BAG file, or directory of .bag files")->required();
  add_semantics_flags(solve, config.semantics);
  solve->add_option("--mode", config.mode, "Solver")
      ->check(CLI::IsMember({"auto", "acyclic", "discrete", "euler", "rk4"}))
      ->capture_default_str();
  solve->add_option("--delta", config.delta, "Step size for euler / rk4")->capture_default_str();
  solve->add_option("--tolerance", config.tolerance, "Step / derivative tolerance")
      ->capture_default_str();
  solve->add_option("--max-iterations", config.max_iterations, "Discrete iteration budget")
      ->capture_default_str();
  solve->add_option("--t-max", config.t_max, "Integration time budget")->capture_default_str();
  solve->add_option("--trajectory", config.trajectory, "Write sampled states as CSV");
  solve->add_option("--jobs", config.jobs, "Concurrent solves for directory input")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* cert = app.add_subcommand("certify", "Contraction certificate and iteration bound");
  cert->add_option("input", config.input, "BAG file")->required();
  add_semantics_flags(cert, config.semantics);
  cert->add_option("--epsilon", config.epsilon, "Target distance to the fixed point")
      ->capture_default_str();

  std::string kind;
  std::vector<std::string> params;
  std::string output;
  auto* gen = app.add_subcommand("generate", "Emit a generated BAG in text format");
  gen->add_option("kind", kind, "family | star | duality-fixture")
      ->required()
      ->check(CLI::IsMember({"family", "star", "duality-fixture"}));
  gen->add_option("params", params, "family: K VA VB; star: K W_CENTER W_LEAF");
  gen->add_option("-o,--output", output, "Output path (default stdout)");

  std::string property;
  auto* check = app.add_subcommand("check", "Randomized semantic property checks");
  check->add_option("property", property, "duality | open-mindedness | lipschitz")
      ->required()
      ->check(CLI::IsMember({"duality", "open-mindedness", "lipschitz"}));
  add_semantics_flags(check, config.semantics);
  check->add_option("--input", config.input, "BAG file for open-mindedness (default: built-in fixtures)");
  check->add_option("--trials", config.trials, "Random samples per function")->capture_default_str();
  check->add_option("--seed", config.seed, "Sampling seed")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(config, out, err);
    if (cert->parsed()) return cmd_certify(config, out, err);
    if (gen->parsed()) return cmd_generate(kind, params, output, out, err);
    if (check->parsed()) return cmd_check(property, config, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const SpecError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace gradual::cli
