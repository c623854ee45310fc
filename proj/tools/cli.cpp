#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>

#include "lsape/bench.hpp"
#include "lsape/core.hpp"
#include "lsape/error.hpp"
#include "lsape/matrix_io.hpp"
#include "lsape/oracle.hpp"
#include "lsape/scaling.hpp"
#include "lsape/transform.hpp"

namespace lsape::cli {
namespace {

struct SolveArgs {
  std::string input;
  std::string output;
  std::string algo = "d1d2";
  double tol = 1e-6;
  int max_iter = 1000;
  bool simplify = false;
  double floor = 1e-4;
  bool round = false;
  bool allow_nonpositive_edits = false;
};

struct ConvertArgs {
  std::string input;
  std::string output;
  std::string direction;
  std::string scheme = "balanced";
  std::optional<double> c;
  double margin = 1.0;
};

struct GenArgs {
  int n = 0;
  std::optional<int> m;
  double h = 0.5;
  std::uint64_t seed = 0;
  bool lsap = false;
  std::string output;
};

struct AnalyzeArgs {
  std::string input;
};

struct BenchArgs {
  std::string sizes;
  std::string h_values = "0.1";
  int trials = 100;
  bool simplify = false;
  std::string algo = "d1d2";
  std::uint64_t seed = 0;
  bool timing = false;
  bool rounded = false;
  bool cost_space = false;
  double tol = 1e-6;
  int max_iter = 1000;
  std::string output;
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::kTooLarge ? kExitTooLarge : kExitInputError;
}

void print_report(std::ostream& out, std::string_view algo,
                  const SolveReport& r) {
  out << "algo=" << algo << '\n'
      << "converged=" << (r.converged ? "true" : "false") << '\n'
      << "iterations=" << r.iterations << '\n'
      << "row_residual=" << num(r.row_residual) << '\n'
      << "col_residual=" << num(r.col_residual) << '\n'
      << "objective=" << num(r.objective) << '\n';
  if (r.clamp_magnitude > 0.0) {
    out << "clamp_magnitude=" << num(r.clamp_magnitude) << '\n';
  }
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const EpsMatrix s = load_matrix(a.input);

  if (a.algo == "exact" || a.algo == "brute") {
    const ExactSolution sol = a.algo == "exact"
                                  ? exact_lsape(s, Sense::kMax)
                                  : brute_force_lsape(s, Sense::kMax);
    save_text(a.output, format_assignment(sol.assignment));
    out << "algo=" << a.algo << '\n' << "objective=" << num(sol.value) << '\n';
    return kExitOk;
  }

  SolverConfig cfg;
  cfg.tol = a.tol;
  cfg.max_iter = a.max_iter;
  cfg.allow_nonpositive_edits = a.allow_nonpositive_edits;

  EpsMatrix relaxed;
  SolveReport report;
  if (a.algo == "classic") {
    if (s.n() != s.m()) {
      throw Error(ErrorCode::kInvalidInput,
                  "classic Sinkhorn needs n == m; the interior block is used");
    }
    Matrix interior(s.n(), s.n());
    for (int i = 0; i < s.n(); ++i) {
      for (int j = 0; j < s.n(); ++j) interior(i, j) = s(i, j);
    }
    ClassicResult r = classic_sinkhorn(interior, cfg);
    // Embedded as an epsilon-bi-stochastic matrix with empty edit row/column.
    relaxed = EpsMatrix(s.n(), s.m(), Role::kRelaxed);
    for (int i = 0; i < s.n(); ++i) {
      for (int j = 0; j < s.n(); ++j) relaxed(i, j) = r.matrix(i, j);
    }
    relaxed(s.n(), s.m()) = 1.0;
    report = r.report;
    report.objective = objective(s, relaxed);
  } else {
    if (a.algo != "d1d2" && a.algo != "sp") {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("unknown algorithm '{}'", a.algo));
    }
    cfg.mode = a.algo == "d1d2" ? SolverMode::kD1D2 : SolverMode::kSp;
    const EpsMatrix solved = a.simplify ? simplify(s, a.floor).similarity : s;
    ScalingResult r = solve_relaxed(solved, cfg);
    relaxed = std::move(r.matrix);
    report = r.report;
    report.objective = objective(s, relaxed);
  }

  if (a.round) {
    const EpsAssignment rounded = round_to_assignment(relaxed);
    save_text(a.output, format_assignment(rounded));
    print_report(out, a.algo, report);
    out << "rounded_objective=" << num(assignment_value(s, rounded)) << '\n';
  } else {
    save_text(a.output, format_matrix(relaxed));
    print_report(out, a.algo, report);
  }
  return report.converged ? kExitOk : kExitNotConverged;
}

std::optional<SchemeKind> parse_scheme(std::string_view name) {
  if (name == "row") return SchemeKind::kRowLoaded;
  if (name == "col") return SchemeKind::kColLoaded;
  if (name == "balanced") return SchemeKind::kBalanced;
  return std::nullopt;
}

int cmd_convert(const ConvertArgs& a, const CLI::App& sub, std::ostream& out,
                std::ostream& err) {
  const auto scheme = parse_scheme(a.scheme);
  if (a.direction == "sim2cost") {
    if (!a.c) {
      err << "convert: --c is required for --direction sim2cost\n"
          << sub.help();
      return kExitInputError;
    }
    const EpsMatrix s = load_matrix(a.input, Role::kSimilarity);
    const CostReduction r = similarity_to_cost(s, {*scheme, *a.c});
    save_text(a.output, format_matrix(r.cost));
    out << "Q=" << num(r.q) << '\n' << "c=" << num(*a.c) << '\n';
    return kExitOk;
  }
  if (*scheme != SchemeKind::kBalanced) {
    err << "convert: cost2sim only supports --scheme balanced\n" << sub.help();
    return kExitInputError;
  }
  const EpsMatrix d = load_matrix(a.input, Role::kCost);
  const SimilarityReduction r = cost_to_similarity(d, a.margin);
  save_text(a.output, format_matrix(r.similarity));
  out << "Q=" << num(r.q) << '\n' << "c=" << num(r.c) << '\n';
  return kExitOk;
}

int cmd_gen(const GenArgs& a, std::ostream& err) {
  if (a.lsap) {
    const Matrix w = generate_lsap(a.n, a.seed);
    EpsMatrix s(a.n, a.n, Role::kSimilarity);
    for (int i = 0; i < a.n; ++i) {
      for (int j = 0; j < a.n; ++j) s(i, j) = w(i, j);
    }
    save_text(a.output, format_matrix(s));
    return kExitOk;
  }
  const EpsMatrix s = generate({a.n, a.m.value_or(a.n), a.h, a.seed});
  for (const Violation& v : validate_similarity(s)) {
    err << "warning: " << v.message << '\n';
  }
  save_text(a.output, format_matrix(s));
  return kExitOk;
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  const EpsMatrix s = load_matrix(a.input);
  if (s.n() > kSupportLimit || s.m() > kSupportLimit) {
    err << fmt::format(
        "analyze: exhaustive support checks are limited to n, m <= {}\n",
        kSupportLimit);
    return kExitTooLarge;
  }
  std::string validation;
  for (const Violation& v : validate_similarity(s)) {
    if (!validation.empty()) validation += "; ";
    validation += v.message;
  }
  const auto flag = [](bool b) { return b ? "true" : "false"; };
  out << "support=" << flag(has_support(s)) << '\n'
      << "total_support=" << flag(has_total_support(s)) << '\n'
      << "secable=" << flag(is_secable(s)) << '\n'
      << "validation=" << (validation.empty() ? "ok" : validation) << '\n';
  return kExitOk;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find(',', start);
    if (pos == std::string_view::npos) pos = text.size();
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

std::vector<std::pair<int, int>> parse_sizes(std::string_view text) {
  std::vector<std::pair<int, int>> sizes;
  for (auto part : split_list(text)) {
    const std::size_t x = part.find('x');
    try {
      const int n = std::stoi(std::string(part.substr(0, x)));
      const int m =
          x == std::string_view::npos ? n : std::stoi(std::string(part.substr(x + 1)));
      sizes.emplace_back(n, m);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("bad size '{}', expected N or NxM", part));
    }
  }
  return sizes;
}

std::vector<double> parse_doubles(std::string_view text) {
  std::vector<double> values;
  for (auto part : split_list(text)) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(std::string(part), &used));
      if (used != part.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("bad number '{}' in list", part));
    }
  }
  return values;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  ExperimentConfig cfg;
  cfg.sizes = parse_sizes(a.sizes);
  cfg.h_values = parse_doubles(a.h_values);
  cfg.trials = a.trials;
  cfg.simplify = a.simplify;
  cfg.algo = parse_algorithm(a.algo);
  cfg.seed = a.seed;
  cfg.tol = a.tol;
  cfg.max_iter = a.max_iter;
  cfg.error_mode = a.rounded ? ErrorMode::kRounded : ErrorMode::kContinuous;
  cfg.error_space = a.cost_space ? ErrorSpace::kCost : ErrorSpace::kSimilarity;
  for (const auto& [n, m] : cfg.sizes) {
    if (n > kExactLimit || m > kExactLimit) {
      throw Error(ErrorCode::kTooLarge,
                  fmt::format("bench sizes are limited to {} by the exact "
                              "reference solver",
                              kExactLimit));
    }
  }
  cfg.on_cell = [&out](const TrialStats& s) {
    out << fmt::format(
        "cell algo={} n={} m={} h={:.9g} mean_rel_error={:.9g} "
        "mean_iterations={:.9g} failures={}\n",
        to_string(s.algo), s.n, s.m, s.h, s.mean_rel_error, s.mean_iterations,
        s.failures);
  };

  std::vector<TrialStats> rows;
  if (a.timing) {
    for (const TimingCell& cell : timing(cfg)) rows.push_back(cell.stats);
  } else {
    rows = run_experiment(cfg);
  }
  save_text(a.output, format_csv(rows));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Epsilon-Sinkhorn relaxations of assignment with edition",
               "lsape"};
  app.require_subcommand(1);
  // "--h" is a bench/gen option, so help only answers to --help.
  app.set_help_flag("--help", "Print this help message and exit");

  SolveArgs solve;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve a similarity matrix");
  solve_cmd->add_option("input", solve.input, "Similarity matrix file")
      ->required();
  solve_cmd->add_option("-o,--output", solve.output, "Result file")
      ->required();
  solve_cmd->add_option("--algo", solve.algo, "Solver")
      ->check(CLI::IsMember({"d1d2", "sp", "exact", "brute", "classic"}));
  solve_cmd->add_option("--tol", solve.tol, "Convergence tolerance")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-iter", solve.max_iter, "Iteration budget")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_flag("--simplify", solve.simplify,
                      "Floor substitutions beaten by delete+insert");
  solve_cmd->add_option("--floor", solve.floor, "Value used by --simplify");
  solve_cmd->add_flag("--round", solve.round,
                      "Write the rounded assignment instead of the matrix");
  solve_cmd->add_flag("--allow-nonpositive-edits",
                      solve.allow_nonpositive_edits,
                      "Skip the epsilon row/column positivity check");

  ConvertArgs convert;
  CLI::App* convert_cmd =
      app.add_subcommand("convert", "Convert between cost and similarity");
  convert_cmd->add_option("input", convert.input, "Matrix file")->required();
  convert_cmd->add_option("-o,--output", convert.output, "Result file")
      ->required();
  convert_cmd->add_option("--direction", convert.direction)
      ->required()
      ->check(CLI::IsMember({"cost2sim", "sim2cost"}));
  convert_cmd->add_option("--scheme", convert.scheme)
      ->check(CLI::IsMember({"row", "col", "balanced"}));
  convert_cmd->add_option("--c", convert.c, "Scheme constant (sim2cost)");
  convert_cmd->add_option("--margin", convert.margin,
                          "c = max(cost) + margin (cost2sim)");

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--n", gen.n)->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen.m)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--h", gen.h)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_flag("--lsap", gen.lsap, "Square [1,2) matrix, zero edits");
  gen_cmd->add_option("-o,--output", gen.output)->required();

  AnalyzeArgs analyze;
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "Structural predicates of a matrix");
  analyze_cmd->add_option("input", analyze.input)->required();

  BenchArgs bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Relative-error experiments, CSV output");
  bench_cmd->add_option("--sizes", bench.sizes, "e.g. 10,20x40")->required();
  bench_cmd->add_option("--h", bench.h_values, "e.g. 0.1,0.5");
  bench_cmd->add_option("--trials", bench.trials)->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--simplify", bench.simplify);
  bench_cmd->add_option("--algo", bench.algo)
      ->check(CLI::IsMember({"d1d2", "sp", "classic"}));
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_flag("--timing", bench.timing,
                      "Measure wall-clock solve times (3 warmups per cell)");
  bench_cmd->add_flag("--rounded", bench.rounded,
                      "Score the rounded assignment instead of the relaxed "
                      "matrix");
  bench_cmd->add_flag("--cost-space", bench.cost_space,
                      "Relative error on balanced costs");
  bench_cmd->add_option("--tol", bench.tol)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--max-iter", bench.max_iter)
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("-o,--output", bench.output)->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*convert_cmd) return cmd_convert(convert, *convert_cmd, out, err);
    if (*gen_cmd) return cmd_gen(gen, err);
    if (*analyze_cmd) return cmd_analyze(analyze, out, err);
    if (*bench_cmd) return cmd_bench(bench, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitInputError;
}

}  // namespace lsape::cli
