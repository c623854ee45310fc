#include "lsape/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <span>

#include <fmt/format.h>

#include "lsape/error.hpp"
#include "lsape/oracle.hpp"
#include "lsape/scaling.hpp"
#include "lsape/transform.hpp"

namespace lsape {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t size_index,
                          std::uint64_t h_index, std::uint64_t trial_index) {
  std::uint64_t s = mix64(master);
  s = mix64(s ^ size_index);
  s = mix64(s ^ h_index);
  return mix64(s ^ trial_index);
}

EpsMatrix generate(const GenConfig& cfg) {
  EpsMatrix s(cfg.n, cfg.m, Role::kSimilarity);
  Rng rng(cfg.seed);
  for (int i = 0; i <= cfg.n; ++i) {
    for (int j = 0; j <= cfg.m; ++j) {
      if (i < cfg.n && j < cfg.m) {
        s(i, j) = rng.uniform(1.0, 2.0);
      } else if (i < cfg.n || j < cfg.m) {
        s(i, j) = cfg.h * rng.uniform();
      }
    }
  }
  return s;
}

Matrix generate_lsap(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::kInvalidInput, "n must be positive");
  Matrix w(n, n);
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = rng.uniform(1.0, 2.0);
  }
  return w;
}

double relative_error(double approx_value, double exact_value) {
  if (!(exact_value > 0.0)) {
    throw Error(ErrorCode::kDivisionByZero,
                fmt::format("exact value {} is not positive", exact_value));
  }
  return (exact_value - approx_value) / exact_value;
}

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::kD1D2: return "d1d2";
    case Algorithm::kSp: return "sp";
    case Algorithm::kClassicLsap: return "classic";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "d1d2") return Algorithm::kD1D2;
  if (name == "sp") return Algorithm::kSp;
  if (name == "classic") return Algorithm::kClassicLsap;
  throw Error(ErrorCode::kInvalidInput,
              fmt::format("unknown algorithm '{}'", name));
}

namespace {

using Clock = std::chrono::steady_clock;

struct TrialOutcome {
  double rel_error = 0.0;
  int iterations = 0;
  double runtime_ms = 0.0;
};

SolverConfig solver_config(const ExperimentConfig& cfg) {
  SolverConfig sc;
  sc.tol = cfg.tol;
  sc.max_iter = cfg.max_iter;
  sc.mode = cfg.algo == Algorithm::kSp ? SolverMode::kSp : SolverMode::kD1D2;
  return sc;
}

double max_entry(std::span<const double> values) {
  return *std::max_element(values.begin(), values.end());
}

double error_in_space(const ExperimentConfig& cfg, double approx, double exact,
                      double cost_offset) {
  if (cfg.error_space == ErrorSpace::kSimilarity) {
    return relative_error(approx, exact);
  }
  // Costs are offset - similarity, so the optimum has the smallest cost.
  const double exact_cost = cost_offset - exact;
  const double approx_cost = cost_offset - approx;
  if (!(exact_cost > 0.0)) {
    throw Error(ErrorCode::kDivisionByZero, "exact cost is not positive");
  }
  return (approx_cost - exact_cost) / exact_cost;
}

// Instance of one trial in an epsilon experiment, already simplified when
// requested. `original` is kept for scoring.
struct EpsInstance {
  EpsMatrix original;
  EpsMatrix solved;
};

EpsInstance eps_instance(const ExperimentConfig& cfg, int n, int m, double h,
                         std::uint64_t seed) {
  EpsMatrix s = generate({n, m, h, seed});
  EpsMatrix solved = cfg.simplify ? simplify(s, cfg.floor).similarity : s;
  return {std::move(s), std::move(solved)};
}

// Runs `solve` `repeats` times and returns the last result with the fastest
// wall-clock time in milliseconds.
template <typename Solve>
auto timed(int repeats, Solve solve, double& best_ms) {
  best_ms = std::numeric_limits<double>::infinity();
  for (int r = 1;; ++r) {
    const auto start = Clock::now();
    auto result = solve();
    const auto stop = Clock::now();
    best_ms = std::min(
        best_ms, std::chrono::duration<double, std::milli>(stop - start).count());
    if (r >= repeats) return result;
  }
}

TrialOutcome run_eps_trial(const ExperimentConfig& cfg, const EpsInstance& inst,
                           bool with_error, int repeats) {
  const SolverConfig sc = solver_config(cfg);
  TrialOutcome out;
  const ScalingResult result = timed(
      repeats, [&] { return solve_relaxed(inst.solved, sc); }, out.runtime_ms);
  out.iterations = result.report.iterations;
  if (!with_error) return out;

  const EpsMatrix& s = inst.original;
  const double exact = exact_lsape(s, Sense::kMax).value;
  const double approx =
      cfg.error_mode == ErrorMode::kContinuous
          ? objective(s, result.matrix)
          : assignment_value(s, round_to_assignment(result.matrix));
  const double c = max_entry(s.entries().data()) + 1.0;
  out.rel_error = error_in_space(
      cfg, approx, exact, equivalence_constant({SchemeKind::kBalanced, c},
                                               s.n(), s.m()));
  return out;
}

TrialOutcome run_lsap_trial(const ExperimentConfig& cfg, const Matrix& w,
                            bool with_error, int repeats) {
  const SolverConfig sc = solver_config(cfg);
  TrialOutcome out;
  const ClassicResult result = timed(
      repeats, [&] { return classic_sinkhorn(w, sc); }, out.runtime_ms);
  out.iterations = result.report.iterations;
  if (!with_error) return out;

  const double exact = hungarian_lsap(w, Sense::kMax).value;
  double approx = result.report.objective;
  if (cfg.error_mode == ErrorMode::kRounded) {
    const auto perm = hungarian_lsap(result.matrix, Sense::kMax).permutation;
    approx = 0.0;
    for (int i = 0; i < w.rows(); ++i) approx += w(i, perm[i]);
  }
  // Balanced LSAP cost c - w sums to c n over every permutation.
  const double c = max_entry(w.data()) + 1.0;
  out.rel_error = error_in_space(cfg, approx, exact, c * w.rows());
  return out;
}

TrialStats aggregate(const ExperimentConfig& cfg, int n, int m, double h,
                     const std::vector<std::optional<TrialOutcome>>& outcomes) {
  TrialStats stats;
  stats.algo = cfg.algo;
  stats.n = n;
  stats.m = m;
  stats.h = h;
  stats.simplify = cfg.simplify;
  stats.trials = cfg.trials;
  int ok = 0;
  double err_sum = 0.0, iter_sum = 0.0, time_sum = 0.0;
  for (const auto& o : outcomes) {
    if (!o) {
      ++stats.failures;
      continue;
    }
    ++ok;
    err_sum += o->rel_error;
    iter_sum += o->iterations;
    time_sum += o->runtime_ms;
  }
  if (ok == 0) return stats;
  stats.mean_rel_error = err_sum / ok;
  stats.mean_iterations = iter_sum / ok;
  stats.mean_runtime_ms = cfg.measure_time ? time_sum / ok : 0.0;
  double sq = 0.0;
  for (const auto& o : outcomes) {
    if (o) sq += (o->rel_error - stats.mean_rel_error) *
                 (o->rel_error - stats.mean_rel_error);
  }
  stats.std_rel_error = std::sqrt(sq / ok);
  return stats;
}

void check_experiment(const ExperimentConfig& cfg) {
  if (cfg.sizes.empty() || cfg.h_values.empty() || cfg.trials < 1) {
    throw Error(ErrorCode::kInvalidInput,
                "experiment needs sizes, h values and at least one trial");
  }
  for (const auto& [n, m] : cfg.sizes) {
    if (n < 1 || m < 1) {
      throw Error(ErrorCode::kInvalidInput, "sizes must be positive");
    }
  }
}

// Runs one trial of the cell; solver failures yield nullopt.
std::optional<TrialOutcome> run_trial(const ExperimentConfig& cfg, int n,
                                      int m, double h, std::uint64_t seed,
                                      bool with_error, int repeats = 1) {
  try {
    if (cfg.algo == Algorithm::kClassicLsap) {
      return run_lsap_trial(cfg, generate_lsap(n, seed), with_error, repeats);
    }
    return run_eps_trial(cfg, eps_instance(cfg, n, m, h, seed), with_error,
                         repeats);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<TrialStats> run_experiment(const ExperimentConfig& cfg) {
  check_experiment(cfg);
  std::vector<TrialStats> cells;
  for (std::size_t si = 0; si < cfg.sizes.size(); ++si) {
    const auto [n, m_raw] = cfg.sizes[si];
    const int m = cfg.algo == Algorithm::kClassicLsap ? n : m_raw;
    for (std::size_t hi = 0; hi < cfg.h_values.size(); ++hi) {
      const double h = cfg.h_values[hi];
      std::vector<std::optional<TrialOutcome>> outcomes;
      outcomes.reserve(cfg.trials);
      for (int t = 0; t < cfg.trials; ++t) {
        outcomes.push_back(
            run_trial(cfg, n, m, h, derive_seed(cfg.seed, si, hi, t), true));
      }
      cells.push_back(aggregate(cfg, n, m, h, outcomes));
      if (cfg.on_cell) cfg.on_cell(cells.back());
    }
  }
  return cells;
}

std::vector<TimingCell> timing(const ExperimentConfig& cfg) {
  check_experiment(cfg);
  ExperimentConfig timed_cfg = cfg;
  timed_cfg.measure_time = true;
  constexpr int kWarmup = 3;
  // Each trial keeps the fastest of several solves: single sub-millisecond
  // solves are dominated by scheduler noise.
  constexpr int kRepeats = 5;

  struct Cell {
    std::size_t si, hi;
    int n, m;
    double h;
    std::vector<std::optional<TrialOutcome>> outcomes;
  };
  std::vector<Cell> pending;
  for (std::size_t si = 0; si < cfg.sizes.size(); ++si) {
    const auto [n, m_raw] = cfg.sizes[si];
    const int m = cfg.algo == Algorithm::kClassicLsap ? n : m_raw;
    for (std::size_t hi = 0; hi < cfg.h_values.size(); ++hi) {
      pending.push_back({si, hi, n, m, cfg.h_values[hi], {}});
    }
  }
  for (const Cell& c : pending) {
    for (int w = 0; w < kWarmup; ++w) {
      run_trial(timed_cfg, c.n, c.m, c.h, derive_seed(cfg.seed, c.si, c.hi, 0),
                false);
    }
  }
  // Trial-major order, so slow drift of the machine hits every cell alike.
  for (int t = 0; t < cfg.trials; ++t) {
    for (Cell& c : pending) {
      c.outcomes.push_back(run_trial(timed_cfg, c.n, c.m, c.h,
                                     derive_seed(cfg.seed, c.si, c.hi, t),
                                     true, kRepeats));
    }
  }

  std::vector<TimingCell> cells;
  for (const Cell& c : pending) {
    TimingCell cell{aggregate(timed_cfg, c.n, c.m, c.h, c.outcomes), 0.0};
    std::vector<double> times;
    for (const auto& o : c.outcomes) {
      if (o) times.push_back(o->runtime_ms);
    }
    if (!times.empty()) {
      std::sort(times.begin(), times.end());
      const std::size_t mid = times.size() / 2;
      cell.median_runtime_ms = times.size() % 2 == 1
                                   ? times[mid]
                                   : 0.5 * (times[mid - 1] + times[mid]);
    }
    if (cfg.on_cell) cfg.on_cell(cell.stats);
    cells.push_back(cell);
  }
  return cells;
}

std::string format_csv(const std::vector<TrialStats>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const TrialStats& r : rows) {
    out += fmt::format("{},{},{},{:.9g},{},{},{:.9g},{:.9g},{:.9g},{:.9g},{}\n",
                       to_string(r.algo), r.n, r.m, r.h,
                       r.simplify ? "true" : "false", r.trials,
                       r.mean_rel_error, r.std_rel_error, r.mean_iterations,
                       r.mean_runtime_ms, r.failures);
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T csv_number(std::string_view field, int line) {
  T value{};
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::kParse,
                fmt::format("csv line {}: bad number '{}'", line, field));
  }
  return value;
}

}  // namespace

std::vector<TrialStats> parse_csv(std::string_view text) {
  auto lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != kCsvHeader) {
    throw Error(ErrorCode::kParse, "csv header does not match the schema");
  }
  std::vector<TrialStats> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const int line = static_cast<int>(k) + 1;
    const auto f = split(lines[k], ',');
    if (f.size() != 11) {
      throw Error(ErrorCode::kParse,
                  fmt::format("csv line {}: expected 11 fields", line));
    }
    TrialStats r;
    try {
      r.algo = parse_algorithm(f[0]);
    } catch (const Error&) {
      throw Error(ErrorCode::kParse,
                  fmt::format("csv line {}: unknown algorithm", line));
    }
    r.n = csv_number<int>(f[1], line);
    r.m = csv_number<int>(f[2], line);
    r.h = csv_number<double>(f[3], line);
    if (f[4] != "true" && f[4] != "false") {
      throw Error(ErrorCode::kParse,
                  fmt::format("csv line {}: simplify must be true/false", line));
    }
    r.simplify = f[4] == "true";
    r.trials = csv_number<int>(f[5], line);
    r.mean_rel_error = csv_number<double>(f[6], line);
    r.std_rel_error = csv_number<double>(f[7], line);
    r.mean_iterations = csv_number<double>(f[8], line);
    r.mean_runtime_ms = csv_number<double>(f[9], line);
    r.failures = csv_number<int>(f[10], line);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace lsape
