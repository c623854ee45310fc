#ifndef LSAPE_BENCH_HPP_
#define LSAPE_BENCH_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lsape/core.hpp"

namespace lsape {

// Random source shared by every generator: std::mt19937_64 (its output
// sequence is fixed by the C++ standard), with uniform reals built from the
// top 53 bits so that streams are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed of one trial:
//   s = mix64(master); s = mix64(s ^ size_index); s = mix64(s ^ h_index);
//   seed = mix64(s ^ trial_index)
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t size_index,
                          std::uint64_t h_index, std::uint64_t trial_index);

struct GenConfig {
  int n = 1;
  int m = 1;
  double h = 0.5;  // scale of the deletion/insertion similarities
  std::uint64_t seed = 0;
};

// Interior entries uniform in [1, 2), epsilon row and column entries
// h * uniform[0, 1), corner 0. Entries are drawn in row-major order, the
// corner consuming no draw. With h = 0 the result fails validate_similarity.
EpsMatrix generate(const GenConfig& cfg);

// n x n matrix uniform in [1, 2), row-major draws.
Matrix generate_lsap(int n, std::uint64_t seed);

// (exact - approx) / exact. Throws kDivisionByZero unless exact > 0.
double relative_error(double approx_value, double exact_value);

enum class Algorithm { kD1D2, kSp, kClassicLsap };

std::string_view to_string(Algorithm algo);
// Accepts "d1d2", "sp" and "classic"; throws kInvalidInput otherwise.
Algorithm parse_algorithm(std::string_view name);

// How the approximate value entering relative_error is obtained.
enum class ErrorMode {
  kContinuous,  // objective of the relaxed matrix itself
  kRounded,     // objective of round_to_assignment of the relaxed matrix
};

// Where relative errors are measured.
enum class ErrorSpace {
  kSimilarity,  // (exact - approx) / exact on similarities
  kCost,        // same formula on balanced costs, c = max(s) + 1
};

struct TrialStats;

struct ExperimentConfig {
  // (n, m) pairs. For kClassicLsap only n is used.
  std::vector<std::pair<int, int>> sizes;
  std::vector<double> h_values;
  int trials = 100;
  bool simplify = false;
  double floor = 1e-4;
  Algorithm algo = Algorithm::kD1D2;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  int max_iter = 1000;
  ErrorMode error_mode = ErrorMode::kContinuous;
  ErrorSpace error_space = ErrorSpace::kSimilarity;
  // Wall-clock solves. Off by default so that results are reproducible to
  // the byte; mean_runtime_ms is then reported as 0.
  bool measure_time = false;
  // Called with each cell as soon as it is aggregated.
  std::function<void(const TrialStats&)> on_cell;
};

struct TrialStats {
  Algorithm algo = Algorithm::kD1D2;
  int n = 0;
  int m = 0;
  double h = 0.0;
  bool simplify = false;
  int trials = 0;
  double mean_rel_error = 0.0;
  double std_rel_error = 0.0;  // population standard deviation
  double mean_iterations = 0.0;
  double mean_runtime_ms = 0.0;
  int failures = 0;  // trials whose solve threw; excluded from the means

  bool operator==(const TrialStats&) const = default;
};

// One cell per (size, h). Each trial generates an instance from its derived
// seed, optionally simplifies it, solves it, and compares the objective of
// the result on the original instance against the exact optimum. For
// kClassicLsap the h dimension only changes the seeds.
std::vector<TrialStats> run_experiment(const ExperimentConfig& cfg);

struct TimingCell {
  TrialStats stats;
  double median_runtime_ms = 0.0;
};

// Same cells as run_experiment, but solves are wall-clock timed (solver
// only, serial) after 3 discarded warmup solves per cell. Each trial's time
// is the fastest of 5 repeated solves of its instance. Trials are run in
// trial-major order across cells, so cell results arrive only at the end.
std::vector<TimingCell> timing(const ExperimentConfig& cfg);

// CSV with header
//   algo,n,m,h,simplify,trials,mean_rel_error,std_rel_error,
//   mean_iterations,mean_runtime_ms,failures
// one row per cell, floats with 9 significant digits.
inline constexpr std::string_view kCsvHeader =
    "algo,n,m,h,simplify,trials,mean_rel_error,std_rel_error,"
    "mean_iterations,mean_runtime_ms,failures";

std::string format_csv(const std::vector<TrialStats>& rows);
// Throws kParse on a malformed document.
std::vector<TrialStats> parse_csv(std::string_view text);

}  // namespace lsape

#endif  // LSAPE_BENCH_HPP_
