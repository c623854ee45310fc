#include "lsape/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "lsape/error.hpp"

namespace lsape {
namespace {

void check_config(const SolverConfig& cfg) {
  if (!(cfg.tol > 0.0) || cfg.max_iter < 0) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("invalid solver config: tol={} max_iter={}",
                            cfg.tol, cfg.max_iter));
  }
}

void check_input(const EpsMatrix& s, const SolverConfig& cfg) {
  std::string message;
  for (const Violation& v : validate_similarity(s)) {
    if (cfg.allow_nonpositive_edits &&
        (v.kind == ViolationKind::kNonpositiveEpsRow ||
         v.kind == ViolationKind::kNonpositiveEpsColumn)) {
      continue;
    }
    if (!message.empty()) message += "; ";
    message += v.message;
  }
  if (!message.empty()) throw Error(ErrorCode::kInvalidInput, message);
}

double inverse(double sum) {
  const double v = 1.0 / sum;
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw Error(ErrorCode::kNonFinite,
                fmt::format("scaling factor 1/{} is not a positive finite value",
                            sum));
  }
  return v;
}

// max |rowsum - 1| over the first `rows` rows.
double row_deviation(const Matrix& a, int rows) {
  double worst = 0.0;
  for (int i = 0; i < rows; ++i) {
    double sum = 0.0;
    for (double v : a.row(i)) sum += v;
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

std::vector<double> column_sums(const Matrix& a) {
  std::vector<double> sums(a.cols(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    const auto row = a.row(i);
    for (int j = 0; j < a.cols(); ++j) sums[j] += row[j];
  }
  return sums;
}

// max |colsum - 1| over the first `cols` columns.
double column_deviation(const Matrix& a, int cols) {
  const auto sums = column_sums(a);
  double worst = 0.0;
  for (int j = 0; j < cols; ++j) {
    worst = std::max(worst, std::abs(sums[j] - 1.0));
  }
  return worst;
}

void fill_residuals(const EpsMatrix& s, const EpsMatrix& b,
                    SolveReport& report) {
  report.row_residual = row_deviation(b.entries(), b.n());
  report.col_residual = column_deviation(b.entries(), b.m());
  report.objective = objective(s, b);
}

// Divides each of the first `rows` rows by its full sum.
void normalize_rows(Matrix& a, int rows) {
  for (int i = 0; i < rows; ++i) {
    auto row = a.row(i);
    double sum = 0.0;
    for (double v : row) sum += v;
    const double scale = inverse(sum);
    for (double& v : row) v *= scale;
  }
}

// Divides each of the first `cols` columns by its full sum.
void normalize_columns(Matrix& a, int cols) {
  auto scale = column_sums(a);
  for (int j = 0; j < cols; ++j) scale[j] = inverse(scale[j]);
  for (int i = 0; i < a.rows(); ++i) {
    auto row = a.row(i);
    for (int j = 0; j < cols; ++j) row[j] *= scale[j];
  }
}

}  // namespace

ScalingResult sinkhorn_d1d2(const EpsMatrix& s, const SolverConfig& cfg) {
  check_config(cfg);
  check_input(s, cfg);
  const int n = s.n();
  const int m = s.m();

  std::vector<double> x(n + 1, 1.0);
  std::vector<double> y(m + 1, 1.0);
  std::vector<double> x_next(n + 1, 1.0);
  std::vector<double> y_next(m + 1, 1.0);
  std::vector<double> col_acc(m + 1);

  ScalingResult result;
  SolveReport& report = result.report;
  for (int p = 1; p <= cfg.max_iter; ++p) {
    // x_{p+1} = 1 / (A y_p) on the real rows.
    for (int i = 0; i < n; ++i) {
      const auto row = s.row(i);
      double sum = 0.0;
      for (int j = 0; j <= m; ++j) sum += row[j] * y[j];
      x_next[i] = inverse(sum);
    }
    x_next[n] = 1.0;

    // y_{p+1} = 1 / (A^T x_{p+1}) on the real columns.
    std::fill(col_acc.begin(), col_acc.end(), 0.0);
    for (int i = 0; i <= n; ++i) {
      const auto row = s.row(i);
      const double xi = x_next[i];
      for (int j = 0; j < m; ++j) col_acc[j] += row[j] * xi;
    }
    for (int j = 0; j < m; ++j) y_next[j] = inverse(col_acc[j]);
    y_next[m] = 1.0;

    double dx = 0.0;
    for (int i = 0; i < n; ++i) {
      dx = std::max(dx, std::abs(x_next[i] / x[i] - 1.0));
    }
    double dy = 0.0;
    for (int j = 0; j < m; ++j) {
      dy = std::max(dy, std::abs(y_next[j] / y[j] - 1.0));
    }
    x.swap(x_next);
    y.swap(y_next);

    report.iterations = p;
    if (cfg.trace) result.trace.push_back({p, dx, dy});
    if (dx <= cfg.tol && dy <= cfg.tol) {
      report.converged = true;
      break;
    }
  }

  Matrix b(n + 1, m + 1);
  for (int i = 0; i <= n; ++i) {
    const auto row = s.row(i);
    auto out = b.row(i);
    for (int j = 0; j <= m; ++j) out[j] = x[i] * row[j] * y[j];
  }
  b(n, m) = 1.0;
  result.matrix = EpsMatrix(std::move(b), Role::kRelaxed);
  fill_residuals(s, result.matrix, report);
  result.scaling = ScalingPair{std::move(x), std::move(y)};
  return result;
}

ScalingResult sinkhorn_sp(const EpsMatrix& s, const SolverConfig& cfg) {
  check_config(cfg);
  check_input(s, cfg);
  const int n = s.n();
  const int m = s.m();

  Matrix work = s.entries();
  ScalingResult result;
  SolveReport& report = result.report;
  for (int p = 1; p <= cfg.max_iter; ++p) {
    normalize_rows(work, n);
    const double col_dev = column_deviation(work, m);
    normalize_columns(work, m);
    const double row_dev = row_deviation(work, n);

    report.iterations = p;
    if (cfg.trace) result.trace.push_back({p, col_dev, row_dev});
    if (col_dev <= cfg.tol && row_dev <= cfg.tol) {
      report.converged = true;
      break;
    }
  }

  // Completion: last row normalization, then the epsilon row takes whatever
  // mass each real column is missing.
  normalize_rows(work, n);
  const double clamp_floor = -10.0 * cfg.tol;
  for (int j = 0; j < m; ++j) {
    double interior = 0.0;
    for (int i = 0; i < n; ++i) interior += work(i, j);
    double rest = 1.0 - interior;
    if (rest < 0.0) {
      if (rest < clamp_floor) {
        throw Error(ErrorCode::kNegativeCompletion,
                    fmt::format("completed eps-row entry {} at column {} is "
                                "below -10*tol",
                                rest, j + 1));
      }
      report.clamp_magnitude = std::max(report.clamp_magnitude, -rest);
      for (int i = 0; i < n; ++i) work(i, j) /= interior;
      rest = 0.0;
    }
    work(n, j) = rest;
  }
  work(n, m) = 1.0;

  result.matrix = EpsMatrix(std::move(work), Role::kRelaxed);
  fill_residuals(s, result.matrix, report);
  return result;
}

ScalingResult solve_relaxed(const EpsMatrix& s, const SolverConfig& cfg) {
  return cfg.mode == SolverMode::kD1D2 ? sinkhorn_d1d2(s, cfg)
                                       : sinkhorn_sp(s, cfg);
}

ClassicResult classic_sinkhorn(const Matrix& s, const SolverConfig& cfg) {
  check_config(cfg);
  const int n = s.rows();
  if (n < 1 || s.cols() != n) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("classic Sinkhorn needs a square matrix, got {}x{}",
                            s.rows(), s.cols()));
  }
  for (double v : s.data()) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kInvalidInput,
                  "entries must be finite and nonnegative");
    }
  }
  const auto sums = column_sums(s);
  for (int k = 0; k < n; ++k) {
    double row_sum = 0.0;
    for (double v : s.row(k)) row_sum += v;
    if (!(row_sum > 0.0) || !(sums[k] > 0.0)) {
      throw Error(ErrorCode::kInvalidInput,
                  fmt::format("row or column {} is all zero", k + 1));
    }
  }

  ClassicResult result{s, {}};
  SolveReport& report = result.report;
  for (int p = 1; p <= cfg.max_iter; ++p) {
    normalize_rows(result.matrix, n);
    normalize_columns(result.matrix, n);
    report.iterations = p;
    if (row_deviation(result.matrix, n) <= cfg.tol) {
      report.converged = true;
      break;
    }
  }
  report.row_residual = row_deviation(result.matrix, n);
  report.col_residual = column_deviation(result.matrix, n);
  double total = 0.0;
  const auto sv = s.data();
  const auto bv = result.matrix.data();
  for (std::size_t k = 0; k < sv.size(); ++k) total += sv[k] * bv[k];
  report.objective = total;
  return result;
}

}  // namespace lsape
