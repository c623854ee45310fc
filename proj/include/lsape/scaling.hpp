#ifndef LSAPE_SCALING_HPP_
#define LSAPE_SCALING_HPP_

#include <optional>
#include <vector>

#include "lsape/core.hpp"

namespace lsape {

// One record per iteration. For the D1D2 solver `first` and `second` are the
// ratio residuals max_i |x_{p+1,i}/x_{p,i} - 1| and max_j |y_{p+1,j}/y_{p,j} - 1|
// over the real indices. For the Sp solver they are the real-column sum
// deviation measured after the row step and the real-row sum deviation
// measured after the column step.
struct TraceRecord {
  int iteration = 0;
  double first = 0.0;
  double second = 0.0;
};

using IterationTrace = std::vector<TraceRecord>;

struct ScalingResult {
  EpsMatrix matrix;
  SolveReport report;
  IterationTrace trace;  // empty unless SolverConfig::trace
  // Set by sinkhorn_d1d2 only.
  std::optional<ScalingPair> scaling;
};

// Alternating epsilon-Sinkhorn on the diagonal scalings.
//
// Starting from x = y = 1, each iteration computes
//   x_i = 1 / (A y)_i      for real rows,    x_{n+1} = 1,
//   y_j = 1 / (A^T x)_j    for real columns, y_{m+1} = 1,
// and stops once both ratio residuals are within cfg.tol, or after
// cfg.max_iter iterations. The returned matrix is diag(x) A diag(y) with the
// epsilon-epsilon corner set to 1, which is the value it takes in every
// epsilon-assignment matrix.
//
// The intermediate matrices diag(x_{p+1}) A diag(y_p), row stochastic on the
// real rows, and diag(x_{p+1}) A diag(y_{p+1}), column stochastic on the real
// columns, are never materialized.
//
// Throws kInvalidInput when validate_similarity reports a violation (edit
// positivity violations are tolerated when cfg.allow_nonpositive_edits) and
// kNonFinite when a scaling entry overflows or underflows.
ScalingResult sinkhorn_d1d2(const EpsMatrix& s, const SolverConfig& cfg = {});

// Epsilon-Sinkhorn working on the scaled matrix itself. Each iteration
// divides every real row by its full sum, then every real column by its full
// sum; the epsilon row and column are left untouched by the respective step.
// After the loop a final row normalization is applied and the epsilon row is
// completed so that every real column sums to one, with the corner set to 1.
//
// Completion entries in [-10 tol, 0) are clamped to zero and the column's
// real entries rescaled so that it still sums to one; the largest clamped
// magnitude is reported. Below -10 tol kNegativeCompletion is thrown.
ScalingResult sinkhorn_sp(const EpsMatrix& s, const SolverConfig& cfg = {});

// Dispatches on cfg.mode.
ScalingResult solve_relaxed(const EpsMatrix& s, const SolverConfig& cfg);

struct ClassicResult {
  Matrix matrix;
  SolveReport report;
};

// Plain Sinkhorn-Knopp on a square nonnegative matrix without zero rows or
// columns: alternate row and column normalization until every row and
// column sum is within cfg.tol of one.
ClassicResult classic_sinkhorn(const Matrix& s, const SolverConfig& cfg = {});

}  // namespace lsape

#endif  // LSAPE_SCALING_HPP_
