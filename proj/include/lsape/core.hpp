#ifndef LSAPE_CORE_HPP_
#define LSAPE_CORE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lsape {

// Dense row-major matrix of doubles. Used directly for the square LSAP
// instances and as storage for EpsMatrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);
  // Throws kInvalidInput if data.size() != rows * cols.
  Matrix(int rows, int cols, std::vector<double> data);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[index(i, j)]; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }

  std::span<double> row(int i) {
    return {data_.data() + index(i, 0), static_cast<std::size_t>(cols_)};
  }
  std::span<const double> row(int i) const {
    return {data_.data() + index(i, 0), static_cast<std::size_t>(cols_)};
  }
  std::span<const double> data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(j);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

enum class Role { kSimilarity, kCost, kRelaxed };

// An (n+1) x (m+1) matrix whose last row and last column stand for the
// epsilon pseudo-elements: row n holds insertions, column m holds deletions
// and (n, m) is the epsilon-epsilon corner. Indices are 0-based.
//
// Construction rejects non-finite entries. Sign constraints depend on the
// role and are checked by the operations that need them (see
// validate_similarity), since cost matrices obtained by the similarity/cost
// reductions legitimately carry negative edit entries.
class EpsMatrix {
 public:
  EpsMatrix() = default;
  // Zero-filled.
  EpsMatrix(int n, int m, Role role = Role::kSimilarity);
  EpsMatrix(int n, int m, std::vector<double> entries,
            Role role = Role::kSimilarity);
  EpsMatrix(Matrix entries, Role role = Role::kSimilarity);

  int n() const { return n_; }
  int m() const { return m_; }
  int rows() const { return n_ + 1; }
  int cols() const { return m_ + 1; }
  Role role() const { return role_; }
  void set_role(Role role) { role_ = role; }

  double& operator()(int i, int j) { return entries_(i, j); }
  double operator()(int i, int j) const { return entries_(i, j); }

  double corner() const { return entries_(n_, m_); }
  std::span<const double> row(int i) const { return entries_.row(i); }
  std::span<double> row(int i) { return entries_.row(i); }
  const Matrix& entries() const { return entries_; }

  // Equality compares shape and entries; the role tag is ignored.
  bool operator==(const EpsMatrix& other) const {
    return n_ == other.n_ && m_ == other.m_ && entries_ == other.entries_;
  }

 private:
  int n_ = 0;
  int m_ = 0;
  Role role_ = Role::kSimilarity;
  Matrix entries_;
};

// A discrete epsilon-assignment. target[i] is the column substituted to
// source i, or kDeleted. Targets that no source maps to are inserted.
struct EpsAssignment {
  static constexpr int kDeleted = -1;

  int n = 0;
  int m = 0;
  std::vector<int> target;

  // Every target in [0, m) or kDeleted, no target used twice.
  bool is_valid() const;
  std::vector<int> deleted() const;
  std::vector<int> inserted() const;

  bool operator==(const EpsAssignment&) const = default;
};

// Positive scalings x (length n+1) and y (length m+1); the last entry of each
// is pinned to exactly 1.
struct ScalingPair {
  std::vector<double> x;
  std::vector<double> y;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  // max |row sum - 1| over the n real rows of the returned matrix.
  double row_residual = 0.0;
  // max |column sum - 1| over the m real columns of the returned matrix.
  double col_residual = 0.0;
  double objective = 0.0;
  // Largest negative magnitude clamped to zero by the completion step of
  // sinkhorn_sp; 0 for the other solvers.
  double clamp_magnitude = 0.0;
};

enum class SolverMode { kD1D2, kSp };

struct SolverConfig {
  int max_iter = 1000;
  double tol = 1e-6;
  SolverMode mode = SolverMode::kD1D2;
  // Record per-iteration residuals in the returned trace.
  bool trace = false;
  // Skip the positivity requirement on the epsilon row and column. Behaviour
  // on such inputs is not guaranteed to converge.
  bool allow_nonpositive_edits = false;
};

enum class ViolationKind {
  kNonFinite,
  kNegativeEntry,
  kZeroRow,
  kZeroColumn,
  kNonpositiveEpsRow,
  kNonpositiveEpsColumn,
};

struct Violation {
  ViolationKind kind;
  int index;  // 0-based row or column the violation refers to
  std::string message;
};

// Diagnostics for a similarity matrix handed to the scaling solvers: entries
// must be finite and nonnegative, no real row or column of the interior block
// may be all zero, and the epsilon row/column entries (corner excluded) must
// be strictly positive. Returns one entry per failing row/column/rule.
std::vector<Violation> validate_similarity(const EpsMatrix& s);

EpsMatrix assignment_to_matrix(const EpsAssignment& a);

// Throws kNotBinary if an entry is neither 0 nor 1 and kNotEpsBistochastic if
// the 0/1 pattern is not an epsilon-assignment matrix.
EpsAssignment matrix_to_assignment(const EpsMatrix& x);

// Sum of s(i,j) * x(i,j) over the whole (n+1) x (m+1) grid, row-major.
// Throws kShapeMismatch.
double objective(const EpsMatrix& s, const EpsMatrix& x);

// Value of a discrete assignment under s, summed in a fixed order:
// substitutions/deletions by source index, then insertions by target index,
// then the corner. Equal to objective(s, assignment_to_matrix(a)) up to
// rounding.
double assignment_value(const EpsMatrix& s, const EpsAssignment& a);

// Real row sums and real column sums equal 1 within tol and the corner equals
// 1 within tol. Entries below -tol also fail.
bool is_eps_bistochastic(const EpsMatrix& x, double tol);

// Number of distinct epsilon-assignments between sets of size n and m:
// sum over k of C(n,k) C(m,k) k!.
unsigned long long count_eps_assignments(int n, int m);

}  // namespace lsape

#endif  // LSAPE_CORE_HPP_
