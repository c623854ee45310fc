#include "lsape/core.hpp"

#include <cmath>
#include <fmt/format.h>

#include "lsape/error.hpp"

namespace lsape {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNotBinary: return "NotBinary";
    case ErrorCode::kNotEpsBistochastic: return "NotEpsBistochastic";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNegativeCompletion: return "NegativeCompletion";
    case ErrorCode::kConstantTooSmall: return "ConstantTooSmall";
    case ErrorCode::kCornerNonzero: return "CornerNonzero";
    case ErrorCode::kNegativeCost: return "NegativeCost";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
  }
  return "Unknown";
}

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) {
    throw Error(ErrorCode::kInvalidInput, "negative matrix dimension");
  }
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
               fill);
}

Matrix::Matrix(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows < 0 || cols < 0 ||
      data_.size() !=
          static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("matrix data of size {} does not match {}x{}",
                            data_.size(), rows, cols));
  }
}

namespace {

void check_dims(int n, int m) {
  if (n < 1 || m < 1) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("n and m must be positive, got {} and {}", n, m));
  }
}

void check_finite(const Matrix& entries) {
  for (double v : entries.data()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "matrix holds a non-finite entry");
    }
  }
}

}  // namespace

EpsMatrix::EpsMatrix(int n, int m, Role role)
    : n_(n), m_(m), role_(role) {
  check_dims(n, m);
  entries_ = Matrix(n + 1, m + 1);
}

EpsMatrix::EpsMatrix(int n, int m, std::vector<double> entries, Role role)
    : n_(n), m_(m), role_(role) {
  check_dims(n, m);
  entries_ = Matrix(n + 1, m + 1, std::move(entries));
  check_finite(entries_);
}

EpsMatrix::EpsMatrix(Matrix entries, Role role)
    : n_(entries.rows() - 1), m_(entries.cols() - 1), role_(role),
      entries_(std::move(entries)) {
  check_dims(n_, m_);
  check_finite(entries_);
}

bool EpsAssignment::is_valid() const {
  if (n < 1 || m < 1 || static_cast<int>(target.size()) != n) return false;
  std::vector<bool> used(m, false);
  for (int t : target) {
    if (t == kDeleted) continue;
    if (t < 0 || t >= m || used[t]) return false;
    used[t] = true;
  }
  return true;
}

std::vector<int> EpsAssignment::deleted() const {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (target[i] == kDeleted) out.push_back(i);
  }
  return out;
}

std::vector<int> EpsAssignment::inserted() const {
  std::vector<bool> used(m, false);
  for (int t : target) {
    if (t != kDeleted) used[t] = true;
  }
  std::vector<int> out;
  for (int j = 0; j < m; ++j) {
    if (!used[j]) out.push_back(j);
  }
  return out;
}

std::vector<Violation> validate_similarity(const EpsMatrix& s) {
  std::vector<Violation> out;
  const int n = s.n();
  const int m = s.m();
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) {
      const double v = s(i, j);
      if (!std::isfinite(v)) {
        out.push_back({ViolationKind::kNonFinite, i,
                       fmt::format("non-finite entry at ({}, {})", i + 1,
                                   j + 1)});
      } else if (v < 0.0) {
        out.push_back({ViolationKind::kNegativeEntry, i,
                       fmt::format("negative entry at ({}, {})", i + 1,
                                   j + 1)});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    bool any = false;
    for (int j = 0; j < m; ++j) any = any || s(i, j) > 0.0;
    if (!any) {
      out.push_back({ViolationKind::kZeroRow, i,
                     fmt::format("interior row {} is all zero", i + 1)});
    }
  }
  for (int j = 0; j < m; ++j) {
    bool any = false;
    for (int i = 0; i < n; ++i) any = any || s(i, j) > 0.0;
    if (!any) {
      out.push_back({ViolationKind::kZeroColumn, j,
                     fmt::format("interior column {} is all zero", j + 1)});
    }
  }
  for (int j = 0; j < m; ++j) {
    if (!(s(n, j) > 0.0)) {
      out.push_back(
          {ViolationKind::kNonpositiveEpsRow, j,
           fmt::format("eps-row entry nonpositive at column {}", j + 1)});
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!(s(i, m) > 0.0)) {
      out.push_back(
          {ViolationKind::kNonpositiveEpsColumn, i,
           fmt::format("eps-column entry nonpositive at row {}", i + 1)});
    }
  }
  return out;
}

EpsMatrix assignment_to_matrix(const EpsAssignment& a) {
  if (!a.is_valid()) {
    throw Error(ErrorCode::kInvalidInput, "invalid eps-assignment");
  }
  EpsMatrix x(a.n, a.m, Role::kRelaxed);
  for (int i = 0; i < a.n; ++i) {
    x(i, a.target[i] == EpsAssignment::kDeleted ? a.m : a.target[i]) = 1.0;
  }
  for (int j : a.inserted()) x(a.n, j) = 1.0;
  x(a.n, a.m) = 1.0;
  return x;
}

EpsAssignment matrix_to_assignment(const EpsMatrix& x) {
  const int n = x.n();
  const int m = x.m();
  for (double v : x.entries().data()) {
    if (v != 0.0 && v != 1.0) {
      throw Error(ErrorCode::kNotBinary, "matrix is not 0/1");
    }
  }
  if (!is_eps_bistochastic(x, 0.0)) {
    throw Error(ErrorCode::kNotEpsBistochastic,
                "0/1 matrix is not an eps-assignment matrix");
  }
  EpsAssignment a{n, m, std::vector<int>(n, EpsAssignment::kDeleted)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (x(i, j) == 1.0) a.target[i] = j;
    }
  }
  return a;
}

double objective(const EpsMatrix& s, const EpsMatrix& x) {
  if (s.n() != x.n() || s.m() != x.m()) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("shapes {}x{} and {}x{} differ", s.rows(), s.cols(),
                            x.rows(), x.cols()));
  }
  const auto sv = s.entries().data();
  const auto xv = x.entries().data();
  double total = 0.0;
  for (std::size_t k = 0; k < sv.size(); ++k) total += sv[k] * xv[k];
  return total;
}

double assignment_value(const EpsMatrix& s, const EpsAssignment& a) {
  if (s.n() != a.n || s.m() != a.m) {
    throw Error(ErrorCode::kShapeMismatch, "assignment and matrix differ");
  }
  double total = 0.0;
  for (int i = 0; i < a.n; ++i) {
    total += s(i, a.target[i] == EpsAssignment::kDeleted ? a.m : a.target[i]);
  }
  for (int j : a.inserted()) total += s(a.n, j);
  return total + s.corner();
}

bool is_eps_bistochastic(const EpsMatrix& x, double tol) {
  const int n = x.n();
  const int m = x.m();
  for (double v : x.entries().data()) {
    if (!(v >= -tol)) return false;
  }
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (double v : x.row(i)) sum += v;
    if (std::abs(sum - 1.0) > tol) return false;
  }
  for (int j = 0; j < m; ++j) {
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) sum += x(i, j);
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return std::abs(x.corner() - 1.0) <= tol;
}

unsigned long long count_eps_assignments(int n, int m) {
  // k substitutions: choose k sources, then an ordered choice of k targets.
  unsigned long long total = 0;
  for (int k = 0; k <= std::min(n, m); ++k) {
    unsigned long long term = 1;
    for (int r = 0; r < k; ++r) term = term * (n - r) / (r + 1);
    for (int r = 0; r < k; ++r) term *= (m - r);
    total += term;
  }
  return total;
}

}  // namespace lsape
