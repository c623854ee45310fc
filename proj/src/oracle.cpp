#include "lsape/oracle.hpp"

#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "lsape/error.hpp"

namespace lsape {
namespace {

void check_bound(const EpsMatrix& s, int limit, const char* what) {
  if (s.n() > limit || s.m() > limit) {
    throw Error(ErrorCode::kTooLarge,
                fmt::format("{} is limited to n, m <= {}, got {}x{}", what,
                            limit, s.n(), s.m()));
  }
}

bool better(double candidate, double incumbent, Sense sense) {
  return sense == Sense::kMax ? candidate > incumbent : candidate < incumbent;
}

// Depth-first enumeration of epsilon-assignments, sources in index order and
// for each source the real targets in increasing order before deletion, so
// leaves are reached in lexicographic order of the target vector. `allowed`
// filters the entries a branch may use; the leaf callback receives the
// assignment in `target` and the mask of used targets.
class Enumerator {
 public:
  using Allowed = std::function<bool(int, int)>;
  using Leaf = std::function<bool(const std::vector<int>&, unsigned)>;

  Enumerator(int n, int m, Allowed allowed, Leaf leaf)
      : n_(n), m_(m), allowed_(std::move(allowed)), leaf_(std::move(leaf)),
        target_(n, EpsAssignment::kDeleted) {}

  // Returns false if the leaf callback asked to stop.
  bool run() { return visit(0, 0u); }

 private:
  bool visit(int i, unsigned used) {
    if (i == n_) {
      for (int j = 0; j < m_; ++j) {
        if (!(used & (1u << j)) && !allowed_(n_, j)) return true;
      }
      return leaf_(target_, used);
    }
    for (int j = 0; j < m_; ++j) {
      if ((used & (1u << j)) || !allowed_(i, j)) continue;
      target_[i] = j;
      if (!visit(i + 1, used | (1u << j))) return false;
    }
    if (allowed_(i, m_)) {
      target_[i] = EpsAssignment::kDeleted;
      if (!visit(i + 1, used)) return false;
    }
    return true;
  }

  int n_;
  int m_;
  Allowed allowed_;
  Leaf leaf_;
  std::vector<int> target_;
};

}  // namespace

ExactSolution brute_force_lsape(const EpsMatrix& s, Sense sense) {
  check_bound(s, kBruteForceLimit, "brute force");
  const int n = s.n();
  const int m = s.m();

  // Partial sums follow the summation order of assignment_value so that the
  // reported value is bit-identical to a recomputation.
  std::vector<int> best;
  double best_value = 0.0;
  std::vector<int> target(n, EpsAssignment::kDeleted);
  std::function<void(int, unsigned, double)> visit = [&](int i, unsigned used,
                                                         double partial) {
    if (i == n) {
      double total = partial;
      for (int j = 0; j < m; ++j) {
        if (!(used & (1u << j))) total += s(n, j);
      }
      total += s.corner();
      if (best.empty() || better(total, best_value, sense)) {
        best = target;
        best_value = total;
      }
      return;
    }
    for (int j = 0; j < m; ++j) {
      if (used & (1u << j)) continue;
      target[i] = j;
      visit(i + 1, used | (1u << j), partial + s(i, j));
    }
    target[i] = EpsAssignment::kDeleted;
    visit(i + 1, used, partial + s(i, m));
  };
  visit(0, 0u, 0.0);

  return {EpsAssignment{n, m, std::move(best)}, best_value,
          ExactMethod::kBruteForce};
}

ExactSolution exact_lsape(const EpsMatrix& s, Sense sense) {
  check_bound(s, kExactLimit, "exact LSAPE");
  const int n = s.n();
  const int m = s.m();
  double magnitude = 0.0;
  for (double v : s.entries().data()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "similarity is not finite");
    }
    magnitude += std::abs(v);
  }
  // Any assignment touching a blocked cell is worse than every feasible one,
  // whose values all lie in [-sum|s|, sum|s|].
  const double blocked =
      (sense == Sense::kMax ? -1.0 : 1.0) * (1.0 + 2.0 * magnitude);

  const int size = n + m;
  Matrix w(size, size, blocked);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) w(i, j) = s(i, j);
    w(i, m + i) = s(i, m);
  }
  for (int j = 0; j < m; ++j) {
    w(n + j, j) = s(n, j);
    for (int k = 0; k < n; ++k) w(n + j, m + k) = 0.0;
  }

  const LsapSolution lsap = hungarian_lsap(w, sense);
  EpsAssignment a{n, m, std::vector<int>(n, EpsAssignment::kDeleted)};
  for (int i = 0; i < n; ++i) {
    const int col = lsap.permutation[i];
    if (col < m) {
      a.target[i] = col;
    } else if (col != m + i) {
      throw Error(ErrorCode::kNonFinite,
                  "reduction selected a blocked cell; weights out of range");
    }
  }
  return {a, assignment_value(s, a), ExactMethod::kReduction};
}

bool has_support(const EpsMatrix& a) {
  check_bound(a, kSupportLimit, "support check");
  bool found = false;
  Enumerator(
      a.n(), a.m(), [&](int i, int j) { return a(i, j) > 0.0; },
      [&](const std::vector<int>&, unsigned) {
        found = true;
        return false;
      })
      .run();
  return found;
}

bool has_total_support(const EpsMatrix& a) {
  check_bound(a, kSupportLimit, "total support check");
  const int n = a.n();
  const int m = a.m();
  Matrix covered(n + 1, m + 1);
  int positive = 0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) {
      if ((i != n || j != m) && a(i, j) > 0.0) ++positive;
    }
  }
  if (positive == 0) return false;

  int hits = 0;
  auto mark = [&](int i, int j) {
    if (covered(i, j) == 0.0) {
      covered(i, j) = 1.0;
      ++hits;
    }
  };
  Enumerator(
      n, m, [&](int i, int j) { return a(i, j) > 0.0; },
      [&](const std::vector<int>& target, unsigned used) {
        for (int i = 0; i < n; ++i) {
          mark(i, target[i] == EpsAssignment::kDeleted ? m : target[i]);
        }
        for (int j = 0; j < m; ++j) {
          if (!(used & (1u << j))) mark(n, j);
        }
        return hits < positive;
      })
      .run();
  return hits == positive;
}

bool is_secable(const EpsMatrix& a) {
  check_bound(a, kSecableLimit, "secability check");
  const int n = a.n();
  const int m = a.m();

  // Union-find over rows 0..n-1 and columns n..n+m-1.
  std::vector<int> parent(n + m);
  for (int k = 0; k < n + m; ++k) parent[k] = k;
  std::function<int(int)> find = [&](int k) {
    return parent[k] == k ? k : parent[k] = find(parent[k]);
  };
  std::vector<bool> row_nonzero(n, false), col_nonzero(m, false);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (a(i, j) != 0.0) {
        row_nonzero[i] = col_nonzero[j] = true;
        parent[find(i)] = find(n + j);
      }
    }
  }

  int isolated_rows = 0;
  int isolated_cols = 0;
  for (bool nz : row_nonzero) isolated_rows += nz ? 0 : 1;
  for (bool nz : col_nonzero) isolated_cols += nz ? 0 : 1;
  int mixed_components = 0;
  for (int k = 0; k < n + m; ++k) {
    const bool touched = k < n ? row_nonzero[k] : col_nonzero[k - n];
    if (touched && find(k) == k) ++mixed_components;
  }

  // Each side of the split needs a row and a column. Components holding both
  // must go whole to one side; isolated rows and columns go anywhere.
  if (mixed_components >= 2) return true;
  if (mixed_components == 1) return isolated_rows >= 1 && isolated_cols >= 1;
  return n >= 2 && m >= 2;
}

EpsAssignment round_to_assignment(const EpsMatrix& b) {
  return exact_lsape(b, Sense::kMax).assignment;
}

}  // namespace lsape
