#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "lsape/error.hpp"
#include "lsape/oracle.hpp"

namespace lsape {

LsapSolution hungarian_lsap(const Matrix& w, Sense sense) {
  const int n = w.rows();
  if (w.cols() != n) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("LSAP needs a square matrix, got {}x{}", w.rows(),
                            w.cols()));
  }
  for (double v : w.data()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "LSAP weight is not finite");
    }
  }
  const double sign = sense == Sense::kMax ? -1.0 : 1.0;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // 1-based arrays; index 0 is the virtual root of each augmenting tree.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> row_of(n + 1, 0), way(n + 1, 0);
  std::vector<double> min_slack(n + 1);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    row_of[0] = i;
    int j0 = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = row_of[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = sign * w(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const int j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  LsapSolution out;
  out.permutation.assign(n, -1);
  for (int j = 1; j <= n; ++j) out.permutation[row_of[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) out.value += w(i, out.permutation[i]);
  return out;
}

}  // namespace lsape
