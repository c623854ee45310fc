#include "lsape/transform.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "lsape/error.hpp"

namespace lsape {

double CostScheme::eps_row_cost() const {
  switch (kind) {
    case SchemeKind::kRowLoaded: return 2.0 * c;
    case SchemeKind::kColLoaded: return 0.0;
    case SchemeKind::kBalanced: return c;
  }
  return c;
}

double CostScheme::eps_column_cost() const {
  switch (kind) {
    case SchemeKind::kRowLoaded: return 0.0;
    case SchemeKind::kColLoaded: return 2.0 * c;
    case SchemeKind::kBalanced: return c;
  }
  return c;
}

double equivalence_constant(const CostScheme& scheme, int n, int m) {
  switch (scheme.kind) {
    case SchemeKind::kRowLoaded: return 2.0 * scheme.c * m;
    case SchemeKind::kColLoaded: return 2.0 * scheme.c * n;
    case SchemeKind::kBalanced: return scheme.c * (n + m);
  }
  return 0.0;
}

StructuredCost structured_cost(const CostScheme& scheme, int n, int m) {
  if (!(scheme.c > 0.0) || !std::isfinite(scheme.c)) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("scheme constant must be positive, got {}",
                            scheme.c));
  }
  EpsMatrix cost(n, m, Role::kCost);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) cost(i, j) = 2.0 * scheme.c;
    cost(i, m) = scheme.eps_column_cost();
  }
  for (int j = 0; j < m; ++j) cost(n, j) = scheme.eps_row_cost();
  cost(n, m) = 0.0;
  return {std::move(cost), equivalence_constant(scheme, n, m)};
}

CostReduction similarity_to_cost(const EpsMatrix& s, const CostScheme& scheme) {
  const auto values = s.entries().data();
  const double largest = *std::max_element(values.begin(), values.end());
  if (!(scheme.c > largest)) {
    throw Error(ErrorCode::kConstantTooSmall,
                fmt::format("c = {} must exceed the largest similarity {}",
                            scheme.c, largest));
  }
  auto [cost, q] = structured_cost(scheme, s.n(), s.m());
  for (int i = 0; i < s.rows(); ++i) {
    for (int j = 0; j < s.cols(); ++j) cost(i, j) -= s(i, j);
  }
  return {std::move(cost), q};
}

SimilarityReduction cost_to_similarity(const EpsMatrix& d, double margin) {
  if (!(margin > 0.0) || !std::isfinite(margin)) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("margin must be positive, got {}", margin));
  }
  if (d.corner() != 0.0) {
    throw Error(ErrorCode::kCornerNonzero,
                fmt::format("cost corner must be 0, got {}", d.corner()));
  }
  const auto values = d.entries().data();
  if (std::any_of(values.begin(), values.end(),
                  [](double v) { return v < 0.0; })) {
    throw Error(ErrorCode::kNegativeCost, "cost matrix has a negative entry");
  }
  const double c = *std::max_element(values.begin(), values.end()) + margin;
  auto [s, q] = structured_cost({SchemeKind::kBalanced, c}, d.n(), d.m());
  for (int i = 0; i < d.rows(); ++i) {
    for (int j = 0; j < d.cols(); ++j) s(i, j) -= d(i, j);
  }
  s.set_role(Role::kSimilarity);
  return {std::move(s), q, c};
}

Simplified simplify(const EpsMatrix& s, double floor) {
  Simplified out{s, 0};
  const int n = s.n();
  const int m = s.m();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (s(i, j) < s(n, j) + s(i, m)) {
        out.similarity(i, j) = floor;
        ++out.replaced;
      }
    }
  }
  return out;
}

EpsMatrix sharpen(const EpsMatrix& s, double temperature) {
  if (!(temperature > 0.0)) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("temperature must be positive, got {}",
                            temperature));
  }
  EpsMatrix out(s.n(), s.m(), Role::kSimilarity);
  for (int i = 0; i < s.rows(); ++i) {
    for (int j = 0; j < s.cols(); ++j) {
      const double v = std::exp(s(i, j) / temperature);
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kOverflow,
                    fmt::format("exp({} / {}) overflows", s(i, j),
                                temperature));
      }
      out(i, j) = v;
    }
  }
  return out;
}

}  // namespace lsape
