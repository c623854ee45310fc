#ifndef LSAPE_TRANSFORM_HPP_
#define LSAPE_TRANSFORM_HPP_

#include "lsape/core.hpp"

namespace lsape {

// Layout of the constant cost matrix used to turn similarity maximization
// into cost minimization. With interior entries 2c:
//   kRowLoaded  puts 2c on the epsilon row and 0 on the epsilon column,
//   kColLoaded  puts 2c on the epsilon column and 0 on the epsilon row,
//   kBalanced   puts c on both.
enum class SchemeKind { kRowLoaded, kColLoaded, kBalanced };

struct CostScheme {
  SchemeKind kind = SchemeKind::kBalanced;
  double c = 1.0;

  double eps_row_cost() const;     // c_lr
  double eps_column_cost() const;  // c_lc
};

struct StructuredCost {
  EpsMatrix cost;
  // Sum of cost(i,j) x(i,j) for every epsilon-bi-stochastic x: 2cm for
  // kRowLoaded, 2cn for kColLoaded and c(n+m) for kBalanced.
  double q = 0.0;
};

// Throws kInvalidInput unless c > 0 and n, m >= 1.
StructuredCost structured_cost(const CostScheme& scheme, int n, int m);

// The constant q of structured_cost, without building the matrix.
double equivalence_constant(const CostScheme& scheme, int n, int m);

struct CostReduction {
  EpsMatrix cost;  // C - S
  double q = 0.0;  // cost objective + similarity objective == q
};

// Requires scheme.c strictly greater than every entry of s, otherwise throws
// kConstantTooSmall. The returned cost matrix may hold negative edit entries
// (and a negative corner when s has a positive one).
CostReduction similarity_to_cost(const EpsMatrix& s, const CostScheme& scheme);

struct SimilarityReduction {
  EpsMatrix similarity;
  double q = 0.0;
  double c = 0.0;
};

// Balanced reduction of a nonnegative cost matrix with zero corner, using
// c = max(d) + margin so that every non-corner similarity is positive.
// Throws kCornerNonzero, kNegativeCost, or kInvalidInput for margin <= 0.
SimilarityReduction cost_to_similarity(const EpsMatrix& d, double margin = 1.0);

struct Simplified {
  EpsMatrix similarity;
  int replaced = 0;
};

// Replaces every interior entry s(i,j) < s(n,j) + s(i,m) by `floor`: such a
// substitution is always beaten by deleting i and inserting j, so it cannot
// be part of an optimal epsilon-assignment.
Simplified simplify(const EpsMatrix& s, double floor = 1e-4);

// Elementwise exp(s / temperature). The corner is mapped like every other
// entry, so a zero corner becomes 1. Throws kInvalidInput for
// temperature <= 0 and kOverflow when an entry leaves the double range.
EpsMatrix sharpen(const EpsMatrix& s, double temperature);

}  // namespace lsape

#endif  // LSAPE_TRANSFORM_HPP_
