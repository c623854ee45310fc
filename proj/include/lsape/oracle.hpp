#ifndef LSAPE_ORACLE_HPP_
#define LSAPE_ORACLE_HPP_

#include <vector>

#include "lsape/core.hpp"

namespace lsape {

enum class Sense { kMax, kMin };

enum class ExactMethod { kBruteForce, kReduction };

struct ExactSolution {
  EpsAssignment assignment;
  // assignment_value(s, assignment)
  double value = 0.0;
  ExactMethod method = ExactMethod::kBruteForce;
};

inline constexpr int kBruteForceLimit = 9;
inline constexpr int kExactLimit = 512;
inline constexpr int kSupportLimit = 9;
inline constexpr int kSecableLimit = 20;

// Exhaustive search over every epsilon-assignment. Among optimal assignments
// the lexicographically smallest target vector wins, with a deletion ordered
// after every real target. Throws kTooLarge when n or m exceeds
// kBruteForceLimit.
ExactSolution brute_force_lsape(const EpsMatrix& s, Sense sense);

struct LsapSolution {
  std::vector<int> permutation;  // row i -> column permutation[i]
  double value = 0.0;
};

// Shortest augmenting path Hungarian method with row/column potentials,
// O(n^3). Throws kInvalidInput for non-square input and kNonFinite for
// non-finite weights.
LsapSolution hungarian_lsap(const Matrix& w, Sense sense);

// Reduces the problem to a square (n+m) x (n+m) LSAP:
//
//            | real targets      | deletions            |
//   sources  | s(i,j)            | diag s(i,m), blocked |
//   epsilon  | diag s(n,j), blk. | 0                    |
//
// where blocked cells carry -(1 + 2 sum|s|) for kMax and the opposite for
// kMin, so that no blocked cell can be part of an optimum. Throws kTooLarge
// beyond kExactLimit.
ExactSolution exact_lsape(const EpsMatrix& s, Sense sense);

// True iff some epsilon-assignment selects only positive entries. The corner
// is not considered: the solvers pin it to 1 regardless of its value.
// Exhaustive; throws kTooLarge beyond kSupportLimit.
bool has_support(const EpsMatrix& a);

// True iff a has a positive non-corner entry and every positive non-corner
// entry lies on some positive epsilon-diagonal. Exhaustive; throws kTooLarge
// beyond kSupportLimit.
bool has_total_support(const EpsMatrix& a);

// Whether the interior n x m block can be split by nonempty row partition
// {X, Y} and nonempty column partition {Z, T} with A[X,T] = 0 and A[Y,Z] = 0.
// Decided from the connected components of the bipartite graph of nonzero
// interior entries. Throws kTooLarge beyond kSecableLimit.
bool is_secable(const EpsMatrix& a);

// Projection of a relaxed solution on the epsilon-assignments: the
// assignment maximizing sum b(i,j) x(i,j), computed with exact_lsape.
EpsAssignment round_to_assignment(const EpsMatrix& b);

}  // namespace lsape

#endif  // LSAPE_ORACLE_HPP_
