#include "lsape/oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lsape/error.hpp"
#include "lsape/scaling.hpp"
#include "test_oracles.hpp"

namespace lsape {
namespace {

using testing::random_similarity;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no lsape::Error thrown";
  return ErrorCode::kInvalidInput;
}

// Random matrix where each non-corner entry is zero with probability `p_zero`.
EpsMatrix sparse_matrix(int n, int m, double p_zero, std::mt19937_64& rng) {
  EpsMatrix a(n, m);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) {
      if (i == n && j == m) continue;
      a(i, j) = testing::uniform(rng, 0, 1) < p_zero ? 0.0
                                                     : testing::uniform(rng, 0.5, 2);
    }
  }
  return a;
}

SolverConfig tight(double tol) {
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = 100000;
  return cfg;
}

TEST(BruteForceTest, SubstitutionWins) {
  const auto sol = brute_force_lsape(EpsMatrix(1, 1, {5, 1, 1, 0}), Sense::kMax);
  EXPECT_EQ(sol.assignment, (EpsAssignment{1, 1, {0}}));
  EXPECT_DOUBLE_EQ(sol.value, 5.0);
  EXPECT_EQ(sol.method, ExactMethod::kBruteForce);
}

TEST(BruteForceTest, EditsWin) {
  const auto sol = brute_force_lsape(EpsMatrix(1, 1, {1, 5, 5, 0}), Sense::kMax);
  EXPECT_EQ(sol.assignment, (EpsAssignment{1, 1, {EpsAssignment::kDeleted}}));
  EXPECT_DOUBLE_EQ(sol.value, 10.0);
}

TEST(BruteForceTest, MinSense) {
  const auto sol = brute_force_lsape(EpsMatrix(1, 1, {5, 1, 1, 0}), Sense::kMin);
  EXPECT_DOUBLE_EQ(sol.value, 2.0);
}

TEST(BruteForceTest, DominatesRandomAssignments) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 5; ++t) {
    const EpsMatrix s = random_similarity(2, 2, rng);
    const auto sol = brute_force_lsape(s, Sense::kMax);
    for (int k = 0; k < 10000; ++k) {
      const auto x = assignment_to_matrix(testing::random_assignment(2, 2, rng));
      ASSERT_GE(sol.value, objective(s, x));
    }
  }
}

TEST(BruteForceTest, MatchesEnumerationAndObjective) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const EpsMatrix s = random_similarity(3, 3, rng);
    const auto sol = brute_force_lsape(s, Sense::kMax);
    EXPECT_DOUBLE_EQ(sol.value, testing::best_value_by_enumeration(s, true));
    EXPECT_NEAR(objective(s, assignment_to_matrix(sol.assignment)), sol.value, 1e-12);
    const auto low = brute_force_lsape(s, Sense::kMin);
    EXPECT_DOUBLE_EQ(low.value, testing::best_value_by_enumeration(s, false));
  }
}

TEST(BruteForceTest, LexicographicTieBreak) {
  // Every assignment is worth 0, so the first in order wins: 1->1, 2->2.
  const auto sol = brute_force_lsape(EpsMatrix(2, 2), Sense::kMax);
  EXPECT_EQ(sol.assignment, (EpsAssignment{2, 2, {0, 1}}));
}

TEST(BruteForceTest, TooLarge) {
  EXPECT_EQ(code_of([] { brute_force_lsape(EpsMatrix(10, 2), Sense::kMax); }),
            ErrorCode::kTooLarge);
}

TEST(HungarianTest, Identity) {
  Matrix w(5, 5);
  for (int i = 0; i < 5; ++i) w(i, i) = 1.0;
  const auto sol = hungarian_lsap(w, Sense::kMax);
  EXPECT_EQ(sol.permutation, (std::vector<int>{0, 1, 2, 3, 4}));
  EXPECT_DOUBLE_EQ(sol.value, 5.0);
}

TEST(HungarianTest, TwoByTwo) {
  const auto sol = hungarian_lsap(Matrix(2, 2, {1, 2, 3, 1}), Sense::kMax);
  EXPECT_EQ(sol.permutation, (std::vector<int>{1, 0}));
  EXPECT_DOUBLE_EQ(sol.value, 5.0);
}

TEST(HungarianTest, MatchesPermutationEnumeration) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 6;
    Matrix w(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) w(i, j) = testing::uniform(rng, -5, 5);
    }
    for (Sense sense : {Sense::kMax, Sense::kMin}) {
      const auto sol = hungarian_lsap(w, sense);
      const double best = testing::best_permutation_value(w, sense == Sense::kMax);
      EXPECT_NEAR(sol.value, best, 1e-9);
      std::vector<int> sorted = sol.permutation;
      std::sort(sorted.begin(), sorted.end());
      for (int k = 0; k < n; ++k) ASSERT_EQ(sorted[k], k);
    }
  }
}

TEST(HungarianTest, RejectsNonFinite) {
  Matrix w(2, 2, 1.0);
  w(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_EQ(code_of([&] { hungarian_lsap(w, Sense::kMax); }), ErrorCode::kNonFinite);
}

TEST(ExactLsapeTest, SmallCases) {
  auto sol = exact_lsape(EpsMatrix(1, 1, {5, 1, 1, 0}), Sense::kMax);
  EXPECT_EQ(sol.assignment, (EpsAssignment{1, 1, {0}}));
  EXPECT_DOUBLE_EQ(sol.value, 5.0);
  EXPECT_EQ(sol.method, ExactMethod::kReduction);
  sol = exact_lsape(EpsMatrix(1, 1, {1, 5, 5, 0}), Sense::kMax);
  EXPECT_EQ(sol.assignment, (EpsAssignment{1, 1, {EpsAssignment::kDeleted}}));
  EXPECT_DOUBLE_EQ(sol.value, 10.0);
}

TEST(ExactLsapeTest, AgreesWithBruteForce) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> size(1, 6);
  for (int t = 0; t < 500; ++t) {
    const int n = size(rng);
    const int m = size(rng);
    EpsMatrix s = random_similarity(n, m, rng, 0.0, 2.0, 1.5);
    if (t % 5 == 0) s(n, m) = testing::uniform(rng, -1, 1);
    const Sense sense = t % 2 == 0 ? Sense::kMax : Sense::kMin;
    const auto exact = exact_lsape(s, sense);
    const auto brute = brute_force_lsape(s, sense);
    EXPECT_NEAR(exact.value, brute.value, 1e-9) << "trial " << t;
    EXPECT_TRUE(exact.assignment.is_valid());
    EXPECT_NEAR(assignment_value(s, exact.assignment), exact.value, 1e-12);
  }
}

TEST(ExactLsapeTest, HandlesNegativeEntries) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    EpsMatrix s(3, 2);
    for (int i = 0; i <= 3; ++i) {
      for (int j = 0; j <= 2; ++j) s(i, j) = testing::uniform(rng, -10, 10);
    }
    for (Sense sense : {Sense::kMax, Sense::kMin}) {
      EXPECT_NEAR(exact_lsape(s, sense).value,
                  testing::best_value_by_enumeration(s, sense == Sense::kMax), 1e-9);
    }
  }
}

TEST(ExactLsapeTest, InteriorDominantGivesPermutation) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 4;
    EpsMatrix s(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) s(i, j) = testing::uniform(rng, 1, 2);
      s(i, n) = testing::uniform(rng, 0.01, 0.4);
    }
    for (int j = 0; j < n; ++j) s(n, j) = testing::uniform(rng, 0.01, 0.4);
    const auto sol = exact_lsape(s, Sense::kMax);
    EXPECT_TRUE(sol.assignment.deleted().empty());
    EXPECT_TRUE(sol.assignment.inserted().empty());
    EXPECT_NEAR(sol.value, brute_force_lsape(s, Sense::kMax).value, 1e-12);
  }
}

TEST(ExactLsapeTest, TooLarge) {
  EXPECT_EQ(code_of([] { exact_lsape(EpsMatrix(513, 1), Sense::kMax); }),
            ErrorCode::kTooLarge);
}

TEST(SupportTest, Examples) {
  EpsMatrix positive(3, 2, std::vector<double>(12, 1.0));
  EXPECT_TRUE(has_support(positive));
  EXPECT_TRUE(has_total_support(positive));

  // Interior row 0 is zero but can be deleted.
  EpsMatrix zero_row = positive;
  zero_row(0, 0) = zero_row(0, 1) = 0.0;
  EXPECT_TRUE(has_support(zero_row));

  // Column 1 can be neither substituted nor inserted.
  EpsMatrix dead_column = positive;
  for (int i = 0; i <= 3; ++i) dead_column(i, 1) = 0.0;
  EXPECT_FALSE(has_support(dead_column));
  EXPECT_FALSE(has_total_support(dead_column));

  EXPECT_FALSE(has_total_support(EpsMatrix(2, 2)));
}

TEST(SupportTest, AssignmentMatrices) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto a = testing::random_assignment(1 + t % 5, 1 + t % 4, rng);
    const EpsMatrix x = assignment_to_matrix(a);
    EXPECT_TRUE(has_support(x));
    EXPECT_TRUE(has_total_support(x));
  }
}

TEST(SupportTest, MatchesMatchingOracle) {
  std::mt19937_64 rng(8);
  int with = 0, total = 0;
  for (int t = 0; t < 400; ++t) {
    const int n = 1 + t % 5;
    const int m = 1 + (t / 5) % 5;
    const EpsMatrix a = sparse_matrix(n, m, 0.3 + 0.4 * (t % 2), rng);
    const bool s = has_support(a);
    const bool ts = has_total_support(a);
    EXPECT_EQ(s, testing::support_by_matching(a)) << "trial " << t;
    EXPECT_EQ(ts, testing::total_support_by_matching(a)) << "trial " << t;
    if (ts) EXPECT_TRUE(s);
    with += s;
    total += ts;
  }
  // Both outcomes occur, so the comparison is not vacuous.
  EXPECT_GT(with, 0);
  EXPECT_LT(total, 400);
  EXPECT_GT(total, 0);
}

TEST(SupportTest, TooLarge) {
  EXPECT_EQ(code_of([] { has_total_support(EpsMatrix(10, 2)); }), ErrorCode::kTooLarge);
  EXPECT_EQ(code_of([] { has_support(EpsMatrix(2, 10)); }), ErrorCode::kTooLarge);
}

TEST(SecableTest, Examples) {
  EXPECT_TRUE(is_secable(EpsMatrix(2, 2, {1, 0, 1,  //
                                          0, 1, 1,  //
                                          1, 1, 0})));
  EXPECT_FALSE(is_secable(EpsMatrix(2, 2, std::vector<double>(9, 1.0))));
  // A zero interior row alone does not split [[1,1],[0,0]].
  EXPECT_FALSE(is_secable(EpsMatrix(2, 2, {1, 1, 1,  //
                                           0, 0, 1,  //
                                           1, 1, 0})));
  EXPECT_FALSE(is_secable(EpsMatrix(1, 3, std::vector<double>(8, 1.0))));
}

TEST(SecableTest, MatchesPartitionOracle) {
  std::mt19937_64 rng(9);
  int yes = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 5;
    const int m = 1 + (t / 5) % 5;
    const EpsMatrix a = sparse_matrix(n, m, 0.3 + 0.5 * ((t / 25) % 2), rng);
    const bool got = is_secable(a);
    EXPECT_EQ(got, testing::secable_by_partitions(a)) << "trial " << t;
    yes += got;
  }
  EXPECT_GT(yes, 50);
  EXPECT_LT(yes, 950);
}

TEST(SecableTest, TooLarge) {
  EXPECT_EQ(code_of([] { is_secable(EpsMatrix(21, 2)); }), ErrorCode::kTooLarge);
}

TEST(RoundToAssignmentTest, BinaryIsFixed) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 100; ++t) {
    const auto a = testing::random_assignment(1 + t % 6, 1 + t % 5, rng);
    EXPECT_EQ(round_to_assignment(assignment_to_matrix(a)), a);
  }
}

TEST(RoundToAssignmentTest, UniformIsDeterministic) {
  const int n = 3, m = 4;
  EpsMatrix b(n, m, Role::kRelaxed);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) b(i, j) = 0.25;
  }
  for (int j = 0; j < m; ++j) b(n, j) = 0.25;
  b(n, m) = 1.0;
  const auto first = round_to_assignment(b);
  EXPECT_TRUE(first.is_valid());
  for (int k = 0; k < 5; ++k) EXPECT_EQ(round_to_assignment(b), first);
}

TEST(RoundToAssignmentTest, RecoversOptimalPermutation) {
  std::mt19937_64 rng(11);
  int hits = 0;
  for (int t = 0; t < 100; ++t) {
    EpsMatrix s(5, 5);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) s(i, j) = testing::uniform(rng, 1, 2);
      s(i, 5) = testing::uniform(rng, 0.01, 0.1);
    }
    for (int j = 0; j < 5; ++j) s(5, j) = testing::uniform(rng, 0.01, 0.1);
    const auto r = sinkhorn_d1d2(s, tight(1e-9));
    hits += round_to_assignment(r.matrix) == exact_lsape(s, Sense::kMax).assignment;
  }
  EXPECT_GE(hits, 80);
}

TEST(UniquenessTest, PrescalingLeavesBUnchanged) {
  std::mt19937_64 rng(12);
  const double tol = 1e-9;
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 5;
    const int m = 2 + t % 4;
    const EpsMatrix a = random_similarity(n, m, rng);
    const auto base = sinkhorn_d1d2(a, tight(tol));
    for (int v = 0; v < 5; ++v) {
      EpsMatrix scaled = a;
      for (int i = 0; i < n; ++i) {
        const double r = testing::uniform(rng, 0.1, 10);
        for (int j = 0; j <= m; ++j) scaled(i, j) *= r;
      }
      for (int j = 0; j < m; ++j) {
        const double c = testing::uniform(rng, 0.1, 10);
        for (int i = 0; i <= n; ++i) scaled(i, j) *= c;
      }
      const auto r = sinkhorn_d1d2(scaled, tight(tol));
      ASSERT_TRUE(r.report.converged);
      EXPECT_LE(testing::max_abs_diff(r.matrix, base.matrix), 100 * tol);
    }
  }
}

TEST(UniquenessTest, SecableScalingPairsDiffer) {
  // Interior is two positive blocks: rows {0,1} x cols {0,1} and row 2 x col 2.
  std::mt19937_64 rng(13);
  EpsMatrix a(3, 3);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      const bool cross = i < 3 && j < 3 && ((i < 2) != (j < 2));
      if (!cross && !(i == 3 && j == 3)) a(i, j) = testing::uniform(rng, 0.5, 2);
    }
  }
  ASSERT_TRUE(is_secable(a));
  EpsMatrix scaled = a;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j <= 3; ++j) scaled(i, j) *= 2.0;
  }
  const double tol = 1e-10;
  const auto r1 = sinkhorn_d1d2(a, tight(tol));
  const auto r2 = sinkhorn_d1d2(scaled, tight(tol));
  EXPECT_LE(testing::max_abs_diff(r1.matrix, r2.matrix), 100 * tol);
  double gap = 0.0;
  for (int i = 0; i < 3; ++i) {
    gap = std::max(gap, std::abs(r1.scaling->x[i] - r2.scaling->x[i]));
  }
  EXPECT_GT(gap, 1e-3);
}

}  // namespace
}  // namespace lsape
