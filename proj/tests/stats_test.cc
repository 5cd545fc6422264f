#include "csplearn/stats.hpp"

#include <gtest/gtest.h>

#include "csplearn/rng.hpp"

using namespace csplearn;

namespace {

// Reference points from published chi-square tables.
TEST(GammaQ, MatchesChiSquareCriticalValues) {
  EXPECT_NEAR(gamma_q(0.5, 10.8276 / 2.0), 1e-3, 2e-6);   // df=1, p=.001
  EXPECT_NEAR(gamma_q(1.5, 16.2662 / 2.0), 1e-3, 2e-6);   // df=3
  EXPECT_NEAR(gamma_q(3.5, 24.3219 / 2.0), 1e-3, 2e-6);   // df=7
  EXPECT_NEAR(gamma_q(0.5, 3.8415 / 2.0), 0.05, 1e-4);    // df=1, p=.05
  EXPECT_NEAR(gamma_q(5.0, 18.3070 / 2.0), 0.05, 1e-4);   // df=10, p=.05
}

TEST(GammaQ, Extremes) {
  EXPECT_DOUBLE_EQ(gamma_q(2.0, 0.0), 1.0);
  EXPECT_LT(gamma_q(0.5, 500.0), 1e-100);
  EXPECT_THROW(gamma_q(0.0, 1.0), DomainError);
}

TEST(ChiSquare, UniformCountsPass) {
  Rng rng(9001);
  std::vector<std::uint64_t> counts(10, 0);
  for (int i = 0; i < 100000; ++i) ++counts[rng.next_below(10)];
  const auto r = chi_square_uniform(counts);
  EXPECT_EQ(r.degrees_of_freedom, 9);
  EXPECT_GT(r.p_value, 1e-3);
}

TEST(ChiSquare, SkewedCountsFail) {
  std::vector<std::uint64_t> counts{2000, 1000, 1000, 1000};
  EXPECT_LT(chi_square_uniform(counts).p_value, 1e-6);
}

TEST(ChiSquare, IndependenceOnIndependentTable) {
  Rng rng(77);
  std::vector<std::vector<std::uint64_t>> table(2, std::vector<std::uint64_t>(4, 0));
  for (int i = 0; i < 40000; ++i)
    ++table[rng.coin() ? 1 : 0][rng.next_below(4)];
  const auto r = chi_square_independence(table);
  EXPECT_EQ(r.degrees_of_freedom, 3);
  EXPECT_GT(r.p_value, 1e-3);
}

TEST(ChiSquare, IndependenceDetectsCoupling) {
  // second row concentrated in the first column
  std::vector<std::vector<std::uint64_t>> table{{100, 100, 100, 100},
                                                {300, 40, 30, 30}};
  EXPECT_LT(chi_square_independence(table).p_value, 1e-6);
}

TEST(ChiSquare, DegenerateTableHasNoEvidence) {
  // one live column only: df = 0, nothing to test
  std::vector<std::vector<std::uint64_t>> table{{50, 0}, {70, 0}};
  const auto r = chi_square_independence(table);
  EXPECT_EQ(r.degrees_of_freedom, 0);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0);
}

TEST(Fnv1a, StableAndSensitive) {
  const char a[] = "abc";
  const char b[] = "abd";
  EXPECT_EQ(fnv1a(a, 3), fnv1a(a, 3));
  EXPECT_NE(fnv1a(a, 3), fnv1a(b, 3));
}

}  // namespace
