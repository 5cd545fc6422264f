#include "csplearn/predicates.hpp"

#include <gtest/gtest.h>

#include "test_oracles.hh"

using namespace csplearn;

namespace {

TEST(DnfOfNotT, SmallestCaseIsNegatedIdentity) {
  const PredicateDnf pd = dnf_of_not_t(1, 1);
  ASSERT_EQ(pd.clauses().size(), 1u);
  ASSERT_EQ(pd.clauses()[0].size(), 1u);
  EXPECT_EQ(pd.clauses()[0][0].sign, -1);
  EXPECT_EQ(pd.clauses()[0][0].position, 1);
  EXPECT_TRUE(pd.eval(std::vector<Sign>{-1}));
  EXPECT_FALSE(pd.eval(std::vector<Sign>{1}));
}

TEST(DnfOfNotT, AgreesWithPredicateOnAllInputs22) {
  const PredicateDnf pd = dnf_of_not_t(2, 2);
  EXPECT_EQ(pd.clauses().size(), 2u);
  const PredicateSpec p = PredicateSpec::not_tkm(2, 2);
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    const auto z = oracle::point_from_bits(bits, 4);
    EXPECT_EQ(pd.eval(z), eval_predicate(p, z)) << "input " << bits;
  }
}

TEST(DnfOfNotT, ClauseCountEqualsM) {
  for (int k = 1; k <= 4; ++k)
    for (int m = 1; m <= 4; ++m)
      EXPECT_EQ(dnf_of_not_t(k, m).clauses().size(), std::size_t(m));
}

TEST(PredicateDnf, ConstructionRejectsWrongDnf) {
  // claims to represent NotTKM(1,1) but is the identity
  std::vector<std::vector<PositionLiteral>> clauses{{PositionLiteral{Sign(1), 1}}};
  EXPECT_THROW(PredicateDnf(1, clauses, PredicateSpec::not_tkm(1, 1)),
               MalformedInstanceError);
}

TEST(SatisfyingFraction, ClosedForms) {
  EXPECT_EQ(satisfying_fraction(PredicateSpec::not_tkm(2, 2)), Fraction::ratio(7, 16));
  EXPECT_EQ(satisfying_fraction(PredicateSpec::sat(3)), Fraction::ratio(7, 8));
  // TKM(K,1) is SatK
  EXPECT_EQ(satisfying_fraction(PredicateSpec::tkm(3, 1)),
            satisfying_fraction(PredicateSpec::sat(3)));
}

TEST(SatisfyingFraction, ZeroInputCountOfNotTkm) {
  // |(NotTKM(2,2))^-1(0)| = (2^2-1)^2 = 9
  const Fraction unsat = Fraction(1) - satisfying_fraction(PredicateSpec::not_tkm(2, 2));
  EXPECT_EQ(unsat * Fraction(16), Fraction(9));
}

TEST(SatisfyingFraction, MatchesExhaustiveCountExactly) {
  std::vector<PredicateSpec> preds = {
      PredicateSpec::sat(1),        PredicateSpec::sat(4),
      PredicateSpec::tkm(2, 3),     PredicateSpec::not_tkm(3, 2),
      PredicateSpec::tkm(4, 4),     PredicateSpec::not_tkm(2, 10),
      PredicateSpec::truth_table(3, {true, false, false, true, true, true, false, false}),
  };
  for (const auto& p : preds) {
    const int arity = p.arity();
    ASSERT_LE(arity, 20);
    BigInt count = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << arity); ++bits)
      if (eval_predicate(p, oracle::point_from_bits(bits, arity))) ++count;
    EXPECT_EQ(satisfying_fraction(p),
              Fraction(count, bigint_pow(2, unsigned(arity))));
  }
}

TEST(SatisfyingFraction, ExactAtLargeMWithoutUnderflow) {
  // (3/4)^64 as an exact rational; denominator is 2^128.
  const Fraction f = satisfying_fraction(PredicateSpec::tkm(2, 64));
  EXPECT_EQ(f.num(), bigint_pow(3, 64));
  EXPECT_EQ(f.den(), bigint_pow(2, 128));
}

TEST(NegationSurvival, ExactInequality) {
  // m^2 (2^K-1)^M <= 2^KM at the lemma threshold M = 2^(K+2) log2 m.
  EXPECT_TRUE(negation_survival_inequality_holds(2, 128, 256));
  EXPECT_TRUE(negation_survival_inequality_holds(2, 64, 256));
  EXPECT_TRUE(negation_survival_inequality_holds(3, 256, 1024));
  // far below the threshold the inequality must fail
  EXPECT_FALSE(negation_survival_inequality_holds(2, 2, 256));
  EXPECT_FALSE(negation_survival_inequality_holds(2, 16, 256));
}

TEST(Fraction, ArithmeticAndOrdering) {
  const Fraction a = Fraction::ratio(1, 3);
  const Fraction b = Fraction::ratio(1, 6);
  EXPECT_EQ(a + b, Fraction::ratio(1, 2));
  EXPECT_EQ(a - b, b);
  EXPECT_EQ(a * b, Fraction::ratio(1, 18));
  EXPECT_EQ(a / b, Fraction(2));
  EXPECT_LT(b, a);
  EXPECT_EQ(Fraction::ratio(2, 4), Fraction::ratio(1, 2));
  EXPECT_EQ(Fraction::ratio(3, -6), Fraction::ratio(-1, 2));
  EXPECT_EQ(Fraction::ratio(3, 4).pow(2), Fraction::ratio(9, 16));
  EXPECT_THROW(a / Fraction(0), DomainError);
}

}  // namespace
