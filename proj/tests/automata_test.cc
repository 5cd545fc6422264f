#include "csplearn/automata.hpp"

#include <gtest/gtest.h>

#include "test_oracles.hh"

using namespace csplearn;

namespace {

TEST(ReplicateInput, IdentityAndLength) {
  const std::vector<Sign> x{1, -1, 1};
  EXPECT_EQ(replicate_input(x, 1), x);
  const auto r = replicate_input(x, 4);
  EXPECT_EQ(r.size(), 12u);
  // de-replication recovers x
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < 3; ++i)
      EXPECT_EQ(r[std::size_t(3 * c + i)], x[std::size_t(i)]);
}

TEST(DnfToDfa, SingleConjunctionClause) {
  // f = x1 and x2 over n=2: accepts exactly the replication of (+1,+1)
  DnfFormula f;
  f.num_vars = 2;
  f.clauses.push_back({Literal{Sign(1), 1}, Literal{Sign(1), 2}});
  const Dfa a = dnf_to_dfa(f);
  EXPECT_LE(a.num_states, 5);
  for (std::uint64_t bits = 0; bits < 4; ++bits) {
    const auto x = oracle::point_from_bits(bits, 2);
    EXPECT_EQ(run_dfa(a, replicate_input(x, 1)), bits == 3);
  }
}

TEST(DnfToDfa, EmptyClauseAcceptsEverything) {
  DnfFormula f;
  f.num_vars = 3;
  f.clauses.push_back({});  // tautology
  f.clauses.push_back({Literal{Sign(-1), 1}});
  const Dfa a = dnf_to_dfa(f);
  for (std::uint64_t bits = 0; bits < 8; ++bits) {
    const auto x = oracle::point_from_bits(bits, 3);
    EXPECT_TRUE(run_dfa(a, replicate_input(x, 2)));
  }
}

TEST(DnfToDfa, NoClausesRejectsEverything) {
  DnfFormula f;
  f.num_vars = 2;
  const Dfa a = dnf_to_dfa(f);
  EXPECT_EQ(a.num_states, 1);
  EXPECT_FALSE(run_dfa(a, replicate_input(oracle::point_from_bits(0, 2), 0)));
  EXPECT_FALSE(run_dfa(a, oracle::point_from_bits(1, 2)));
}

TEST(DnfToDfa, ExhaustiveAgreementOnRandomDnfs) {
  Rng rng(2025);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + int(rng.next_below(10));
    const int c = int(rng.next_below(std::uint64_t(n) + 1));
    const DnfFormula f = oracle::random_dnf(n, c, rng);
    const Dfa a = dnf_to_dfa(f, /*strict=*/true);
    EXPECT_LE(a.num_states, 2 * c * n + 1);
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << n); ++bits) {
      const auto x = oracle::point_from_bits(bits, n);
      ASSERT_EQ(run_dfa(a, replicate_input(x, c)), eval_dnf(f, x))
          << "n=" << n << " c=" << c << " bits=" << bits;
    }
  }
}

TEST(DnfToDfa, StrictModeRejectsTooManyClauses) {
  Rng rng(3);
  const DnfFormula f = oracle::random_dnf(3, 5, rng);
  EXPECT_THROW(dnf_to_dfa(f, /*strict=*/true), MalformedInstanceError);
  EXPECT_NO_THROW(dnf_to_dfa(f));  // general mode allows any clause count
}

TEST(DnfToDfa, GeneralModeBoundHolds) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + int(rng.next_below(5));
    const int c = n + 1 + int(rng.next_below(6));
    const DnfFormula f = oracle::random_dnf(n, c, rng);
    const Dfa a = dnf_to_dfa(f);
    EXPECT_LE(a.num_states, 2 * c * n + 1);
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << n); ++bits) {
      const auto x = oracle::point_from_bits(bits, n);
      ASSERT_EQ(run_dfa(a, replicate_input(x, c)), eval_dnf(f, x));
    }
  }
}

TEST(RunDfa, EmptyWordReturnsStartAcceptance) {
  DnfFormula f;
  f.num_vars = 2;
  f.clauses.push_back({Literal{Sign(1), 1}});
  const Dfa a = dnf_to_dfa(f);
  EXPECT_EQ(run_dfa(a, std::vector<Sign>{}), a.accept[std::size_t(a.start)]);
}

TEST(RunDfa, SinkAbsorbsRegardlessOfSuffix) {
  DnfFormula f;
  f.num_vars = 1;
  f.clauses.push_back({Literal{Sign(1), 1}});
  const Dfa a = dnf_to_dfa(f);
  // after reading +1 the sink is reached; any suffix keeps accepting
  const std::vector<Sign> word{1, -1, -1, 1, -1};
  EXPECT_TRUE(run_dfa(a, word));
}

TEST(RunDfa, AgreesWithRecursiveInterpreter) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + int(rng.next_below(6));
    const int c = 1 + int(rng.next_below(std::uint64_t(n)));
    const DnfFormula f = oracle::random_dnf(n, c, rng);
    const Dfa a = dnf_to_dfa(f);
    std::vector<Sign> word;
    for (int i = 0; i < c * n; ++i) word.push_back(rng.coin() ? Sign(1) : Sign(-1));
    EXPECT_EQ(run_dfa(a, word), oracle::run_dfa_naive(a, word));
  }
}

TEST(Dfa, ValidationCatchesBrokenSink) {
  DnfFormula f;
  f.num_vars = 2;
  f.clauses.push_back({Literal{Sign(1), 1}});
  Dfa a = dnf_to_dfa(f);
  a.transitions[std::size_t(a.accepting_sink)][0] = a.start;  // sink no longer absorbs
  EXPECT_THROW(a.validate(), MalformedInstanceError);
}

TEST(Dfa, ContradictoryLiteralClauseNeverHolds) {
  DnfFormula f;
  f.num_vars = 2;
  f.clauses.push_back({Literal{Sign(1), 1}, Literal{Sign(-1), 1}});
  const Dfa a = dnf_to_dfa(f);
  for (std::uint64_t bits = 0; bits < 4; ++bits) {
    const auto x = oracle::point_from_bits(bits, 2);
    EXPECT_FALSE(run_dfa(a, replicate_input(x, 1)));
  }
}

}  // namespace
