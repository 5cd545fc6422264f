#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csplearn/csp.hpp"
#include "csplearn/error.hpp"
#include "csplearn/fraction.hpp"

namespace csplearn {

// A literal over predicate input positions: (sign, position in [1, arity]).
// The literal holds iff z[position] == sign.
struct PositionLiteral {
  Sign sign;
  int position;
  bool operator==(const PositionLiteral&) const = default;
};

// DNF representation of a predicate, verified against its source on
// construction (exhaustively, arity <= kDnfVerifyCap).
class PredicateDnf {
 public:
  static constexpr int kDnfVerifyCap = 20;

  PredicateDnf(int arity, std::vector<std::vector<PositionLiteral>> clauses,
               PredicateSpec source)
      : arity_(arity), clauses_(std::move(clauses)), source_(std::move(source)) {
    if (source_.arity() != arity_)
      throw ArityMismatchError("predicate DNF arity != source predicate arity");
    for (const auto& clause : clauses_)
      for (const auto& lit : clause) {
        if (lit.position < 1 || lit.position > arity_)
          throw MalformedInstanceError("DNF literal position out of range");
        if (lit.sign != 1 && lit.sign != -1)
          throw MalformedInstanceError("DNF literal sign must be +1 or -1");
      }
    if (arity_ <= kDnfVerifyCap) verify_against_source();
  }

  int arity() const { return arity_; }
  const std::vector<std::vector<PositionLiteral>>& clauses() const { return clauses_; }
  const PredicateSpec& source() const { return source_; }

  bool eval(std::span<const Sign> z) const {
    if (static_cast<int>(z.size()) != arity_)
      throw ArityMismatchError("DNF eval arity mismatch");
    for (const auto& clause : clauses_) {
      bool all = true;
      for (const auto& lit : clause)
        if (z[lit.position - 1] != lit.sign) {
          all = false;
          break;
        }
      if (all) return true;
    }
    return false;
  }

 private:
  void verify_against_source() const {
    std::vector<Sign> z(arity_);
    const std::uint64_t total = std::uint64_t(1) << arity_;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      for (int i = 0; i < arity_; ++i)
        z[i] = (bits >> i) & 1 ? Sign(1) : Sign(-1);
      if (eval(z) != eval_predicate(source_, z))
        throw MalformedInstanceError(
            "predicate DNF disagrees with its source predicate at input " +
            std::to_string(bits));
    }
  }

  int arity_;
  std::vector<std::vector<PositionLiteral>> clauses_;
  PredicateSpec source_;
};

// De Morgan DNF of NotTKM(K,M): clause j asserts every position of block j
// is -1. Exactly M clauses of K literals.
inline PredicateDnf dnf_of_not_t(int k, int m) {
  if (k < 1 || m < 1) throw MalformedInstanceError("dnf_of_not_t needs K,M >= 1");
  std::vector<std::vector<PositionLiteral>> clauses(m);
  for (int j = 0; j < m; ++j) {
    clauses[j].reserve(k);
    for (int i = 0; i < k; ++i)
      clauses[j].push_back(PositionLiteral{Sign(-1), j * k + i + 1});
  }
  return PredicateDnf(k * m, std::move(clauses), PredicateSpec::not_tkm(k, m));
}

// Fraction of the 2^arity inputs on which p evaluates to 1, in closed form.
inline Fraction satisfying_fraction(const PredicateSpec& p) {
  switch (p.kind) {
    case PredicateKind::SatK: {
      // 1 - 2^-K
      BigInt den = bigint_pow(2, unsigned(p.k));
      return Fraction(den - 1, den);
    }
    case PredicateKind::TKM: {
      // (1 - 2^-K)^M = ((2^K - 1) / 2^K)^M
      BigInt num = bigint_pow(bigint_pow(2, unsigned(p.k)) - 1, unsigned(p.m));
      BigInt den = bigint_pow(2, unsigned(p.k) * unsigned(p.m));
      return Fraction(std::move(num), std::move(den));
    }
    case PredicateKind::NotTKM: {
      BigInt sat = bigint_pow(bigint_pow(2, unsigned(p.k)) - 1, unsigned(p.m));
      BigInt den = bigint_pow(2, unsigned(p.k) * unsigned(p.m));
      return Fraction(den - sat, den);
    }
    case PredicateKind::TruthTable: {
      BigInt count = 0;
      for (bool b : p.table)
        if (b) ++count;
      return Fraction(std::move(count), BigInt(p.table.size()));
    }
  }
  throw DomainError("unknown predicate kind");
}

// Exact check of the negation-survival inequality
//   m * (1 - 2^-K)^M <= 1/m    <=>    m^2 * (2^K - 1)^M <= 2^(K*M),
// in integer arithmetic (no floats, no underflow at large M).
inline bool negation_survival_inequality_holds(int k, int m_blocks, long long m_constraints) {
  if (k < 1 || m_blocks < 1 || m_constraints < 1)
    throw DomainError("negation survival check needs positive parameters");
  BigInt lhs = BigInt(m_constraints) * BigInt(m_constraints) *
               bigint_pow(bigint_pow(2, unsigned(k)) - 1, unsigned(m_blocks));
  BigInt rhs = bigint_pow(2, unsigned(k) * unsigned(m_blocks));
  return lhs <= rhs;
}

}  // namespace csplearn
