#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csplearn/error.hpp"
#include "csplearn/fraction.hpp"
#include "csplearn/rng.hpp"

namespace csplearn {

// Boolean convention used throughout: +1 encodes true, -1 false. Predicates
// take +/-1 vectors and return bits. Variable indices are 1-based.

using Sign = std::int8_t;

struct SignedEntry {
  Sign sign;   // +1 or -1
  int index;   // variable, in [1, n]
  bool operator==(const SignedEntry&) const = default;
};

// Ordered list of (sign, variable) pairs with pairwise-distinct variables.
struct SignedTuple {
  std::vector<SignedEntry> entries;

  int arity() const { return static_cast<int>(entries.size()); }
  bool operator==(const SignedTuple&) const = default;

  // Structural validity against a variable count.
  void validate(int n) const {
    for (std::size_t j = 0; j < entries.size(); ++j) {
      const auto& e = entries[j];
      if (e.sign != 1 && e.sign != -1)
        throw MalformedInstanceError("tuple sign must be +1 or -1");
      if (e.index < 1 || e.index > n)
        throw MalformedInstanceError("tuple index " + std::to_string(e.index) +
                                     " out of range [1," + std::to_string(n) + "]");
      for (std::size_t k = 0; k < j; ++k)
        if (entries[k].index == e.index)
          throw MalformedInstanceError("duplicate index " + std::to_string(e.index) +
                                       " in tuple");
    }
  }
};

enum class PredicateKind { SatK, TKM, NotTKM, TruthTable };

// A fixed predicate over +/-1 vectors:
//   SatK(K)      -- K-wise disjunction (1 iff some entry is +1)
//   TKM(K,M)     -- conjunction of M disjoint K-wise disjunctions
//   NotTKM(K,M)  -- its complement
//   TruthTable   -- explicit table; input z indexes bit sum_i [z_i==+1] << i
struct PredicateSpec {
  PredicateKind kind = PredicateKind::SatK;
  int k = 1;
  int m = 1;
  std::vector<bool> table;  // TruthTable only, size 2^arity

  static PredicateSpec sat(int k) {
    if (k < 1) throw MalformedInstanceError("SatK needs K >= 1");
    return PredicateSpec{PredicateKind::SatK, k, 1, {}};
  }
  static PredicateSpec tkm(int k, int m) {
    if (k < 1 || m < 1) throw MalformedInstanceError("TKM needs K,M >= 1");
    return PredicateSpec{PredicateKind::TKM, k, m, {}};
  }
  static PredicateSpec not_tkm(int k, int m) {
    if (k < 1 || m < 1) throw MalformedInstanceError("NotTKM needs K,M >= 1");
    return PredicateSpec{PredicateKind::NotTKM, k, m, {}};
  }
  static PredicateSpec truth_table(int arity, std::vector<bool> bits) {
    if (arity < 1 || bits.size() != (std::size_t(1) << arity))
      throw MalformedInstanceError("truth table must have exactly 2^arity bits");
    return PredicateSpec{PredicateKind::TruthTable, arity, 1, std::move(bits)};
  }

  int arity() const {
    switch (kind) {
      case PredicateKind::SatK: return k;
      case PredicateKind::TKM:
      case PredicateKind::NotTKM: return k * m;
      case PredicateKind::TruthTable: return k;
    }
    return 0;
  }

  PredicateSpec complement() const {
    switch (kind) {
      case PredicateKind::SatK: return not_tkm(k, 1);
      case PredicateKind::TKM: return not_tkm(k, m);
      case PredicateKind::NotTKM: return tkm(k, m);
      case PredicateKind::TruthTable: {
        std::vector<bool> flipped(table.size());
        for (std::size_t i = 0; i < table.size(); ++i) flipped[i] = !table[i];
        return truth_table(k, std::move(flipped));
      }
    }
    return *this;
  }

  bool operator==(const PredicateSpec&) const = default;
};

struct Constraint {
  PredicateSpec predicate;
  SignedTuple tuple;
  bool operator==(const Constraint&) const = default;
};

struct Formula {
  int n = 0;  // variable count
  std::vector<Constraint> constraints;

  int size() const { return static_cast<int>(constraints.size()); }

  void validate() const {
    for (const auto& c : constraints) {
      if (c.tuple.arity() != c.predicate.arity())
        throw ArityMismatchError("constraint tuple arity " +
                                 std::to_string(c.tuple.arity()) +
                                 " != predicate arity " +
                                 std::to_string(c.predicate.arity()));
      c.tuple.validate(n);
    }
  }

  bool operator==(const Formula&) const = default;
};

struct Assignment {
  std::vector<Sign> values;  // values[i-1] is variable i

  int n() const { return static_cast<int>(values.size()); }
  Sign at(int index) const { return values[index - 1]; }
  bool operator==(const Assignment&) const = default;
};

// ---------------------------------------------------------------------------
// Evaluation semantics
// ---------------------------------------------------------------------------

// U_x(psi): entry j is sign_j * psi[index_j].
inline void apply_tuple_into(const SignedTuple& tuple, const Assignment& psi,
                             std::vector<Sign>& out) {
  out.resize(tuple.entries.size());
  for (std::size_t j = 0; j < tuple.entries.size(); ++j) {
    const auto& e = tuple.entries[j];
    if (e.index < 1 || e.index > psi.n())
      throw MalformedInstanceError("tuple index " + std::to_string(e.index) +
                                   " out of range for assignment of length " +
                                   std::to_string(psi.n()));
    out[j] = static_cast<Sign>(e.sign * psi.at(e.index));
  }
}

inline std::vector<Sign> apply_tuple(const SignedTuple& tuple, const Assignment& psi) {
  std::vector<Sign> out;
  apply_tuple_into(tuple, psi, out);
  return out;
}

inline bool eval_predicate(const PredicateSpec& p, std::span<const Sign> z) {
  if (static_cast<int>(z.size()) != p.arity())
    throw ArityMismatchError("predicate arity " + std::to_string(p.arity()) +
                             " applied to vector of length " +
                             std::to_string(z.size()));
  switch (p.kind) {
    case PredicateKind::SatK: {
      for (Sign s : z)
        if (s == 1) return true;
      return false;
    }
    case PredicateKind::TKM:
    case PredicateKind::NotTKM: {
      bool all_blocks = true;
      for (int b = 0; b < p.m && all_blocks; ++b) {
        bool block_has_true = false;
        for (int j = 0; j < p.k; ++j)
          if (z[std::size_t(b) * p.k + j] == 1) {
            block_has_true = true;
            break;
          }
        all_blocks = block_has_true;
      }
      return p.kind == PredicateKind::TKM ? all_blocks : !all_blocks;
    }
    case PredicateKind::TruthTable: {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i] == 1) idx |= std::size_t(1) << i;
      return p.table[idx];
    }
  }
  return false;
}

inline bool eval_constraint(const Constraint& c, const Assignment& psi) {
  static thread_local std::vector<Sign> scratch;
  apply_tuple_into(c.tuple, psi, scratch);
  return eval_predicate(c.predicate, scratch);
}

inline std::size_t satisfied_count(const Formula& j, const Assignment& psi) {
  std::size_t count = 0;
  std::vector<Sign> scratch;
  for (const auto& c : j.constraints) {
    apply_tuple_into(c.tuple, psi, scratch);
    if (eval_predicate(c.predicate, scratch)) ++count;
  }
  return count;
}

inline bool satisfies(const Formula& j, const Assignment& psi) {
  return satisfied_count(j, psi) == std::size_t(j.size());
}

// Fraction of constraints of j satisfied by psi. Empty formula counts as
// fully satisfied.
inline Fraction value_under(const Formula& j, const Assignment& psi) {
  if (j.size() == 0) return Fraction(1);
  return Fraction(BigInt(satisfied_count(j, psi)), BigInt(j.size()));
}

// ---------------------------------------------------------------------------
// Brute-force oracles (exponential in n; refuse past the cap)
// ---------------------------------------------------------------------------

inline constexpr int kBruteForceCap = 24;

struct BruteForceResult {
  Fraction value;
  Assignment witness;
};

namespace detail {
inline void assignment_from_bits(std::uint64_t bits, int n, Assignment& psi) {
  psi.values.resize(n);
  for (int i = 0; i < n; ++i)
    psi.values[i] = (bits >> i) & 1 ? Sign(1) : Sign(-1);
}
}  // namespace detail

// Exact VAL(j) with a maximizing witness, by enumerating all 2^n assignments.
inline BruteForceResult brute_force_val(const Formula& j, int cap = kBruteForceCap) {
  if (j.n > cap)
    throw CapExceededError("brute force refused: n=" + std::to_string(j.n) +
                           " exceeds cap " + std::to_string(cap));
  j.validate();
  Assignment psi, best;
  std::size_t best_count = 0;
  bool have_best = false;
  const std::uint64_t total = std::uint64_t(1) << j.n;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    detail::assignment_from_bits(bits, j.n, psi);
    const std::size_t count = satisfied_count(j, psi);
    if (!have_best || count > best_count) {
      best_count = count;
      best = psi;
      have_best = true;
      if (count == std::size_t(j.size())) break;
    }
  }
  Fraction value = j.size() == 0 ? Fraction(1)
                                 : Fraction(BigInt(best_count), BigInt(j.size()));
  return BruteForceResult{value, best};
}

inline std::optional<Assignment> brute_force_satisfiable(const Formula& j,
                                                         int cap = kBruteForceCap) {
  BruteForceResult r = brute_force_val(j, cap);
  if (r.value == Fraction(1)) return r.witness;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Generators. Draw order is part of the contract:
//   random_tuple: partial Fisher-Yates for the indices (arity draws of
//     next_below), then one coin per position for the signs;
//   random_formula: constraints in order, each one random_tuple;
//   random_mixed_formula: per constraint, polarity coin first, then tuple;
//   planted_formula: documented per predicate kind below.
// ---------------------------------------------------------------------------

// Uniform ordered selection of `arity` distinct indices from [1, n] by
// partial Fisher-Yates: one next_below draw per position.
inline void random_index_selection(int n, int arity, Rng& rng, SignedTuple& t) {
  if (n < arity)
    throw MalformedInstanceError("cannot draw " + std::to_string(arity) +
                                 " distinct indices from n=" + std::to_string(n));
  static thread_local std::vector<int> pool;
  pool.resize(n);
  for (int i = 0; i < n; ++i) pool[i] = i + 1;
  t.entries.resize(arity);
  for (int j = 0; j < arity; ++j) {
    const std::uint64_t pick = j + rng.next_below(std::uint64_t(n - j));
    std::swap(pool[j], pool[pick]);
    t.entries[j].index = pool[j];
  }
}

inline SignedTuple random_tuple(int n, int arity, Rng& rng) {
  SignedTuple t;
  random_index_selection(n, arity, rng, t);
  for (int j = 0; j < arity; ++j)
    t.entries[j].sign = rng.coin() ? Sign(1) : Sign(-1);
  return t;
}

inline Formula random_formula(int n, int m, const PredicateSpec& p, Rng& rng) {
  if (n < p.arity())
    throw MalformedInstanceError("n=" + std::to_string(n) + " below predicate arity " +
                                 std::to_string(p.arity()));
  Formula f;
  f.n = n;
  f.constraints.reserve(m);
  for (int i = 0; i < m; ++i)
    f.constraints.push_back(Constraint{p, random_tuple(n, p.arity(), rng)});
  return f;
}

// Each constraint is P with probability 1/2 and complement(P) otherwise,
// with a fresh uniform tuple either way.
inline Formula random_mixed_formula(int n, int m, const PredicateSpec& p, Rng& rng) {
  if (n < p.arity())
    throw MalformedInstanceError("n=" + std::to_string(n) + " below predicate arity " +
                                 std::to_string(p.arity()));
  const PredicateSpec neg = p.complement();
  Formula f;
  f.n = n;
  f.constraints.reserve(m);
  for (int i = 0; i < m; ++i) {
    const bool negate = rng.coin();
    SignedTuple t = random_tuple(n, p.arity(), rng);
    f.constraints.push_back(Constraint{negate ? neg : p, std::move(t)});
  }
  return f;
}

inline constexpr std::uint64_t kPlantAttemptCap = 1000000;

struct PlantStats {
  std::uint64_t attempts = 0;  // candidate draws (whole constraints or sign blocks)
  std::uint64_t accepted = 0;
};

// Uniform constraint conditioned on being satisfied by psi.
//
// TKM(K,M): indices drawn once (their conditional law is unchanged because
// the satisfying-sign count is the same for every index choice), then each
// K-block's signs are redrawn until the block holds. Exact and fast for any
// M. All other kinds: whole-constraint rejection up to kPlantAttemptCap.
inline Formula planted_formula(int n, int m, const PredicateSpec& p,
                               const Assignment& psi, Rng& rng,
                               PlantStats* stats = nullptr) {
  if (n < p.arity())
    throw MalformedInstanceError("n=" + std::to_string(n) + " below predicate arity " +
                                 std::to_string(p.arity()));
  if (psi.n() != n)
    throw MalformedInstanceError("assignment length != n");
  Formula f;
  f.n = n;
  f.constraints.reserve(m);
  std::vector<Sign> scratch;
  for (int i = 0; i < m; ++i) {
    if (p.kind == PredicateKind::TKM) {
      SignedTuple t;
      random_index_selection(n, p.arity(), rng, t);
      for (int b = 0; b < p.m; ++b) {
        for (std::uint64_t attempt = 0;; ++attempt) {
          if (attempt >= kPlantAttemptCap)
            throw PlantingError("planted block rejection exhausted");
          if (stats) ++stats->attempts;
          bool block_ok = false;
          for (int j = 0; j < p.k; ++j) {
            auto& e = t.entries[std::size_t(b) * p.k + j];
            e.sign = rng.coin() ? Sign(1) : Sign(-1);
            if (e.sign * psi.at(e.index) == 1) block_ok = true;
          }
          if (block_ok) {
            if (stats) ++stats->accepted;
            break;
          }
        }
      }
      f.constraints.push_back(Constraint{p, std::move(t)});
    } else {
      Constraint c{p, {}};
      std::uint64_t attempt = 0;
      for (;; ++attempt) {
        if (attempt >= kPlantAttemptCap)
          throw PlantingError("planted constraint rejection exhausted after " +
                              std::to_string(kPlantAttemptCap) + " attempts");
        if (stats) ++stats->attempts;
        c.tuple = random_tuple(n, p.arity(), rng);
        apply_tuple_into(c.tuple, psi, scratch);
        if (eval_predicate(p, scratch)) {
          if (stats) ++stats->accepted;
          break;
        }
      }
      f.constraints.push_back(std::move(c));
    }
  }
  return f;
}

// Satisfiable-by-construction (P, notP) instance: per constraint a polarity
// coin (drawn first), then a tuple conditioned on psi satisfying the chosen
// polarity. The satisfiable side of the mixed-CSP distribution.
inline Formula planted_mixed_formula(int n, int m, const PredicateSpec& p,
                                     const Assignment& psi, Rng& rng,
                                     PlantStats* stats = nullptr) {
  const PredicateSpec neg = p.complement();
  Formula f;
  f.n = n;
  f.constraints.reserve(m);
  for (int i = 0; i < m; ++i) {
    const bool negate = rng.coin();
    Formula one = planted_formula(n, 1, negate ? neg : p, psi, rng, stats);
    f.constraints.push_back(std::move(one.constraints.front()));
  }
  return f;
}

inline Assignment random_assignment(int n, Rng& rng) {
  Assignment psi;
  psi.values.resize(n);
  for (int i = 0; i < n; ++i) psi.values[i] = rng.coin() ? Sign(1) : Sign(-1);
  return psi;
}

}  // namespace csplearn
