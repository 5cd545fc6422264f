#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csplearn/csp.hpp"
#include "csplearn/dnf.hpp"
#include "csplearn/error.hpp"
#include "csplearn/rng.hpp"
#include "csplearn/sample.hpp"

namespace csplearn {

// Parameters of the SAT_K -> T_{K,M} -> (T,notT) -> sample chain.
struct ReductionParams {
  int k = 2;           // literals per disjunction
  int m_blocks = 1;    // M: disjunctions per packed constraint
  int block_size = 1;  // B: source constraints per block
  int d = 0;           // informational sizing exponent for reports

  void validate() const {
    if (k < 1 || m_blocks < 1) throw MalformedInstanceError("need K >= 1, M >= 1");
    if (block_size < m_blocks)
      throw MalformedInstanceError("block size B must be >= M");
  }

  // Greedy packing is provably concentrated only when M is well below the
  // disjoint-tuple capacity of a block; outside this regime pack_blocks is
  // still correct but may return the early verdict often.
  bool desk_feasible() const {
    return m_blocks <= (block_size / (2 * k)) >> (k + 1);
  }
};

// What to do when the constraint count is not a multiple of B.
enum class PadPolicy {
  Strict,    // error out
  Truncate,  // drop the trailing remainder
  Repeat,    // pad the tail by cycling constraints from the start
};

struct PackResult {
  bool early_satisfiable = false;  // a block came up short: answer "satisfiable"
  int failed_block = -1;           // which one (0-based), when early_satisfiable
  Formula packed;                  // TKM(K,M) constraints, one per block
  // per packed constraint: 0-based source-constraint indices, selection order
  std::vector<std::vector<int>> provenance;
};

namespace detail {
inline bool tuples_share_variable(const SignedTuple& a, const SignedTuple& b) {
  for (const auto& ea : a.entries)
    for (const auto& eb : b.entries)
      if (ea.index == eb.index) return true;
  return false;
}
}  // namespace detail

// Greedy disjoint packing: per block of B consecutive constraints, scan in
// input order and add a constraint iff fewer than M are held and it shares
// no variable with any held one. A short block ends the run with the early
// "satisfiable" verdict; otherwise each block becomes one TKM(K,M)
// constraint whose tuple concatenates the held tuples in selection order.
inline PackResult pack_blocks(const Formula& j, const ReductionParams& params,
                              PadPolicy policy = PadPolicy::Strict) {
  params.validate();
  j.validate();
  for (const auto& c : j.constraints)
    if (c.predicate.kind != PredicateKind::SatK || c.predicate.k != params.k)
      throw ArityMismatchError("pack_blocks input must be all SatK(K) constraints");

  std::vector<int> order(j.constraints.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  const int b = params.block_size;
  if (order.size() % std::size_t(b) != 0) {
    switch (policy) {
      case PadPolicy::Strict:
        throw MalformedInstanceError(
            "constraint count " + std::to_string(order.size()) +
            " not divisible by block size " + std::to_string(b));
      case PadPolicy::Truncate:
        order.resize(order.size() - order.size() % std::size_t(b));
        break;
      case PadPolicy::Repeat: {
        std::size_t i = 0;
        while (order.size() % std::size_t(b) != 0) order.push_back(int(i++));
        break;
      }
    }
  }

  PackResult result;
  result.packed.n = j.n;
  const PredicateSpec packed_pred = PredicateSpec::tkm(params.k, params.m_blocks);
  for (std::size_t start = 0; start < order.size(); start += std::size_t(b)) {
    std::vector<int> held;
    for (int r = 0; r < b; ++r) {
      const int idx = order[start + std::size_t(r)];
      if (static_cast<int>(held.size()) >= params.m_blocks) break;
      const SignedTuple& cand = j.constraints[idx].tuple;
      bool disjoint = true;
      for (int h : held)
        if (detail::tuples_share_variable(cand, j.constraints[h].tuple)) {
          disjoint = false;
          break;
        }
      if (disjoint) held.push_back(idx);
    }
    if (static_cast<int>(held.size()) < params.m_blocks) {
      result.early_satisfiable = true;
      result.failed_block = static_cast<int>(start / std::size_t(b));
      result.packed.constraints.clear();
      result.provenance.clear();
      return result;
    }
    SignedTuple merged;
    merged.entries.reserve(std::size_t(params.k) * params.m_blocks);
    for (int h : held)
      for (const auto& e : j.constraints[h].tuple.entries) merged.entries.push_back(e);
    result.packed.constraints.push_back(Constraint{packed_pred, std::move(merged)});
    result.provenance.push_back(std::move(held));
  }
  return result;
}

// Per constraint: one fair coin; heads replaces it with a NotTKM constraint
// on a fresh uniform tuple, tails keeps it verbatim. Coin before tuple.
inline Formula negate_half(const Formula& j, Rng& rng) {
  Formula out;
  out.n = j.n;
  out.constraints.reserve(j.constraints.size());
  std::optional<PredicateSpec> expect;
  for (const auto& c : j.constraints) {
    if (c.predicate.kind != PredicateKind::TKM)
      throw ArityMismatchError("negate_half input must be all TKM constraints");
    if (!expect) expect = c.predicate;
    else if (!(c.predicate == *expect))
      throw ArityMismatchError("negate_half input mixes TKM shapes");
    if (rng.coin()) {
      const PredicateSpec neg = PredicateSpec::not_tkm(c.predicate.k, c.predicate.m);
      out.constraints.push_back(
          Constraint{neg, random_tuple(j.n, neg.arity(), rng)});
    } else {
      out.constraints.push_back(c);
    }
  }
  return out;
}

// Learning view of a (T,notT)-formula: NotTKM constraints become positive
// examples, TKM constraints negative ones. With this convention a sample
// from a psi-satisfiable formula is realized by h_psi for P = NotTKM(K,M).
inline TupleSample formula_to_sample(const Formula& j) {
  TupleSample s;
  s.n = j.n;
  for (const auto& c : j.constraints) {
    if (c.predicate.kind != PredicateKind::TKM &&
        c.predicate.kind != PredicateKind::NotTKM)
      throw ArityMismatchError("formula_to_sample needs TKM/NotTKM constraints");
    if (s.examples.empty()) {
      s.k = c.predicate.k;
      s.m = c.predicate.m;
    } else if (c.predicate.k != s.k || c.predicate.m != s.m) {
      throw ArityMismatchError("formula_to_sample input mixes (K,M) shapes");
    }
    const std::uint8_t label = c.predicate.kind == PredicateKind::NotTKM ? 1 : 0;
    s.examples.emplace_back(c.tuple, label);
  }
  return s;
}

// Inverse of formula_to_sample.
inline Formula sample_to_formula(const TupleSample& s) {
  Formula j;
  j.n = s.n;
  if (s.examples.empty()) return j;
  j.constraints.reserve(s.examples.size());
  const PredicateSpec pos = PredicateSpec::not_tkm(s.k, s.m);
  const PredicateSpec neg = PredicateSpec::tkm(s.k, s.m);
  for (const auto& [tuple, label] : s.examples) {
    if (label > 1) throw MalformedInstanceError("label outside {0,1}");
    j.constraints.push_back(Constraint{label == 1 ? pos : neg, tuple});
  }
  return j;
}

struct PipelineResult {
  bool early_satisfiable = false;
  int failed_block = -1;
  Formula packed;       // after pack_blocks
  Formula mixed;        // after negate_half
  TupleSample tuples;   // learning view
  LabeledSample sample; // after the cube embedding, instances of length 2*K*M*n
};

// pack_blocks -> negate_half -> formula_to_sample -> g_map on every instance.
inline PipelineResult full_pipeline(const Formula& j, const ReductionParams& params,
                                    Rng& rng, PadPolicy policy = PadPolicy::Strict) {
  PipelineResult r;
  PackResult packed = pack_blocks(j, params, policy);
  if (packed.early_satisfiable) {
    r.early_satisfiable = true;
    r.failed_block = packed.failed_block;
    return r;
  }
  r.packed = std::move(packed.packed);
  r.mixed = negate_half(r.packed, rng);
  r.tuples = formula_to_sample(r.mixed);
  r.sample.examples.reserve(r.tuples.examples.size());
  for (const auto& [tuple, label] : r.tuples.examples) {
    LabeledExample ex;
    g_map_into(tuple, j.n, ex.instance);
    ex.label = label;
    r.sample.examples.push_back(std::move(ex));
  }
  return r;
}

}  // namespace csplearn
