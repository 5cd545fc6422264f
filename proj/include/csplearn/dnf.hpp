#pragma once

#include <span>
#include <string>
#include <vector>

#include "csplearn/csp.hpp"
#include "csplearn/error.hpp"
#include "csplearn/predicates.hpp"

namespace csplearn {

// Literal over boolean-cube variables (1-based). True iff point[var] == sign.
struct Literal {
  Sign sign;
  int var;
  bool operator==(const Literal&) const = default;
};

// Disjunction of conjunctions. Conventions: no clauses -> constant 0; a
// clause with no literals -> constant 1 (empty conjunction).
struct DnfFormula {
  int num_vars = 0;
  std::vector<std::vector<Literal>> clauses;

  int clause_count() const { return static_cast<int>(clauses.size()); }
  // size in the literal-count sense
  std::size_t literal_size() const {
    std::size_t s = 0;
    for (const auto& c : clauses) s += c.size();
    return s;
  }
  void validate() const {
    for (const auto& clause : clauses)
      for (std::size_t i = 0; i < clause.size(); ++i) {
        const auto& lit = clause[i];
        if (lit.var < 1 || lit.var > num_vars)
          throw MalformedInstanceError("DNF literal variable out of range");
        if (lit.sign != 1 && lit.sign != -1)
          throw MalformedInstanceError("DNF literal sign must be +1 or -1");
        for (std::size_t j = 0; j < i; ++j)
          if (clause[j] == lit)
            throw MalformedInstanceError("duplicate literal in DNF clause");
      }
  }
  bool operator==(const DnfFormula&) const = default;
};

// Conjunction of disjunctions, same literal conventions. No clauses ->
// constant 1; a clause with no literals -> constant 0 (empty disjunction).
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<Literal>> clauses;
  bool operator==(const CnfFormula&) const = default;
};

inline bool eval_dnf(const DnfFormula& f, std::span<const Sign> point) {
  if (static_cast<int>(point.size()) != f.num_vars)
    throw ArityMismatchError("DNF evaluated on point of wrong length");
  for (const auto& clause : f.clauses) {
    bool all = true;
    for (const auto& lit : clause)
      if (point[lit.var - 1] != lit.sign) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

inline bool eval_cnf(const CnfFormula& f, std::span<const Sign> point) {
  if (static_cast<int>(point.size()) != f.num_vars)
    throw ArityMismatchError("CNF evaluated on point of wrong length");
  for (const auto& clause : f.clauses) {
    bool any = false;
    for (const auto& lit : clause)
      if (point[lit.var - 1] == lit.sign) {
        any = true;
        break;
      }
    if (!any) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The tuple embedding g : X_{n,arity} -> {+/-1}^(2*arity*n)
// ---------------------------------------------------------------------------

// Cube coordinates are indexed by (j, b, i), j in [arity], b in {+1,-1},
// i in [n]. Linearization is j-major, then b (+1 before -1), then i; the
// result is a 1-based variable id. Fixed so emitted formulas are byte-stable.
inline int g_linear_index(int j, Sign b, int i, int n) {
  return ((j - 1) * 2 + (b == 1 ? 0 : 1)) * n + i;
}

// All coordinates +1 except, for each tuple position j, a single -1 at
// (j, -sign_j, index_j).
inline void g_map_into(const SignedTuple& x, int n, std::vector<Sign>& out) {
  const int arity = x.arity();
  out.assign(std::size_t(2) * arity * n, Sign(1));
  for (int j = 1; j <= arity; ++j) {
    const auto& e = x.entries[j - 1];
    out[g_linear_index(j, Sign(-e.sign), e.index, n) - 1] = Sign(-1);
  }
}

inline std::vector<Sign> g_map(const SignedTuple& x, int n) {
  x.validate(n);
  std::vector<Sign> out;
  g_map_into(x, n, out);
  return out;
}

// h_psi(x) = P(U_x(psi)): the truth value of the constraint (P, x) under psi.
inline bool h_psi_eval(const Assignment& psi, const PredicateSpec& p,
                       const SignedTuple& x) {
  static thread_local std::vector<Sign> scratch;
  apply_tuple_into(x, psi, scratch);
  return eval_predicate(p, scratch);
}

// Realize h_psi as a DNF over the embedded cube: clause t of the predicate
// DNF contributes one realized clause with a positive literal at
// (j_{t,r}, psi_i * b_{t,r}, i) for every predicate literal r and every
// i in [n]. Composed with g_map this evaluates exactly like h_psi.
inline DnfFormula realize_hypothesis(const Assignment& psi, const PredicateDnf& pd,
                                     int n) {
  if (psi.n() != n) throw MalformedInstanceError("assignment length != n");
  DnfFormula out;
  out.num_vars = 2 * pd.arity() * n;
  out.clauses.reserve(pd.clauses().size());
  for (const auto& pred_clause : pd.clauses()) {
    std::vector<Literal> realized;
    realized.reserve(pred_clause.size() * std::size_t(n));
    for (const auto& lit : pred_clause)
      for (int i = 1; i <= n; ++i) {
        const Sign b = Sign(psi.at(i) * lit.sign);
        realized.push_back(Literal{Sign(1), g_linear_index(lit.position, b, i, n)});
      }
    out.clauses.push_back(std::move(realized));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Halfspace bridge
// ---------------------------------------------------------------------------

// Accepts x iff <weights, x> >= threshold.
struct Halfspace {
  std::vector<int> weights;  // dense, length num_vars
  int threshold = 0;
  bool operator==(const Halfspace&) const = default;
};

inline bool halfspace_accepts(const Halfspace& h, std::span<const Sign> point) {
  if (point.size() != h.weights.size())
    throw ArityMismatchError("halfspace evaluated on point of wrong length");
  long long dot = 0;
  for (std::size_t i = 0; i < point.size(); ++i)
    dot += static_cast<long long>(h.weights[i]) * point[i];
  return dot >= h.threshold;
}

// De Morgan complement: not(OR of ANDs) = AND of ORs with flipped literals.
// Same clause structure, CNF semantics, complementary truth value.
inline CnfFormula complement_cnf(const DnfFormula& f) {
  CnfFormula out;
  out.num_vars = f.num_vars;
  out.clauses.reserve(f.clauses.size());
  for (const auto& clause : f.clauses) {
    std::vector<Literal> flipped;
    flipped.reserve(clause.size());
    for (const auto& lit : clause)
      flipped.push_back(Literal{Sign(-lit.sign), lit.var});
    out.clauses.push_back(std::move(flipped));
  }
  return out;
}

// One halfspace per CNF clause: a disjunction of k literals holds over
// {+/-1}^n iff sum of its signed variables >= 2 - k. The intersection of the
// returned halfspaces accepts exactly the satisfying set of the CNF.
inline std::vector<Halfspace> cnf_to_halfspaces(const CnfFormula& f) {
  std::vector<Halfspace> out;
  out.reserve(f.clauses.size());
  for (const auto& clause : f.clauses) {
    Halfspace h;
    h.weights.assign(f.num_vars, 0);
    for (const auto& lit : clause) h.weights[lit.var - 1] += lit.sign;
    h.threshold = 2 - static_cast<int>(clause.size());
    out.push_back(std::move(h));
  }
  return out;
}

inline bool halfspaces_accept(const std::vector<Halfspace>& hs,
                              std::span<const Sign> point) {
  for (const auto& h : hs)
    if (!halfspace_accepts(h, point)) return false;
  return true;
}

}  // namespace csplearn
