#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "csplearn/dnf.hpp"
#include "csplearn/error.hpp"

namespace csplearn {

// Deterministic automaton over the two-symbol alphabet {-1, +1}.
// Symbol encoding in the transition table: -1 -> column 0, +1 -> column 1.
struct Dfa {
  int num_states = 0;
  int start = 0;
  std::vector<std::array<int, 2>> transitions;  // one row per state
  std::vector<bool> accept;
  int accepting_sink = -1;  // -1 when absent

  void validate() const {
    if (num_states <= 0) throw MalformedInstanceError("DFA needs at least one state");
    if (transitions.size() != std::size_t(num_states) ||
        accept.size() != std::size_t(num_states))
      throw MalformedInstanceError("DFA tables sized inconsistently");
    if (start < 0 || start >= num_states)
      throw MalformedInstanceError("DFA start state out of range");
    for (const auto& row : transitions)
      for (int target : row)
        if (target < 0 || target >= num_states)
          throw MalformedInstanceError("DFA transition target out of range");
    if (accepting_sink >= 0) {
      if (accepting_sink >= num_states)
        throw MalformedInstanceError("DFA sink out of range");
      if (!accept[accepting_sink] ||
          transitions[accepting_sink][0] != accepting_sink ||
          transitions[accepting_sink][1] != accepting_sink)
        throw MalformedInstanceError("DFA sink must be accepting and absorbing");
    }
  }
};

inline std::vector<Sign> replicate_input(std::span<const Sign> x, int copies) {
  if (copies < 0) throw MalformedInstanceError("negative copy count");
  std::vector<Sign> out;
  out.reserve(x.size() * std::size_t(copies));
  for (int c = 0; c < copies; ++c) out.insert(out.end(), x.begin(), x.end());
  return out;
}

inline bool run_dfa(const Dfa& a, std::span<const Sign> word) {
  int state = a.start;
  for (Sign s : word) {
    if (s != 1 && s != -1) throw MalformedInstanceError("DFA input symbol not +/-1");
    state = a.transitions[state][s == 1 ? 1 : 0];
  }
  return a.accept[state];
}

namespace detail {
// Per-variable sign requirement of one clause: 0 none, +1/-1 that sign,
// 2 contradictory (clause can never hold).
inline std::vector<int> clause_requirements(const std::vector<Literal>& clause, int n) {
  std::vector<int> req(n, 0);
  for (const auto& lit : clause) {
    int& r = req[lit.var - 1];
    if (r == 0) r = lit.sign;
    else if (r != lit.sign) r = 2;
  }
  return req;
}
}  // namespace detail

// Build the automaton that evaluates f on c replicated copies of the input:
// segment t tracks clause t with two states per variable position
// (clean / violated); a clean segment end jumps to the accepting sink; if
// every clause is violated the word is rejected. At most 2*c*n + 1 states.
//
// Strict mode caps the clause count at the variable count, which keeps the
// automaton within 2n^2+1 states. Violated segments still consume one symbol
// per position so segment boundaries stay aligned with the replicated copies.
inline Dfa dnf_to_dfa(const DnfFormula& f, bool strict = false) {
  f.validate();
  const int c = f.clause_count();
  const int n = f.num_vars;
  if (strict && c > n)
    throw MalformedInstanceError("strict mode requires clause count <= variable count");

  Dfa a;
  if (c == 0 || n == 0) {
    // Constant formula: no clauses -> reject everything; clauses over zero
    // variables are all empty -> accept everything.
    a.num_states = 1;
    a.start = 0;
    a.transitions = {{0, 0}};
    const bool accepts = c > 0;
    a.accept = {accepts};
    a.accepting_sink = accepts ? 0 : -1;
    a.validate();
    return a;
  }

  // State ids: sink = 0; scanning state (t, i, v) = about to read variable i
  // of segment t with violation flag v, id = ((t-1)*n + (i-1))*2 + v + 1.
  const auto state_id = [n](int t, int i, int v) {
    return ((t - 1) * n + (i - 1)) * 2 + v + 1;
  };
  a.num_states = 2 * c * n + 1;
  a.start = state_id(1, 1, 0);
  a.accepting_sink = 0;
  a.transitions.assign(std::size_t(a.num_states), {0, 0});
  a.accept.assign(std::size_t(a.num_states), false);
  a.accept[0] = true;

  std::vector<std::vector<int>> reqs;
  reqs.reserve(std::size_t(c));
  for (const auto& clause : f.clauses)
    reqs.push_back(detail::clause_requirements(clause, n));

  for (int t = 1; t <= c; ++t)
    for (int i = 1; i <= n; ++i)
      for (int v = 0; v <= 1; ++v) {
        const int from = state_id(t, i, v);
        for (int sym = 0; sym <= 1; ++sym) {
          const int sign = sym == 1 ? 1 : -1;
          const int r = reqs[std::size_t(t - 1)][std::size_t(i - 1)];
          const bool mismatch = r == 2 || (r != 0 && r != sign);
          const int violated = (v != 0 || mismatch) ? 1 : 0;
          int to;
          if (i < n) to = state_id(t, i + 1, violated);
          else if (violated == 0) to = 0;                       // clause held
          else if (t < c) to = state_id(t + 1, 1, 0);           // try next clause
          else to = state_id(1, 1, 1);                          // dead landing
          a.transitions[std::size_t(from)][std::size_t(sym)] = to;
        }
      }
  if (a.num_states > 2 * c * n + 1)
    throw MalformedInstanceError("DFA state bound violated");
  a.validate();
  return a;
}

}  // namespace csplearn
