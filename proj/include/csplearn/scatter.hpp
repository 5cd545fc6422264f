#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csplearn/csp.hpp"
#include "csplearn/dnf.hpp"
#include "csplearn/error.hpp"
#include "csplearn/fraction.hpp"
#include "csplearn/predicates.hpp"
#include "csplearn/rng.hpp"
#include "csplearn/sample.hpp"

namespace csplearn {

using Hypothesis = std::function<bool(std::span<const Sign>)>;

inline Fraction empirical_error(const Hypothesis& h, const LabeledSample& s) {
  if (s.size() == 0) throw MalformedInstanceError("empirical error of empty sample");
  std::size_t mismatches = 0;
  for (const auto& ex : s.examples)
    if (h(ex.instance) != (ex.label != 0)) ++mismatches;
  return Fraction(BigInt(mismatches), BigInt(s.size()));
}

// ---------------------------------------------------------------------------
// Scatteredness
// ---------------------------------------------------------------------------

struct ScatterParams {
  double p_bits;  // every fixed hypothesis hits Err <= beta w.p. <= 2^-p
  double beta;

  ScatterParams(double p, double b) : p_bits(p), beta(b) {
    if (p <= 0.0 || b <= 0.0 || b >= 1.0)
      throw DomainError("scatter params need p > 0 and 0 < beta < 1");
  }
};

// Fair-coin labels make a length-m sample (m/8, 1/4)-scattered: the number
// of agreements of any fixed hypothesis is Binomial(m, 1/2), and Hoeffding
// gives Pr[Err <= 1/4] = Pr[Bin(m,1/2) <= m/4] <= exp(-2 m (1/4)^2) <= 2^-m/8.
inline ScatterParams hoeffding_scatter(std::uint64_t m) {
  if (m == 0) throw DomainError("hoeffding_scatter needs m >= 1");
  return ScatterParams(double(m) / 8.0, 0.25);
}

enum class TailMode { Kl, Quadratic };

// Upper tail of a mean of correlation-bounded indicators: the probability
// that the average of n indicators reaches beta when every subset of them
// is jointly 1 with probability <= alpha^|subset|.
//   Kl:        exp(-D(beta || alpha) * n), D the binary KL divergence (nats)
//   Quadratic: exp(-2 (beta - alpha)^2 * n)
// Kl never exceeds Quadratic (Pinsker).
inline double linial_luria_bound(double alpha, double beta, std::uint64_t n,
                                 TailMode mode) {
  if (!(alpha >= 0.0 && alpha < beta && beta <= 1.0))
    throw DomainError("linial_luria_bound needs 0 <= alpha < beta <= 1");
  if (mode == TailMode::Quadratic)
    return std::exp(-2.0 * (beta - alpha) * (beta - alpha) * double(n));
  if (alpha == 0.0) return 0.0;  // D(beta||0) = infinity for beta > 0
  double d = beta * std::log(beta / alpha);
  if (beta < 1.0) d += (1.0 - beta) * std::log((1.0 - beta) / (1.0 - alpha));
  return std::exp(-d * double(n));
}

// Empirical surrogate for the scatteredness definition: the definition
// quantifies over every labeling function, which no experiment can touch;
// this certifies a supplied finite hypothesis list instead (the quantity the
// distinguisher argument actually consumes).
struct ScatterCheckRow {
  std::string name;
  std::uint64_t hits = 0;    // trials with Err_S <= beta
  double frequency = 0.0;
  double bound = 0.0;        // 2^-p
  double slack = 0.0;        // 3 sigma of a Binomial(trials, bound) estimate
  bool flagged = false;      // frequency exceeded bound + slack
};

struct ScatterCheckReport {
  std::uint64_t trials = 0;
  double beta = 0.0;
  double p_bits = 0.0;
  std::vector<ScatterCheckRow> rows;
  bool any_flagged() const {
    for (const auto& r : rows)
      if (r.flagged) return true;
    return false;
  }
};

// sampler fills one sample per trial (buffer reused). Trials use seeds
// derived from `seed`, so results do not depend on evaluation order.
using SampleFiller = std::function<void(Rng&, LabeledSample&)>;

inline ScatterCheckReport empirical_scatter_check(
    const SampleFiller& sampler,
    const std::vector<std::pair<std::string, Hypothesis>>& hypotheses,
    const ScatterParams& params, std::uint64_t trials, std::uint64_t seed) {
  ScatterCheckReport report;
  report.trials = trials;
  report.beta = params.beta;
  report.p_bits = params.p_bits;
  report.rows.resize(hypotheses.size());
  for (std::size_t h = 0; h < hypotheses.size(); ++h)
    report.rows[h].name = hypotheses[h].first;

  LabeledSample s;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, t);
    sampler(rng, s);
    if (s.size() == 0) throw MalformedInstanceError("sampler produced empty sample");
    const double threshold = params.beta * double(s.size());
    for (std::size_t h = 0; h < hypotheses.size(); ++h) {
      std::size_t mismatches = 0;
      for (const auto& ex : s.examples)
        if (hypotheses[h].second(ex.instance) != (ex.label != 0)) ++mismatches;
      if (double(mismatches) <= threshold) ++report.rows[h].hits;
    }
  }
  const double bound = std::exp2(-params.p_bits);
  const double sigma = std::sqrt(bound * (1.0 - bound) / double(trials));
  for (auto& row : report.rows) {
    row.frequency = double(row.hits) / double(trials);
    row.bound = bound;
    row.slack = 3.0 * sigma;
    row.flagged = row.frequency > row.bound + row.slack;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Learners and the distinguisher
// ---------------------------------------------------------------------------

// Uniform-with-replacement example oracle over a fixed sample, with a draw
// meter. One next_below per draw.
class ExampleOracle {
 public:
  ExampleOracle(const LabeledSample& s, Rng rng) : s_(&s), rng_(rng) {
    if (s.size() == 0) throw MalformedInstanceError("oracle over empty sample");
  }
  const LabeledExample& draw() {
    ++draws_;
    return s_->examples[rng_.next_below(s_->size())];
  }
  std::uint64_t draws() const { return draws_; }
  std::size_t instance_length() const { return s_->instance_length(); }

 private:
  const LabeledSample* s_;
  Rng rng_;
  std::uint64_t draws_ = 0;
};

struct LearnerResult {
  Hypothesis hypothesis;
  std::string name;
  std::uint64_t examples_drawn = 0;
  std::uint64_t candidate_evaluations = 0;
};

// A learner consumes (oracle, epsilon, delta, instance length) and returns
// an evaluatable hypothesis plus its resource meter.
using Learner =
    std::function<LearnerResult(ExampleOracle&, double, double, std::size_t)>;

enum class Verdict { Realizable, Unrealizable };

inline const char* to_string(Verdict v) {
  return v == Verdict::Realizable ? "realizable" : "unrealizable";
}

struct DistinguishOutcome {
  Verdict verdict;
  Fraction empirical_err;
  LearnerResult learner;
};

// Run the learner on an oracle over s with parameters (beta, delta = 1/4),
// then threshold the returned hypothesis's empirical error on all of s.
// Learner failures propagate as exceptions, never as verdicts.
inline DistinguishOutcome distinguisher(const LabeledSample& s, const Learner& learner,
                                        double beta, Rng rng) {
  if (s.size() == 0) throw MalformedInstanceError("distinguisher needs a non-empty sample");
  if (beta <= 0.0 || beta >= 1.0) throw DomainError("beta must be in (0,1)");
  ExampleOracle oracle(s, rng);
  LearnerResult lr = learner(oracle, beta, 0.25, s.instance_length());
  lr.examples_drawn = oracle.draws();
  DistinguishOutcome out{Verdict::Unrealizable, empirical_error(lr.hypothesis, s),
                         std::move(lr)};
  if (out.empirical_err.to_double() <= beta) out.verdict = Verdict::Realizable;
  return out;
}

// --- reference learners ---

// Memorizes oracle draws into a lookup table; unseen instances get label 0.
// Stops once 64*distinct + 256 consecutive draws bring nothing new, which
// covers any finite sample up to a vanishing stopping-failure probability.
inline Learner memorizer_learner() {
  return [](ExampleOracle& oracle, double, double, std::size_t) {
    auto table = std::make_shared<std::map<std::vector<Sign>, std::uint8_t>>();
    std::uint64_t stale = 0;
    while (stale < 64 * table->size() + 256) {
      const LabeledExample& ex = oracle.draw();
      auto [it, inserted] = table->try_emplace(ex.instance, ex.label);
      (void)it;
      stale = inserted ? 0 : stale + 1;
    }
    LearnerResult r;
    r.name = "memorizer";
    r.examples_drawn = oracle.draws();
    r.hypothesis = [table](std::span<const Sign> x) {
      auto it = table->find(std::vector<Sign>(x.begin(), x.end()));
      return it != table->end() && it->second != 0;
    };
    return r;
  };
}

// Majority label over ceil(ln(2/delta) / (2 eps^2)) draws.
inline Learner constant_learner() {
  return [](ExampleOracle& oracle, double eps, double delta, std::size_t) {
    const std::uint64_t draws =
        std::uint64_t(std::ceil(std::log(2.0 / delta) / (2.0 * eps * eps)));
    std::uint64_t ones = 0, total = 0;
    for (std::uint64_t i = 0; i < std::max<std::uint64_t>(draws, 1); ++i) {
      ones += oracle.draw().label;
      ++total;
    }
    const bool majority = 2 * ones >= total;
    LearnerResult r;
    r.name = "constant";
    r.examples_drawn = oracle.draws();
    r.hypothesis = [majority](std::span<const Sign>) { return majority; };
    return r;
  };
}

namespace detail {
inline std::uint64_t pac_draw_count(double log_class_size, double eps, double delta) {
  return std::uint64_t(std::ceil((log_class_size + std::log(1.0 / delta)) / eps));
}
}  // namespace detail

// Proper learner for the realized class: searches all 2^nvars assignments
// psi and returns the realized hypothesis of the empirical minimizer on a
// PAC-sized draw. Instances must have length 2*K*M*nvars. Exponential;
// refuses past the cap.
inline Learner brute_force_assignment_learner(int k, int m, int max_n = 16) {
  return [k, m, max_n](ExampleOracle& oracle, double eps, double delta,
                       std::size_t instance_len) {
    const std::size_t arity2 = std::size_t(2) * k * m;
    if (instance_len == 0 || instance_len % arity2 != 0)
      throw MalformedInstanceError("instance length is not 2*K*M*n");
    const int nvars = int(instance_len / arity2);
    if (nvars > max_n)
      throw CapExceededError("brute-force assignment learner refused: n=" +
                             std::to_string(nvars) + " exceeds cap " +
                             std::to_string(max_n));
    const std::uint64_t draws = detail::pac_draw_count(
        double(nvars) * std::log(2.0), eps, delta);
    std::vector<LabeledExample> seen;
    seen.reserve(draws);
    for (std::uint64_t i = 0; i < draws; ++i) seen.push_back(oracle.draw());

    const PredicateDnf pd = dnf_of_not_t(k, m);
    LearnerResult r;
    r.name = "bf-psi";
    r.examples_drawn = oracle.draws();
    std::uint64_t best_mistakes = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t best_bits = 0;
    Assignment psi;
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << nvars); ++bits) {
      detail::assignment_from_bits(bits, nvars, psi);
      const DnfFormula h = realize_hypothesis(psi, pd, nvars);
      std::uint64_t mistakes = 0;
      for (const auto& ex : seen) {
        ++r.candidate_evaluations;
        if (eval_dnf(h, ex.instance) != (ex.label != 0)) ++mistakes;
      }
      if (mistakes < best_mistakes) {
        best_mistakes = mistakes;
        best_bits = bits;
        if (mistakes == 0) break;
      }
    }
    detail::assignment_from_bits(best_bits, nvars, psi);
    auto h = std::make_shared<DnfFormula>(realize_hypothesis(psi, pd, nvars));
    r.hypothesis = [h](std::span<const Sign> x) { return eval_dnf(*h, x); };
    return r;
  };
}

// Improper brute-force DNF learner: exhausts every DNF with at most
// max_clauses clauses over the instance variables and returns the empirical
// minimizer on a PAC-sized draw. The search space is (3^v + 1)^c; refuses
// when it exceeds the budget.
inline Learner brute_force_dnf_learner(int max_clauses,
                                       std::uint64_t budget = 2000000) {
  return [max_clauses, budget](ExampleOracle& oracle, double eps, double delta,
                               std::size_t instance_len) {
    const int v = int(instance_len);
    double space = 1.0;
    for (int c = 0; c < max_clauses; ++c) space *= std::pow(3.0, v) + 1.0;
    if (space > double(budget))
      throw CapExceededError("brute-force DNF learner refused: search space " +
                             std::to_string(space) + " exceeds budget");
    const std::uint64_t draws = detail::pac_draw_count(std::log(space), eps, delta);
    std::vector<LabeledExample> seen;
    seen.reserve(draws);
    for (std::uint64_t i = 0; i < draws; ++i) seen.push_back(oracle.draw());

    // Clause codes: 0 = absent; otherwise v trits (0 skip, 1 positive,
    // 2 negative), offset by one.
    std::uint64_t clause_space = 1;
    for (int i = 0; i < v; ++i) clause_space *= 3;
    const auto decode = [v](std::uint64_t code) {
      std::vector<Literal> clause;
      for (int i = 0; i < v; ++i) {
        const int trit = int(code % 3);
        code /= 3;
        if (trit == 1) clause.push_back(Literal{Sign(1), i + 1});
        else if (trit == 2) clause.push_back(Literal{Sign(-1), i + 1});
      }
      return clause;
    };

    LearnerResult r;
    r.name = "bf-dnf";
    r.examples_drawn = oracle.draws();
    std::vector<std::uint64_t> codes(std::size_t(max_clauses), 0);
    std::uint64_t best_mistakes = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> best_codes = codes;
    for (;;) {
      DnfFormula f;
      f.num_vars = v;
      for (std::uint64_t code : codes)
        if (code != 0) f.clauses.push_back(decode(code - 1));
      std::uint64_t mistakes = 0;
      for (const auto& ex : seen) {
        ++r.candidate_evaluations;
        if (eval_dnf(f, ex.instance) != (ex.label != 0)) ++mistakes;
      }
      if (mistakes < best_mistakes) {
        best_mistakes = mistakes;
        best_codes = codes;
      }
      // odometer over clause codes
      std::size_t pos = 0;
      while (pos < codes.size() && ++codes[pos] > clause_space) codes[pos++] = 0;
      if (pos == codes.size()) break;
    }
    auto f = std::make_shared<DnfFormula>();
    f->num_vars = v;
    for (std::uint64_t code : best_codes)
      if (code != 0) f->clauses.push_back(decode(code - 1));
    r.hypothesis = [f](std::span<const Sign> x) { return eval_dnf(*f, x); };
    return r;
  };
}

}  // namespace csplearn
