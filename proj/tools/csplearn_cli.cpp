// csplearn command-line toolkit: seeded generators, the reduction chain,
// DNF/automaton realizations, scatter checks and the learner-driven
// distinguisher, with machine-readable JSON reports.
//
// Exit codes: 0 success or affirmative verdict; 2 usage; 3 malformed input
// file; 4 runtime refusal (caps, degenerate parameters); 10 negative verdict
// (verification mismatch, "unrealizable" majority); 11 early "satisfiable"
// packing verdict. Codes 10+ are verdicts, 2-9 are errors.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "csplearn/csplearn.hpp"

using namespace csplearn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBadFile = 3;
constexpr int kExitRuntime = 4;
constexpr int kExitVerdictMismatch = 10;
constexpr int kExitVerdictSatisfiable = 11;

PredicateSpec parse_predicate(const std::string& text) {
  const auto read_pair = [&](std::size_t prefix_len) {
    const std::string rest = text.substr(prefix_len);
    const auto x = rest.find('x');
    if (x == std::string::npos)
      throw Error("predicate '" + text + "' needs the form <name>KxM");
    return std::pair<int, int>{std::stoi(rest.substr(0, x)),
                               std::stoi(rest.substr(x + 1))};
  };
  if (text.rfind("sat", 0) == 0) return PredicateSpec::sat(std::stoi(text.substr(3)));
  if (text.rfind("nottkm", 0) == 0) {
    const auto [k, m] = read_pair(6);
    return PredicateSpec::not_tkm(k, m);
  }
  if (text.rfind("tkm", 0) == 0) {
    const auto [k, m] = read_pair(3);
    return PredicateSpec::tkm(k, m);
  }
  throw Error("unknown predicate '" + text + "' (want satK, tkmKxM or nottkmKxM)");
}

struct ReportSink {
  std::string path;
  RunReport report;
  void flush() const {
    if (!path.empty()) write_text_file(path, report.to_string());
  }
};

void write_and_record(ReportSink& sink, const std::string& name,
                      const std::string& path, const std::string& content) {
  write_text_file(path, content);
  sink.report.add_output(name, content);
}

LabeledSample embed_tuple_sample(const TupleSample& ts) {
  LabeledSample s;
  s.examples.reserve(ts.examples.size());
  for (const auto& [tuple, label] : ts.examples) {
    LabeledExample ex;
    g_map_into(tuple, ts.n, ex.instance);
    ex.label = label;
    s.examples.push_back(std::move(ex));
  }
  return s;
}

Learner make_learner(const std::string& name, int k, int m) {
  if (name == "memorizer") return memorizer_learner();
  if (name == "constant") return constant_learner();
  if (name == "bf-dnf") return brute_force_dnf_learner(m);
  if (name == "bf-psi") return brute_force_assignment_learner(k, m);
  throw Error("unknown learner '" + name + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"Random K-SAT to DNF-sample reduction toolkit"};
  app.require_subcommand(1);

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a formula file");
  struct {
    int n = 8;
    int m = 0;
    std::string pred = "sat3";
    std::uint64_t seed = 0;
    std::string out;
    std::string psi_out;
    std::string mode = "random";
    std::string report;
  } gen_opt;
  gen->add_option("--n", gen_opt.n, "variable count")->required();
  gen->add_option("--m", gen_opt.m, "constraint count")->required();
  gen->add_option("--pred", gen_opt.pred, "satK | tkmKxM | nottkmKxM");
  gen->add_option("--seed", gen_opt.seed, "PRNG seed")->required();
  gen->add_option("--out", gen_opt.out, "output GCNF path")->required();
  gen->add_option("--mode", gen_opt.mode, "random | mixed | planted | planted-mixed")
      ->check(CLI::IsMember({"random", "mixed", "planted", "planted-mixed"}));
  gen->add_option("--psi-out", gen_opt.psi_out, "write the planted assignment here");
  gen->add_option("--json-report", gen_opt.report, "write a JSON run report");

  // ---- reduce -------------------------------------------------------------
  auto* reduce = app.add_subcommand("reduce", "reduction chain stages");
  reduce->require_subcommand(1);
  struct {
    std::string in, out, tuples_out, report, params_csv;
    int k = 0, m = 0, b = 0;
    std::uint64_t seed = 0;
    std::string policy = "strict";
  } red_opt;
  const auto add_io = [&](CLI::App* cmd, bool with_seed) {
    cmd->add_option("--in", red_opt.in, "input file")->required();
    cmd->add_option("--out", red_opt.out, "output file")->required();
    cmd->add_option("--json-report", red_opt.report, "write a JSON run report");
    if (with_seed) cmd->add_option("--seed", red_opt.seed, "PRNG seed")->required();
  };
  const auto add_kmb = [&](CLI::App* cmd) {
    cmd->add_option("--K", red_opt.k);
    cmd->add_option("--M", red_opt.m);
    cmd->add_option("--B", red_opt.b);
    cmd->add_option("--params", red_opt.params_csv, "shorthand K,M,B");
    cmd->add_option("--policy", red_opt.policy, "strict | truncate | repeat")
        ->check(CLI::IsMember({"strict", "truncate", "repeat"}));
  };
  auto* red_pack = reduce->add_subcommand("pack", "SAT_K formula -> T_{K,M} formula");
  add_io(red_pack, false);
  add_kmb(red_pack);
  auto* red_negate = reduce->add_subcommand("negate", "T formula -> (T,notT) formula");
  add_io(red_negate, true);
  auto* red_sample = reduce->add_subcommand("sample", "(T,notT) formula -> tuple sample");
  add_io(red_sample, false);
  auto* red_pipe = reduce->add_subcommand("pipeline",
                                          "SAT_K formula -> embedded labeled sample");
  add_io(red_pipe, true);
  add_kmb(red_pipe);
  red_pipe->add_option("--tuples-out", red_opt.tuples_out,
                       "also write the pre-embedding tuple sample");

  // ---- realize ------------------------------------------------------------
  auto* realize = app.add_subcommand("realize", "hypothesis and domain embeddings");
  realize->require_subcommand(1);
  struct {
    std::string psi, out, in, report;
    int k = 2, m = 2;
    bool complement = false;
  } real_opt;
  auto* real_hyp = realize->add_subcommand(
      "hypothesis", "emit the DNF realizing h_psi for notT_{K,M}");
  real_hyp->add_option("--psi", real_opt.psi, "assignment file")->required();
  real_hyp->add_option("--K", real_opt.k)->required();
  real_hyp->add_option("--M", real_opt.m)->required();
  real_hyp->add_option("--out", real_opt.out, "output DNF path")->required();
  real_hyp->add_option("--json-report", real_opt.report);
  auto* real_embed = realize->add_subcommand("embed",
                                             "tuple sample -> boolean-cube sample");
  real_embed->add_option("--tuples", real_opt.in, "tuple sample file")->required();
  real_embed->add_option("--out", real_opt.out, "output sample path")->required();
  real_embed->add_option("--json-report", real_opt.report);
  auto* real_hs = realize->add_subcommand(
      "halfspaces", "DNF -> halfspace intersection of the complement");
  real_hs->add_option("--dnf", real_opt.in, "DNF file")->required();
  real_hs->add_option("--out", real_opt.out, "output halfspace list")->required();
  real_hs->add_flag("--complement", real_opt.complement,
                    "acknowledge the label flip: the intersection accepts "
                    "exactly the complement of the DNF");
  real_hs->add_option("--json-report", real_opt.report);

  // ---- automata -----------------------------------------------------------
  auto* automata = app.add_subcommand("automata", "DNF-realizing automata");
  automata->require_subcommand(1);
  struct {
    std::string dnf, dfa, out, word, report;
    bool strict = false;
    int max_n = 16;
  } auto_opt;
  auto* auto_build = automata->add_subcommand("build", "DNF -> DFA over replicated input");
  auto_build->add_option("--dnf", auto_opt.dnf)->required();
  auto_build->add_option("--out", auto_opt.out)->required();
  auto_build->add_flag("--strict", auto_opt.strict,
                       "require clause count <= variable count");
  auto_build->add_option("--json-report", auto_opt.report);
  auto* auto_run = automata->add_subcommand("run", "run a DFA on a +/- word");
  auto_run->add_option("--dfa", auto_opt.dfa)->required();
  auto_run->add_option("--word", auto_opt.word, "word like +-++-")->required();
  auto_run->add_option("--json-report", auto_opt.report);
  auto* auto_verify = automata->add_subcommand(
      "verify", "exhaustively compare DFA on replicated input against the DNF");
  auto_verify->add_option("--dnf", auto_opt.dnf)->required();
  auto_verify->add_option("--dfa", auto_opt.dfa)->required();
  auto_verify->add_option("--max-n", auto_opt.max_n, "refusal cap on variable count");
  auto_verify->add_option("--json-report", auto_opt.report);

  // ---- scatter ------------------------------------------------------------
  auto* scatter = app.add_subcommand(
      "scatter", "empirical scatteredness check for uniform-label samples");
  struct {
    int m = 32;
    int len = 8;
    int hyps = 20;
    std::uint64_t trials = 100000;
    double beta = 0.25;
    std::uint64_t seed = 0;
    std::string report;
  } sc_opt;
  scatter->add_option("--m", sc_opt.m, "examples per sample");
  scatter->add_option("--len", sc_opt.len, "instance length");
  scatter->add_option("--hyps", sc_opt.hyps, "size of the mask-parity family");
  scatter->add_option("--trials", sc_opt.trials);
  scatter->add_option("--beta", sc_opt.beta);
  scatter->add_option("--seed", sc_opt.seed)->required();
  scatter->add_option("--json-report", sc_opt.report);

  // ---- distinguish ----------------------------------------------------------
  auto* distinguish = app.add_subcommand(
      "distinguish", "learner-driven realizable/unrealizable verdict on a sample");
  struct {
    std::string sample, learner = "bf-psi", report;
    double beta = 0.25;
    int trials = 1;
    int k = 2, m = 2;
    std::uint64_t seed = 0;
  } di_opt;
  distinguish->add_option("--sample", di_opt.sample)->required();
  distinguish->add_option("--learner", di_opt.learner,
                          "memorizer | constant | bf-dnf | bf-psi")
      ->check(CLI::IsMember({"memorizer", "constant", "bf-dnf", "bf-psi"}));
  distinguish->add_option("--beta", di_opt.beta, "error threshold");
  distinguish->add_option("--trials", di_opt.trials, "independent oracle runs");
  distinguish->add_option("--K", di_opt.k, "predicate shape for bf-psi");
  distinguish->add_option("--M", di_opt.m, "predicate shape for bf-psi");
  distinguish->add_option("--seed", di_opt.seed)->required();
  distinguish->add_option("--json-report", di_opt.report);

  // ---- verify ---------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "cross-check artifacts against each other");
  verify->require_subcommand(1);
  struct {
    std::string tuples, formula, sample, psi, dnf, dfa, report;
    int k = 2, m = 2, max_n = 16;
  } ver_opt;
  auto* ver_sf = verify->add_subcommand("sample-formula",
                                        "tuple sample matches its source formula");
  ver_sf->add_option("--tuples", ver_opt.tuples)->required();
  ver_sf->add_option("--formula", ver_opt.formula)->required();
  ver_sf->add_option("--json-report", ver_opt.report);
  auto* ver_real = verify->add_subcommand(
      "realization", "realized DNF of psi has zero error on a sample");
  ver_real->add_option("--sample", ver_opt.sample)->required();
  ver_real->add_option("--psi", ver_opt.psi)->required();
  ver_real->add_option("--K", ver_opt.k)->required();
  ver_real->add_option("--M", ver_opt.m)->required();
  ver_real->add_option("--json-report", ver_opt.report);
  auto* ver_auto = verify->add_subcommand("automaton", "DFA agrees with DNF everywhere");
  ver_auto->add_option("--dnf", ver_opt.dnf)->required();
  ver_auto->add_option("--dfa", ver_opt.dfa)->required();
  ver_auto->add_option("--max-n", ver_opt.max_n);
  ver_auto->add_option("--json-report", ver_opt.report);

  // ---- pipeline ---------------------------------------------------------------
  auto* pipeline = app.add_subcommand(
      "pipeline", "generate an instance and run the whole reduction chain");
  struct {
    int n = 8, m = 64, k = 2, mm = 2, b = 8;
    std::string mode = "random";
    std::uint64_t seed = 0;
    std::string out, psi_out, dnf_out, tuples_out, report;
  } pi_opt;
  pipeline->add_option("--n", pi_opt.n)->required();
  pipeline->add_option("--m", pi_opt.m)->required();
  pipeline->add_option("--K", pi_opt.k)->required();
  pipeline->add_option("--M", pi_opt.mm)->required();
  pipeline->add_option("--B", pi_opt.b)->required();
  pipeline->add_option("--mode", pi_opt.mode, "random | planted")
      ->check(CLI::IsMember({"random", "planted"}));
  pipeline->add_option("--seed", pi_opt.seed)->required();
  pipeline->add_option("--out", pi_opt.out, "output sample path")->required();
  pipeline->add_option("--psi-out", pi_opt.psi_out);
  pipeline->add_option("--dnf-out", pi_opt.dnf_out,
                       "realized DNF of the planted assignment");
  pipeline->add_option("--tuples-out", pi_opt.tuples_out);
  pipeline->add_option("--json-report", pi_opt.report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return kExitUsage;
  }

  // ---- execution ------------------------------------------------------------
  if (gen->parsed()) {
    ReportSink sink{gen_opt.report, {}};
    sink.report.stage = "gen";
    sink.report.seed = gen_opt.seed;
    sink.report.seeded = true;
    sink.report.parameters = {{"n", gen_opt.n},
                              {"m", gen_opt.m},
                              {"pred", gen_opt.pred},
                              {"mode", gen_opt.mode}};
    const PredicateSpec pred = parse_predicate(gen_opt.pred);
    Rng rng(gen_opt.seed);
    Formula f;
    Assignment psi;
    if (gen_opt.mode == "random") {
      f = random_formula(gen_opt.n, gen_opt.m, pred, rng);
    } else if (gen_opt.mode == "mixed") {
      f = random_mixed_formula(gen_opt.n, gen_opt.m, pred, rng);
    } else {
      psi = random_assignment(gen_opt.n, rng);
      f = gen_opt.mode == "planted"
              ? planted_formula(gen_opt.n, gen_opt.m, pred, psi, rng)
              : planted_mixed_formula(gen_opt.n, gen_opt.m, pred, psi, rng);
      if (!gen_opt.psi_out.empty())
        write_and_record(sink, "psi", gen_opt.psi_out, emit_assignment(psi));
    }
    write_and_record(sink, "formula", gen_opt.out, emit_gcnf(f));
    sink.report.statistics["constraints"] = f.size();
    sink.flush();
    return kExitOk;
  }

  if (reduce->parsed()) {
    ReportSink sink{red_opt.report, {}};
    const std::string in_text = read_text_file(red_opt.in);
    sink.report.add_input("in", in_text);
    const PadPolicy policy = red_opt.policy == "truncate" ? PadPolicy::Truncate
                             : red_opt.policy == "repeat" ? PadPolicy::Repeat
                                                          : PadPolicy::Strict;
    if (red_pack->parsed() || red_pipe->parsed()) {
      if (!red_opt.params_csv.empty()) {
        int k = 0, m = 0, b = 0;
        if (std::sscanf(red_opt.params_csv.c_str(), "%d,%d,%d", &k, &m, &b) != 3) {
          std::cerr << "--params wants K,M,B (e.g. 2,2,16)\n";
          return kExitUsage;
        }
        red_opt.k = k;
        red_opt.m = m;
        red_opt.b = b;
      }
      if (red_opt.k < 1 || red_opt.m < 1 || red_opt.b < 1) {
        std::cerr << "need --params K,M,B or all of --K --M --B\n";
        return kExitUsage;
      }
      const ReductionParams params{.k = red_opt.k, .m_blocks = red_opt.m,
                                   .block_size = red_opt.b};
      params.validate();
      sink.report.parameters = {{"K", red_opt.k}, {"M", red_opt.m}, {"B", red_opt.b},
                                {"policy", red_opt.policy}};
      if (!params.desk_feasible())
        std::cerr << "warning: M > floor(B/2K)/2^(K+1); greedy packing may "
                     "return the early verdict often\n";
      const Formula f = parse_gcnf(in_text);
      if (red_pack->parsed()) {
        sink.report.stage = "reduce-pack";
        const PackResult r = pack_blocks(f, params, policy);
        sink.report.verdicts["early_satisfiable"] = r.early_satisfiable;
        if (r.early_satisfiable) {
          sink.report.verdicts["failed_block"] = r.failed_block;
          sink.flush();
          std::cout << "satisfiable\n";
          return kExitVerdictSatisfiable;
        }
        write_and_record(sink, "out", red_opt.out, emit_gcnf(r.packed));
        sink.report.statistics["packed_constraints"] = r.packed.size();
        sink.flush();
        return kExitOk;
      }
      sink.report.stage = "reduce-pipeline";
      sink.report.seed = red_opt.seed;
      sink.report.seeded = true;
      Rng rng(red_opt.seed);
      const PipelineResult r = full_pipeline(f, params, rng, policy);
      sink.report.verdicts["early_satisfiable"] = r.early_satisfiable;
      if (r.early_satisfiable) {
        sink.report.verdicts["failed_block"] = r.failed_block;
        sink.flush();
        std::cout << "satisfiable\n";
        return kExitVerdictSatisfiable;
      }
      write_and_record(sink, "out", red_opt.out, emit_sample(r.sample));
      if (!red_opt.tuples_out.empty())
        write_and_record(sink, "tuples", red_opt.tuples_out,
                         emit_tuple_sample(r.tuples));
      sink.report.statistics["examples"] = r.sample.size();
      sink.flush();
      return kExitOk;
    }
    if (red_negate->parsed()) {
      sink.report.stage = "reduce-negate";
      sink.report.seed = red_opt.seed;
      sink.report.seeded = true;
      Rng rng(red_opt.seed);
      const Formula mixed = negate_half(parse_gcnf(in_text), rng);
      int negated = 0;
      for (const auto& c : mixed.constraints)
        if (c.predicate.kind == PredicateKind::NotTKM) ++negated;
      write_and_record(sink, "out", red_opt.out, emit_gcnf(mixed));
      sink.report.statistics["negated"] = negated;
      sink.flush();
      return kExitOk;
    }
    // reduce sample
    sink.report.stage = "reduce-sample";
    const TupleSample ts = formula_to_sample(parse_gcnf(in_text));
    write_and_record(sink, "out", red_opt.out, emit_tuple_sample(ts));
    sink.report.statistics["examples"] = ts.size();
    sink.flush();
    return kExitOk;
  }

  if (realize->parsed()) {
    ReportSink sink{real_opt.report, {}};
    if (real_hyp->parsed()) {
      sink.report.stage = "realize-hypothesis";
      const std::string psi_text = read_text_file(real_opt.psi);
      sink.report.add_input("psi", psi_text);
      const Assignment psi = parse_assignment(psi_text);
      const DnfFormula h =
          realize_hypothesis(psi, dnf_of_not_t(real_opt.k, real_opt.m), psi.n());
      write_and_record(sink, "out", real_opt.out, emit_dnf(h));
      sink.report.statistics = {{"clauses", h.clause_count()},
                                {"vars", h.num_vars}};
      sink.flush();
      return kExitOk;
    }
    if (real_embed->parsed()) {
      sink.report.stage = "realize-embed";
      const std::string in_text = read_text_file(real_opt.in);
      sink.report.add_input("tuples", in_text);
      const LabeledSample s = embed_tuple_sample(parse_tuple_sample(in_text));
      write_and_record(sink, "out", real_opt.out, emit_sample(s));
      sink.flush();
      return kExitOk;
    }
    // halfspaces
    sink.report.stage = "realize-halfspaces";
    if (!real_opt.complement)
      throw Error("a DNF is an intersection of halfspaces only up to label "
                  "complementation; pass --complement to accept the flip");
    const std::string in_text = read_text_file(real_opt.in);
    sink.report.add_input("dnf", in_text);
    const DnfFormula f = parse_dnf(in_text);
    const auto hs = cnf_to_halfspaces(complement_cnf(f));
    std::ostringstream out;
    out << "p halfspaces " << f.num_vars << ' ' << hs.size() << '\n';
    for (const auto& h : hs) {
      out << h.threshold;
      for (int v = 1; v <= f.num_vars; ++v)
        if (h.weights[std::size_t(v) - 1] != 0)
          out << ' ' << (h.weights[std::size_t(v) - 1] > 0 ? v : -v);
      out << '\n';
    }
    write_and_record(sink, "out", real_opt.out, out.str());
    sink.report.statistics["halfspaces"] = hs.size();
    sink.flush();
    return kExitOk;
  }

  if (automata->parsed()) {
    ReportSink sink{auto_opt.report, {}};
    if (auto_build->parsed()) {
      sink.report.stage = "automata-build";
      const std::string in_text = read_text_file(auto_opt.dnf);
      sink.report.add_input("dnf", in_text);
      const DnfFormula f = parse_dnf(in_text);
      const Dfa a = dnf_to_dfa(f, auto_opt.strict);
      write_and_record(sink, "out", auto_opt.out, emit_dfa(a));
      sink.report.statistics = {{"states", a.num_states},
                                {"bound", 2 * f.clause_count() * f.num_vars + 1}};
      sink.flush();
      return kExitOk;
    }
    if (auto_run->parsed()) {
      sink.report.stage = "automata-run";
      const Dfa a = parse_dfa(read_text_file(auto_opt.dfa));
      std::vector<Sign> word;
      for (char ch : auto_opt.word) {
        if (ch == '+') word.push_back(Sign(1));
        else if (ch == '-') word.push_back(Sign(-1));
        else throw Error("word characters must be '+' or '-'");
      }
      const bool accepted = run_dfa(a, word);
      sink.report.verdicts["accepted"] = accepted;
      sink.flush();
      std::cout << (accepted ? "accept" : "reject") << "\n";
      return kExitOk;
    }
    // automata verify
    sink.report.stage = "automata-verify";
    const std::string dnf_text = read_text_file(auto_opt.dnf);
    const std::string dfa_text = read_text_file(auto_opt.dfa);
    sink.report.add_input("dnf", dnf_text);
    sink.report.add_input("dfa", dfa_text);
    const DnfFormula f = parse_dnf(dnf_text);
    const Dfa a = parse_dfa(dfa_text);
    if (f.num_vars > auto_opt.max_n || f.num_vars > 24)
      throw CapExceededError("exhaustive check refused: " + std::to_string(f.num_vars) +
                             " variables exceeds cap " +
                             std::to_string(std::min(auto_opt.max_n, 24)));
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << f.num_vars); ++bits) {
      std::vector<Sign> x(std::size_t(f.num_vars), Sign(0));
      for (int i = 0; i < f.num_vars; ++i)
        x[std::size_t(i)] = (bits >> i) & 1 ? Sign(1) : Sign(-1);
      if (run_dfa(a, replicate_input(x, f.clause_count())) != eval_dnf(f, x)) {
        sink.report.verdicts = {{"match", false}, {"witness", bits}};
        sink.flush();
        std::cout << "mismatch at input " << bits << "\n";
        return kExitVerdictMismatch;
      }
    }
    sink.report.verdicts["match"] = true;
    sink.flush();
    std::cout << "match\n";
    return kExitOk;
  }

  if (scatter->parsed()) {
    ReportSink sink{sc_opt.report, {}};
    sink.report.stage = "scatter";
    sink.report.seed = sc_opt.seed;
    sink.report.seeded = true;
    sink.report.parameters = {{"m", sc_opt.m},       {"len", sc_opt.len},
                              {"hyps", sc_opt.hyps}, {"trials", sc_opt.trials},
                              {"beta", sc_opt.beta}};
    if (sc_opt.len < 1 || sc_opt.len > 63) throw Error("--len must be in [1,63]");
    const int len = sc_opt.len;
    const SampleFiller sampler = [m = sc_opt.m, len](Rng& rng, LabeledSample& s) {
      s.examples.resize(std::size_t(m));
      for (auto& ex : s.examples) {
        ex.instance.resize(std::size_t(len));
        for (auto& v : ex.instance) v = rng.coin() ? Sign(1) : Sign(-1);
        ex.label = std::uint8_t(rng.coin());
      }
    };
    std::vector<std::pair<std::string, Hypothesis>> hyps;
    for (int h = 0; h < sc_opt.hyps; ++h) {
      // documented family: parity over the bit pattern of (h+1)
      const std::uint64_t mask = std::uint64_t(h + 1) & ((1ull << len) - 1);
      hyps.emplace_back("parity-" + std::to_string(mask),
                        [mask](std::span<const Sign> x) {
                          int acc = 0;
                          for (std::size_t i = 0; i < x.size(); ++i)
                            if ((mask >> i) & 1 && x[i] == 1) acc ^= 1;
                          return acc != 0;
                        });
    }
    if (sc_opt.beta <= 0.0 || sc_opt.beta >= 0.5)
      throw Error("--beta must be in (0, 0.5) for a fair-coin tail bound");
    // Hoeffding in base 2: Pr[Bin(m,1/2) <= beta m] <= 2^(-2 m (1/2-beta)^2);
    // beta = 1/4 gives the familiar m/8 bits.
    ScatterParams params(2.0 * sc_opt.m * (0.5 - sc_opt.beta) * (0.5 - sc_opt.beta),
                         sc_opt.beta);
    const auto report =
        empirical_scatter_check(sampler, hyps, params, sc_opt.trials, sc_opt.seed);
    Json rows = Json::array();
    for (const auto& row : report.rows)
      rows.push_back({{"name", row.name},
                      {"hits", row.hits},
                      {"frequency", row.frequency},
                      {"bound", row.bound},
                      {"slack", row.slack},
                      {"flagged", row.flagged}});
    sink.report.statistics["rows"] = rows;
    sink.report.verdicts["any_flagged"] = report.any_flagged();
    sink.flush();
    std::cout << (report.any_flagged() ? "flagged" : "scattered") << "\n";
    return report.any_flagged() ? kExitVerdictMismatch : kExitOk;
  }

  if (distinguish->parsed()) {
    ReportSink sink{di_opt.report, {}};
    sink.report.stage = "distinguish";
    sink.report.seed = di_opt.seed;
    sink.report.seeded = true;
    sink.report.parameters = {{"learner", di_opt.learner}, {"beta", di_opt.beta},
                              {"trials", di_opt.trials},   {"K", di_opt.k},
                              {"M", di_opt.m}};
    const std::string in_text = read_text_file(di_opt.sample);
    sink.report.add_input("sample", in_text);
    const LabeledSample s = parse_sample(in_text);
    const Learner learner = make_learner(di_opt.learner, di_opt.k, di_opt.m);
    int realizable = 0;
    std::uint64_t drawn_total = 0;
    double err_sum = 0.0;
    for (int t = 0; t < di_opt.trials; ++t) {
      const auto out = distinguisher(s, learner, di_opt.beta,
                                     Rng::derive(di_opt.seed, std::uint64_t(t)));
      if (out.verdict == Verdict::Realizable) ++realizable;
      drawn_total += out.learner.examples_drawn;
      err_sum += out.empirical_err.to_double();
    }
    sink.report.statistics = {{"realizable_trials", realizable},
                              {"trials", di_opt.trials},
                              {"mean_error", err_sum / di_opt.trials},
                              {"examples_drawn", drawn_total}};
    const bool majority_realizable = 2 * realizable >= di_opt.trials;
    sink.report.verdicts["verdict"] =
        majority_realizable ? "realizable" : "unrealizable";
    sink.flush();
    std::cout << (majority_realizable ? "realizable" : "unrealizable") << "\n";
    return majority_realizable ? kExitOk : kExitVerdictMismatch;
  }

  if (verify->parsed()) {
    ReportSink sink{ver_opt.report, {}};
    if (ver_sf->parsed()) {
      sink.report.stage = "verify-sample-formula";
      const std::string ts_text = read_text_file(ver_opt.tuples);
      const std::string f_text = read_text_file(ver_opt.formula);
      sink.report.add_input("tuples", ts_text);
      sink.report.add_input("formula", f_text);
      const TupleSample got = parse_tuple_sample(ts_text);
      const TupleSample expect = formula_to_sample(parse_gcnf(f_text));
      if (got.size() != expect.size()) {
        sink.report.verdicts = {{"match", false},
                                {"diff", "example count " + std::to_string(got.size()) +
                                             " vs " + std::to_string(expect.size())}};
        sink.flush();
        std::cout << "mismatch: example count\n";
        return kExitVerdictMismatch;
      }
      for (std::size_t i = 0; i < got.size(); ++i)
        if (!(got.examples[i] == expect.examples[i])) {
          sink.report.verdicts = {{"match", false}, {"diff_example", i}};
          sink.flush();
          std::cout << "mismatch at example " << i << " (file line " << i + 2 << ")\n";
          return kExitVerdictMismatch;
        }
      sink.report.verdicts["match"] = true;
      sink.flush();
      std::cout << "match\n";
      return kExitOk;
    }
    if (ver_real->parsed()) {
      sink.report.stage = "verify-realization";
      const std::string s_text = read_text_file(ver_opt.sample);
      const std::string psi_text = read_text_file(ver_opt.psi);
      sink.report.add_input("sample", s_text);
      sink.report.add_input("psi", psi_text);
      const LabeledSample s = parse_sample(s_text);
      const Assignment psi = parse_assignment(psi_text);
      const DnfFormula h =
          realize_hypothesis(psi, dnf_of_not_t(ver_opt.k, ver_opt.m), psi.n());
      std::size_t mismatches = 0;
      std::ptrdiff_t first = -1;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (eval_dnf(h, s.examples[i].instance) != (s.examples[i].label != 0)) {
          ++mismatches;
          if (first < 0) first = std::ptrdiff_t(i);
        }
      sink.report.statistics = {{"examples", s.size()}, {"mismatches", mismatches}};
      sink.report.verdicts["zero_error"] = mismatches == 0;
      if (mismatches != 0) {
        sink.report.verdicts["first_mismatch"] = first;
        sink.flush();
        std::cout << "realization error " << mismatches << "/" << s.size()
                  << ", first at example " << first << " (file line " << first + 2
                  << ")\n";
        return kExitVerdictMismatch;
      }
      sink.flush();
      std::cout << "zero-error realization\n";
      return kExitOk;
    }
    // verify automaton
    sink.report.stage = "verify-automaton";
    const DnfFormula f = parse_dnf(read_text_file(ver_opt.dnf));
    const Dfa a = parse_dfa(read_text_file(ver_opt.dfa));
    if (f.num_vars > ver_opt.max_n || f.num_vars > 24)
      throw CapExceededError("exhaustive check refused past the enumeration cap");
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << f.num_vars); ++bits) {
      std::vector<Sign> x(std::size_t(f.num_vars), Sign(0));
      for (int i = 0; i < f.num_vars; ++i)
        x[std::size_t(i)] = (bits >> i) & 1 ? Sign(1) : Sign(-1);
      if (run_dfa(a, replicate_input(x, f.clause_count())) != eval_dnf(f, x)) {
        sink.report.verdicts = {{"match", false}, {"witness", bits}};
        sink.flush();
        std::cout << "mismatch at input " << bits << "\n";
        return kExitVerdictMismatch;
      }
    }
    sink.report.verdicts["match"] = true;
    sink.flush();
    std::cout << "match\n";
    return kExitOk;
  }

  if (pipeline->parsed()) {
    ReportSink sink{pi_opt.report, {}};
    sink.report.stage = "pipeline";
    sink.report.seed = pi_opt.seed;
    sink.report.seeded = true;
    sink.report.parameters = {{"n", pi_opt.n}, {"m", pi_opt.m}, {"K", pi_opt.k},
                              {"M", pi_opt.mm}, {"B", pi_opt.b}, {"mode", pi_opt.mode}};
    const ReductionParams params{.k = pi_opt.k, .m_blocks = pi_opt.mm,
                                 .block_size = pi_opt.b};
    params.validate();
    Rng rng(pi_opt.seed);
    Assignment psi;
    Formula f;
    if (pi_opt.mode == "planted") {
      psi = random_assignment(pi_opt.n, rng);
      f = planted_formula(pi_opt.n, pi_opt.m, PredicateSpec::sat(pi_opt.k), psi, rng);
    } else {
      f = random_formula(pi_opt.n, pi_opt.m, PredicateSpec::sat(pi_opt.k), rng);
    }
    const PipelineResult r = full_pipeline(f, params, rng);
    sink.report.verdicts["early_satisfiable"] = r.early_satisfiable;
    if (r.early_satisfiable) {
      sink.report.verdicts["failed_block"] = r.failed_block;
      sink.flush();
      std::cout << "satisfiable\n";
      return kExitVerdictSatisfiable;
    }
    write_and_record(sink, "sample", pi_opt.out, emit_sample(r.sample));
    if (!pi_opt.tuples_out.empty())
      write_and_record(sink, "tuples", pi_opt.tuples_out, emit_tuple_sample(r.tuples));
    if (pi_opt.mode == "planted") {
      sink.report.verdicts["planted_survives_negation"] = satisfies(r.mixed, psi);
      if (!pi_opt.psi_out.empty())
        write_and_record(sink, "psi", pi_opt.psi_out, emit_assignment(psi));
      if (!pi_opt.dnf_out.empty()) {
        const DnfFormula h =
            realize_hypothesis(psi, dnf_of_not_t(pi_opt.k, pi_opt.mm), pi_opt.n);
        write_and_record(sink, "dnf", pi_opt.dnf_out, emit_dnf(h));
      }
    }
    sink.report.statistics["examples"] = r.sample.size();
    sink.flush();
    std::cout << "sample " << r.sample.size() << " x " << r.sample.instance_length()
              << "\n";
    return kExitOk;
  }

  std::cerr << app.help();
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFile;
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
