#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "csplearn/automata.hpp"
#include "csplearn/csp.hpp"
#include "csplearn/dnf.hpp"
#include "csplearn/error.hpp"
#include "csplearn/sample.hpp"
#include "csplearn/stats.hpp"

namespace csplearn {

using Json = nlohmann::json;

// Line-oriented DIMACS-flavored text formats. Lines starting with 'c' are
// comments. Emitters write one canonical form (single spaces, \n endings) so
// emit(parse(emit(x))) is byte-identical to emit(x).

namespace ioutil {

struct Line {
  std::size_t number;  // 1-based
  std::string text;
};

// Non-comment lines with their original numbers. Blank lines are kept when
// keep_blank is set (the DNF body needs them: an empty line is an empty
// clause).
inline std::vector<Line> content_lines(const std::string& text, bool keep_blank = false) {
  std::vector<Line> out;
  std::size_t line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == 'c') continue;
    bool blank = true;
    for (char ch : line)
      if (!isspace(static_cast<unsigned char>(ch))) {
        blank = false;
        break;
      }
    if (blank && !keep_blank) continue;
    out.push_back(Line{line_no, line});
  }
  return out;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline long long parse_int(const std::string& tok, std::size_t line_no) {
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected integer, got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(line_no, "trailing junk in integer '" + tok + "'");
  return value;
}

}  // namespace ioutil

// ---------------------------------------------------------------------------
// GCNF: "p gcsp <n> <m> <K> <M>", then one constraint per line: a polarity
// tag (S plain SAT_K, T for T_{K,M}, N for its negation) followed by the
// tuple as signed 1-based variable indices.
// ---------------------------------------------------------------------------

inline Formula parse_gcnf(const std::string& text) {
  const auto lines = ioutil::content_lines(text);
  if (lines.empty()) throw ParseError(1, "missing gcsp header");
  const auto head = ioutil::tokens(lines[0].text);
  if (head.size() != 6 || head[0] != "p" || head[1] != "gcsp")
    throw ParseError(lines[0].number, "expected header 'p gcsp <n> <m> <K> <M>'");
  const long long n = ioutil::parse_int(head[2], lines[0].number);
  const long long m = ioutil::parse_int(head[3], lines[0].number);
  const long long k = ioutil::parse_int(head[4], lines[0].number);
  const long long mm = ioutil::parse_int(head[5], lines[0].number);
  if (n < 0 || m < 0) throw ParseError(lines[0].number, "negative n or m in header");
  if (m > 0 && (k < 1 || mm < 1))
    throw ParseError(lines[0].number, "header needs K >= 1 and M >= 1");
  if (lines.size() - 1 != std::size_t(m))
    throw ParseError(lines[0].number,
                     "header declares " + std::to_string(m) + " constraints, found " +
                         std::to_string(lines.size() - 1));

  Formula f;
  f.n = static_cast<int>(n);
  f.constraints.reserve(std::size_t(m));
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto toks = ioutil::tokens(lines[li].text);
    const std::size_t line_no = lines[li].number;
    if (toks.empty()) throw ParseError(line_no, "empty constraint line");
    PredicateSpec pred;
    if (toks[0] == "S") pred = PredicateSpec::sat(int(k));
    else if (toks[0] == "T") pred = PredicateSpec::tkm(int(k), int(mm));
    else if (toks[0] == "N") pred = PredicateSpec::not_tkm(int(k), int(mm));
    else throw ParseError(line_no, "unknown polarity tag '" + toks[0] + "'");
    const int arity = pred.arity();
    if (toks.size() - 1 != std::size_t(arity))
      throw ParseError(line_no, "expected " + std::to_string(arity) +
                                    " literals, found " + std::to_string(toks.size() - 1));
    SignedTuple tuple;
    tuple.entries.reserve(std::size_t(arity));
    for (int j = 1; j <= arity; ++j) {
      const long long lit = ioutil::parse_int(toks[std::size_t(j)], line_no);
      if (lit == 0) throw ParseError(line_no, "literal 0 is not allowed");
      const long long idx = lit > 0 ? lit : -lit;
      if (idx > n)
        throw ParseError(line_no, "index " + std::to_string(idx) + " out of range [1," +
                                      std::to_string(n) + "]");
      for (const auto& e : tuple.entries)
        if (e.index == int(idx))
          throw ParseError(line_no, "duplicate index " + std::to_string(idx) +
                                        " in tuple");
      tuple.entries.push_back(SignedEntry{lit > 0 ? Sign(1) : Sign(-1), int(idx)});
    }
    f.constraints.push_back(Constraint{std::move(pred), std::move(tuple)});
  }
  return f;
}

inline std::string emit_gcnf(const Formula& f) {
  int k = 0, m_blocks = 0;
  for (const auto& c : f.constraints) {
    int ck = c.predicate.k;
    int cm = c.predicate.kind == PredicateKind::SatK ? 1 : c.predicate.m;
    if (c.predicate.kind == PredicateKind::TruthTable)
      throw MalformedInstanceError("GCNF cannot carry truth-table predicates");
    if (k == 0) {
      k = ck;
      m_blocks = cm;
    } else if (ck != k || (c.predicate.kind != PredicateKind::SatK && cm != m_blocks)) {
      throw MalformedInstanceError("GCNF needs a single (K,M) shape per file");
    }
  }
  std::ostringstream out;
  out << "p gcsp " << f.n << ' ' << f.constraints.size() << ' ' << k << ' '
      << m_blocks << '\n';
  for (const auto& c : f.constraints) {
    switch (c.predicate.kind) {
      case PredicateKind::SatK: out << 'S'; break;
      case PredicateKind::TKM: out << 'T'; break;
      case PredicateKind::NotTKM: out << 'N'; break;
      case PredicateKind::TruthTable: break;  // rejected above
    }
    for (const auto& e : c.tuple.entries) out << ' ' << (e.sign < 0 ? -e.index : e.index);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Boolean-vector samples: "p sample <len> <m>", then "<label> <+/- string>".
// An empty (or comment-only) file is a valid empty sample.
// ---------------------------------------------------------------------------

inline LabeledSample parse_sample(const std::string& text) {
  const auto lines = ioutil::content_lines(text);
  LabeledSample s;
  if (lines.empty()) return s;
  const auto head = ioutil::tokens(lines[0].text);
  if (head.size() != 4 || head[0] != "p" || head[1] != "sample")
    throw ParseError(lines[0].number, "expected header 'p sample <len> <m>'");
  const long long len = ioutil::parse_int(head[2], lines[0].number);
  const long long m = ioutil::parse_int(head[3], lines[0].number);
  if (len < 0 || m < 0) throw ParseError(lines[0].number, "negative header field");
  if (lines.size() - 1 != std::size_t(m))
    throw ParseError(lines[0].number, "header declares " + std::to_string(m) +
                                          " examples, found " +
                                          std::to_string(lines.size() - 1));
  s.examples.reserve(std::size_t(m));
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto toks = ioutil::tokens(lines[li].text);
    const std::size_t line_no = lines[li].number;
    if (toks.size() != 2) throw ParseError(line_no, "expected '<label> <signs>'");
    const long long label = ioutil::parse_int(toks[0], line_no);
    if (label != 0 && label != 1)
      throw ParseError(line_no, "label outside {0,1}: " + toks[0]);
    if (toks[1].size() != std::size_t(len))
      throw ParseError(line_no, "instance length " + std::to_string(toks[1].size()) +
                                    " != declared " + std::to_string(len));
    LabeledExample ex;
    ex.label = std::uint8_t(label);
    ex.instance.reserve(std::size_t(len));
    for (char ch : toks[1]) {
      if (ch == '+') ex.instance.push_back(Sign(1));
      else if (ch == '-') ex.instance.push_back(Sign(-1));
      else throw ParseError(line_no, std::string("instance character '") + ch +
                                         "' is not '+' or '-'");
    }
    s.examples.push_back(std::move(ex));
  }
  return s;
}

inline std::string emit_sample(const LabeledSample& s) {
  s.validate();
  std::ostringstream out;
  out << "p sample " << s.instance_length() << ' ' << s.size() << '\n';
  for (const auto& ex : s.examples) {
    out << int(ex.label) << ' ';
    for (Sign v : ex.instance) out << (v == 1 ? '+' : '-');
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Tuple samples: "p tsample <n> <K> <M> <count>", then
// "<label> <signed indices>" with K*M literals per line.
// ---------------------------------------------------------------------------

inline TupleSample parse_tuple_sample(const std::string& text) {
  const auto lines = ioutil::content_lines(text);
  TupleSample s;
  if (lines.empty()) return s;
  const auto head = ioutil::tokens(lines[0].text);
  if (head.size() != 6 || head[0] != "p" || head[1] != "tsample")
    throw ParseError(lines[0].number, "expected header 'p tsample <n> <K> <M> <count>'");
  s.n = int(ioutil::parse_int(head[2], lines[0].number));
  s.k = int(ioutil::parse_int(head[3], lines[0].number));
  s.m = int(ioutil::parse_int(head[4], lines[0].number));
  const long long count = ioutil::parse_int(head[5], lines[0].number);
  if (count > 0 && (s.k < 1 || s.m < 1))
    throw ParseError(lines[0].number, "header needs K >= 1 and M >= 1");
  if (lines.size() - 1 != std::size_t(count))
    throw ParseError(lines[0].number, "header declares " + std::to_string(count) +
                                          " examples, found " +
                                          std::to_string(lines.size() - 1));
  const int arity = s.k * s.m;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto toks = ioutil::tokens(lines[li].text);
    const std::size_t line_no = lines[li].number;
    if (toks.size() != std::size_t(arity) + 1)
      throw ParseError(line_no, "expected label plus " + std::to_string(arity) +
                                    " literals");
    const long long label = ioutil::parse_int(toks[0], line_no);
    if (label != 0 && label != 1) throw ParseError(line_no, "label outside {0,1}");
    SignedTuple tuple;
    for (int j = 1; j <= arity; ++j) {
      const long long lit = ioutil::parse_int(toks[std::size_t(j)], line_no);
      if (lit == 0) throw ParseError(line_no, "literal 0 is not allowed");
      const long long idx = lit > 0 ? lit : -lit;
      if (idx > s.n) throw ParseError(line_no, "index out of range");
      for (const auto& e : tuple.entries)
        if (e.index == int(idx)) throw ParseError(line_no, "duplicate index in tuple");
      tuple.entries.push_back(SignedEntry{lit > 0 ? Sign(1) : Sign(-1), int(idx)});
    }
    s.examples.emplace_back(std::move(tuple), std::uint8_t(label));
  }
  return s;
}

inline std::string emit_tuple_sample(const TupleSample& s) {
  std::ostringstream out;
  out << "p tsample " << s.n << ' ' << s.k << ' ' << s.m << ' ' << s.examples.size()
      << '\n';
  for (const auto& [tuple, label] : s.examples) {
    out << int(label);
    for (const auto& e : tuple.entries) out << ' ' << (e.sign < 0 ? -e.index : e.index);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// DNF: "p dnf <vars> <clauses>", one clause per line of signed integers.
// An empty body line is the empty clause.
// ---------------------------------------------------------------------------

inline DnfFormula parse_dnf(const std::string& text) {
  const auto lines = ioutil::content_lines(text, /*keep_blank=*/true);
  std::size_t first = 0;
  while (first < lines.size() && ioutil::tokens(lines[first].text).empty()) ++first;
  if (first == lines.size()) throw ParseError(1, "missing dnf header");
  const auto head = ioutil::tokens(lines[first].text);
  if (head.size() != 4 || head[0] != "p" || head[1] != "dnf")
    throw ParseError(lines[first].number, "expected header 'p dnf <vars> <clauses>'");
  const long long vars = ioutil::parse_int(head[2], lines[first].number);
  const long long clauses = ioutil::parse_int(head[3], lines[first].number);
  if (vars < 0 || clauses < 0) throw ParseError(lines[first].number, "negative header field");
  if (lines.size() - first - 1 != std::size_t(clauses))
    throw ParseError(lines[first].number,
                     "header declares " + std::to_string(clauses) + " clauses, found " +
                         std::to_string(lines.size() - first - 1));
  DnfFormula f;
  f.num_vars = int(vars);
  for (std::size_t li = first + 1; li < lines.size(); ++li) {
    const auto toks = ioutil::tokens(lines[li].text);
    std::vector<Literal> clause;
    for (const auto& tok : toks) {
      const long long lit = ioutil::parse_int(tok, lines[li].number);
      if (lit == 0) throw ParseError(lines[li].number, "literal 0 is not allowed");
      const long long var = lit > 0 ? lit : -lit;
      if (var > vars) throw ParseError(lines[li].number, "variable out of range");
      clause.push_back(Literal{lit > 0 ? Sign(1) : Sign(-1), int(var)});
    }
    f.clauses.push_back(std::move(clause));
  }
  try {
    f.validate();
  } catch (const MalformedInstanceError& e) {
    throw ParseError(first + 1, e.what());
  }
  return f;
}

inline std::string emit_dnf(const DnfFormula& f) {
  f.validate();
  std::ostringstream out;
  out << "p dnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (std::size_t i = 0; i < clause.size(); ++i)
      out << (i ? " " : "") << (clause[i].sign < 0 ? -clause[i].var : clause[i].var);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// DFA: "p dfa <states> <start> <sink>" (sink -1 when absent), then one line
// per state: "<successor on -1> <successor on +1> <accept flag>".
// ---------------------------------------------------------------------------

inline Dfa parse_dfa(const std::string& text) {
  const auto lines = ioutil::content_lines(text);
  if (lines.empty()) throw ParseError(1, "missing dfa header");
  const auto head = ioutil::tokens(lines[0].text);
  if (head.size() != 5 || head[0] != "p" || head[1] != "dfa")
    throw ParseError(lines[0].number, "expected header 'p dfa <states> <start> <sink>'");
  Dfa a;
  a.num_states = int(ioutil::parse_int(head[2], lines[0].number));
  a.start = int(ioutil::parse_int(head[3], lines[0].number));
  a.accepting_sink = int(ioutil::parse_int(head[4], lines[0].number));
  if (lines.size() - 1 != std::size_t(a.num_states))
    throw ParseError(lines[0].number, "header declares " + std::to_string(a.num_states) +
                                          " states, found " +
                                          std::to_string(lines.size() - 1));
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto toks = ioutil::tokens(lines[li].text);
    if (toks.size() != 3)
      throw ParseError(lines[li].number, "expected '<succ-> <succ+> <accept>'");
    const int t0 = int(ioutil::parse_int(toks[0], lines[li].number));
    const int t1 = int(ioutil::parse_int(toks[1], lines[li].number));
    const long long acc = ioutil::parse_int(toks[2], lines[li].number);
    if (acc != 0 && acc != 1)
      throw ParseError(lines[li].number, "accept flag outside {0,1}");
    a.transitions.push_back({t0, t1});
    a.accept.push_back(acc == 1);
  }
  try {
    a.validate();
  } catch (const MalformedInstanceError& e) {
    throw ParseError(lines[0].number, e.what());
  }
  return a;
}

inline std::string emit_dfa(const Dfa& a) {
  a.validate();
  std::ostringstream out;
  out << "p dfa " << a.num_states << ' ' << a.start << ' ' << a.accepting_sink << '\n';
  for (int s = 0; s < a.num_states; ++s)
    out << a.transitions[std::size_t(s)][0] << ' ' << a.transitions[std::size_t(s)][1]
        << ' ' << (a.accept[std::size_t(s)] ? 1 : 0) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Assignments: "p psi <n>" then one +/- string line.
// ---------------------------------------------------------------------------

inline Assignment parse_assignment(const std::string& text) {
  const auto lines = ioutil::content_lines(text);
  if (lines.size() != 2) throw ParseError(1, "expected header and one value line");
  const auto head = ioutil::tokens(lines[0].text);
  if (head.size() != 3 || head[0] != "p" || head[1] != "psi")
    throw ParseError(lines[0].number, "expected header 'p psi <n>'");
  const long long n = ioutil::parse_int(head[2], lines[0].number);
  const auto toks = ioutil::tokens(lines[1].text);
  if (toks.size() != 1 || toks[0].size() != std::size_t(n))
    throw ParseError(lines[1].number, "expected one +/- string of length " +
                                          std::to_string(n));
  Assignment psi;
  for (char ch : toks[0]) {
    if (ch == '+') psi.values.push_back(Sign(1));
    else if (ch == '-') psi.values.push_back(Sign(-1));
    else throw ParseError(lines[1].number, "assignment character not '+' or '-'");
  }
  return psi;
}

inline std::string emit_assignment(const Assignment& psi) {
  std::ostringstream out;
  out << "p psi " << psi.n() << '\n';
  for (Sign v : psi.values) out << (v == 1 ? '+' : '-');
  out << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Files and reports
// ---------------------------------------------------------------------------

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path + "'");
}

inline std::string content_hash(const std::string& text) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(text.data(), text.size())));
  return std::string(buf);
}

// Machine-readable record of one pipeline stage. A pure function of
// (inputs, flags, seed): no clocks, no paths beyond what the caller passes.
struct RunReport {
  std::string stage;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  bool seeded = false;
  Json verdicts = Json::object();
  Json statistics = Json::object();
  Json input_hashes = Json::object();
  Json output_hashes = Json::object();

  void add_input(const std::string& name, const std::string& content) {
    input_hashes[name] = content_hash(content);
  }
  void add_output(const std::string& name, const std::string& content) {
    output_hashes[name] = content_hash(content);
  }

  Json to_json() const {
    Json j;
    j["stage"] = stage;
    j["parameters"] = parameters;
    if (seeded) j["seed"] = seed;
    j["verdicts"] = verdicts;
    j["statistics"] = statistics;
    j["inputs"] = input_hashes;
    j["outputs"] = output_hashes;
    return j;
  }
  std::string to_string() const { return to_json().dump(2) + "\n"; }
};

}  // namespace csplearn
