#include "pep/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "pep/errors.hpp"
#include "pep/format.hpp"
#include "pep/higman.hpp"
#include "pep/reductions.hpp"
#include "pep/solver.hpp"
#include "pep/universal.hpp"

namespace pep::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::size_t max_len = 12;
  std::uint64_t node_budget = 10'000'000;
  std::size_t k = 2;
  std::string format = "text";
  bool even_only = false;
  std::size_t max_steps = 4;
  std::size_t word_cap = 0;
  unsigned threads = 1;
};

struct Report {
  std::string command;
  json result;
  json witness = nullptr;
  json certificate = nullptr;
  json stats = json::object();
  std::string completeness = "bounded";
  /// Text mode prints this instead of the report (generated instances).
  std::string artifact;
  int code = answered;
};

json tokens(const Alphabet& a, WordView w) {
  json arr = json::array();
  for (Symbol s : w) arr.push_back(a.token(s));
  return arr;
}

json pump_json(const PepInstance& inst, const PumpCertificate& c) {
  json j;
  j["sigma"] = tokens(*inst.sigma(), c.sigma);
  j["a"] = c.a;
  j["b"] = c.b;
  j["color"] = c.color == Color::blue ? "blue" : "red";
  j["margin_a"] = tokens(*inst.gamma(), c.margin_a);
  j["margin_b"] = tokens(*inst.gamma(), c.margin_b);
  j["orientation"] = c.mirrored ? "mirrored" : "as_given";
  j["verified_k"] = json::array({1, 2, 3, 4});
  return j;
}

json loop_json(const PepInstance& inst, const LoopCertificate& c) {
  const Alphabet& a = *inst.sigma();
  json j;
  j["alpha"] = tokens(a, c.alpha);
  j["beta"] = tokens(a, c.beta);
  j["gamma"] = tokens(a, c.gamma);
  j["from_k"] = c.from_k;
  return j;
}

json stats_json(const SearchStats& s, std::size_t max_len) {
  json j;
  j["nodes"] = s.nodes;
  j["max_len"] = max_len;
  return j;
}

std::string derivation_text(const Alphabet& a, const Derivation& d) {
  std::string s;
  for (std::size_t i = 0; i < d.words.size(); ++i) s += (i ? " -> " : "") + a.format(d.words[i]);
  return s;
}

SearchOptions search_options(const Options& o) {
  SearchOptions s;
  s.max_len = o.max_len;
  s.node_budget = o.node_budget;
  s.threads = o.threads;
  return s;
}

template <class F>
auto with_path(const std::string& path, F parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                         e.what(),
                     e.line(), e.column());
  }
}

PepInstance load_instance(const std::string& path) {
  return with_path(path, [](const std::string& t) { return parse_instance(t); });
}
SemiThueSystem load_semithue(const std::string& path) {
  return with_path(path, [](const std::string& t) { return parse_semithue(t); });
}
PcpInstance load_pcp(const std::string& path) {
  return with_path(path, [](const std::string& t) { return parse_pcp(t); });
}

bool r_bounded(const PepInstance& inst, std::size_t max_len) {
  return compile(strip_short(inst.r().dfa.to_nfa(), max_len)).is_empty();
}

// ---------------------------------------------------------------------------
// Commands

Report cmd_check(const Options&, const std::string& file, const std::vector<std::string>& word) {
  PepInstance inst = load_instance(file);
  Word w = inst.sigma()->parse_word(word);
  Verdict v = check_solution(inst, w);
  Report r;
  static const char* kinds[] = {"solution", "fails_membership", "fails_embedding"};
  static const char* sides[] = {"none", "whole", "prefix", "suffix"};
  r.result = kinds[static_cast<int>(v.kind)];
  r.witness = tokens(*inst.sigma(), w);
  if (v.kind == Verdict::Kind::fails_embedding)
    r.certificate = json{{"side", sides[static_cast<int>(v.side)]}, {"split", v.split}};
  r.completeness = "certified";
  return r;
}

Report cmd_solve(const Options& o, const std::string& file) {
  PepInstance inst = load_instance(file);
  SolveResult s = solve(inst, search_options(o));
  Report r;
  r.stats = stats_json(s.stats, o.max_len);
  switch (s.kind) {
    case SolveResult::Kind::found:
      r.result = "found";
      r.witness = tokens(*inst.sigma(), *s.witness);
      r.certificate = json{{"verified", true}, {"least", "length-lex"}};
      r.completeness = "certified";
      break;
    case SolveResult::Kind::none_certified:
      r.result = "none_certified";
      r.certificate = json{{"bound", *s.bound}, {"justification", s.justification}};
      r.completeness = "certified";
      break;
    case SolveResult::Kind::none_up_to:
      r.result = "none_up_to";
      r.certificate = json{{"note", "no solution of length at most max_len; longer ones are not excluded"}};
      r.code = inconclusive;
      break;
  }
  return r;
}

Report cmd_count(const Options& o, const std::string& file, bool non_solutions) {
  PepInstance inst = load_instance(file);
  CountResult c = non_solutions ? count_non_solutions(inst, search_options(o))
                                : count(inst, search_options(o));
  Report r;
  static const char* kinds[] = {"infinite", "finite_at_least", "exact"};
  r.result = kinds[static_cast<int>(c.kind)];
  json cert;
  cert["count"] = c.count;
  if (c.certificate) cert["pump"] = pump_json(inst, *c.certificate);
  if (c.loop) cert["loop"] = loop_json(inst, *c.loop);
  if (!c.justification.empty()) cert["justification"] = c.justification;
  r.certificate = cert;
  r.stats = stats_json(c.stats, o.max_len);
  if (c.kind == CountResult::Kind::finite_at_least) {
    r.code = inconclusive;
  } else {
    r.completeness = "certified";
  }
  return r;
}

Report cmd_infinite(const Options& o, const std::string& file) {
  PepInstance inst = load_instance(file);
  SearchStats stats;
  auto cert = infinite_check(inst, search_options(o), &stats);
  Report r;
  r.stats = stats_json(stats, o.max_len);
  if (cert) {
    r.result = "infinite";
    r.witness = tokens(*inst.sigma(), cert->sigma);
    r.certificate = pump_json(inst, *cert);
    r.completeness = "certified";
  } else {
    r.result = "no_certificate";
    r.certificate = json{{"note", "no pump certificate among solutions up to max_len; this does not "
                                  "show that the solutions are finite"}};
    r.code = inconclusive;
  }
  return r;
}

Report cmd_minimize(const Options&, const std::string& file, const std::vector<std::string>& word) {
  PepInstance inst = load_instance(file);
  Word w = inst.sigma()->parse_word(word);
  Word m = minimize_solution(inst, w);
  Report r;
  r.result = "minimized";
  r.witness = tokens(*inst.sigma(), m);
  r.certificate = json{{"original_length", w.size()}, {"length", m.size()}, {"verified", true}};
  r.completeness = "certified";
  return r;
}

Report cmd_pump(const Options& o, const std::string& file, const std::vector<std::string>& word) {
  PepInstance inst = load_instance(file);
  Word w = inst.sigma()->parse_word(word);
  if (!check_solution(inst, w).ok()) throw PreconditionError("pump: the word is not a solution");
  auto colored = color_indices(inst, w);
  auto cert = find_pump_pair(colored);
  Report r;
  if (!cert) {
    r.result = "no_certificate";
    r.code = inconclusive;
    return r;
  }
  if (o.k == 0) throw PreconditionError("pump: --k must be at least 1");
  for (std::size_t k : {1, 2, 3, 4}) pump(inst, *cert, k);
  Word p = pump(inst, *cert, o.k);
  r.result = "pumped";
  r.witness = tokens(*inst.sigma(), p);
  json c = pump_json(inst, *cert);
  c["k"] = o.k;
  r.certificate = c;
  r.completeness = "certified";
  return r;
}

Report cmd_forall(const Options& o, const std::string& file, bool almost) {
  PepInstance inst = load_instance(file);
  UniversalVerdict v = almost ? forall_inf_check(inst, search_options(o))
                              : forall_check(inst, search_options(o));
  Report r;
  r.stats = stats_json(v.stats, o.max_len);
  r.stats["non_solutions_seen"] = v.non_solutions_seen;
  if (v.counterexample && !almost) r.witness = tokens(*inst.sigma(), *v.counterexample);
  switch (v.kind) {
    case UniversalVerdict::Kind::fails:
      r.result = "fails";
      r.completeness = "certified";
      break;
    case UniversalVerdict::Kind::fails_infinitely:
      r.result = "fails_infinitely";
      r.certificate = json{{"loop", loop_json(inst, *v.loop)}};
      r.completeness = "certified";
      break;
    case UniversalVerdict::Kind::holds_up_to:
      if (r_bounded(inst, o.max_len) && (v.non_solutions_seen == 0 || almost)) {
        r.result = "holds";
        r.certificate = json{{"justification", "R has no word longer than the search bound"}};
        r.completeness = "certified";
      } else {
        r.result = "holds_up_to";
        r.code = inconclusive;
      }
      break;
  }
  return r;
}

Report cmd_reduce(const Options&, const std::string& file) {
  PepInstance inst = load_instance(file);
  ForallReduction red = reduce_to_forall_inf_pep(inst);
  Report r;
  r.result = "reduced";
  r.artifact = format_instance(red.output);
  const Alphabet& s = *inst.sigma();
  auto text = [&](const Language& l) { return to_string(l.regex ? *l.regex : from_dfa(l.dfa), s); };
  json c;
  c["instance"] = r.artifact;
  c["k_r"] = red.k_r;
  c["pad"] = red.pad ? json(red.output.sigma()->token(*red.pad)) : json(nullptr);
  c["x1"] = text(red.x1);
  c["x2"] = text(red.x2);
  c["x3"] = text(red.x3);
  r.certificate = c;
  r.completeness = "certified";
  return r;
}

Report cmd_encode_pcp(const Options&, const std::string& file) {
  PcpEncoding e = encode_pcp(load_pcp(file));
  Report r;
  r.result = "encoded";
  r.artifact = format_instance(e.instance);
  r.certificate = json{{"instance", r.artifact}};
  r.completeness = "certified";
  return r;
}

Report cmd_encode_semithue(const Options&, const std::string& file) {
  SemiThueEncoding e = encode_semithue(load_semithue(file));
  Report r;
  r.result = "encoded";
  r.artifact = format_instance(e.instance);
  r.certificate = json{{"instance", r.artifact}};
  r.completeness = "certified";
  return r;
}

Report cmd_decode(const Options&, const std::string& file, const std::vector<std::string>& word) {
  SemiThueEncoding e = encode_semithue(load_semithue(file));
  Word w = e.layout.alphabet()->parse_word(word);
  Derivation d = decode_semithue_solution(e, w);
  Report r;
  r.result = "derivation";
  r.witness = tokens(*e.layout.alphabet(), w);
  r.certificate = json{{"derivation", derivation_text(*e.system.upsilon, d)}, {"steps", d.steps()}};
  r.completeness = "certified";
  return r;
}

Report cmd_derive_encode(const Options&, const std::string& file,
                         const std::vector<std::string>& words) {
  SemiThueEncoding e = encode_semithue(load_semithue(file));
  Derivation d;
  std::vector<std::string> cur;
  auto flush = [&] {
    d.words.push_back(e.system.upsilon->parse_word(cur));
    cur.clear();
  };
  for (const auto& t : words) {
    if (t == "/") flush();
    else cur.push_back(t);
  }
  flush();
  Word sigma = derivation_to_solution(e, d);
  if (!check_solution(e.instance, sigma).ok())
    throw std::logic_error("encoded derivation is not a solution");
  Report r;
  r.result = "encoded";
  r.witness = tokens(*e.layout.alphabet(), sigma);
  r.certificate = json{{"derivation", derivation_text(*e.system.upsilon, d)},
                       {"length", sigma.size()},
                       {"verified", true}};
  r.completeness = "certified";
  return r;
}

Report cmd_reach(const Options& o, const std::string& file) {
  SemiThueSystem s = load_semithue(file);
  ReachOptions ro;
  ro.max_steps = o.max_steps;
  ro.word_cap = o.word_cap;
  ro.node_budget = o.node_budget;
  ReachResult res = semithue_reach_oracle(s, ro);
  Report r;
  const bool hit = o.even_only ? res.even.has_value() : res.any.has_value();
  r.result = hit ? "reachable" : "unreachable_up_to";
  json c;
  if (!o.even_only)
    c["any"] = res.any ? json(derivation_text(*s.upsilon, *res.any)) : json(nullptr);
  c["even"] = res.even ? json(derivation_text(*s.upsilon, *res.even)) : json(nullptr);
  r.certificate = c;
  r.stats = json{{"nodes", res.nodes}, {"max_steps", o.max_steps}, {"word_cap", res.word_cap}};
  if (hit) r.completeness = "certified";
  else r.code = inconclusive;
  return r;
}

Report cmd_hbound(const Options& o, std::size_t n, std::size_t k, std::size_t s) {
  if (s == 0) throw PreconditionError("hbound: the alphabet size must be at least 1");
  HResult h = h_bound(n, k, s, o.node_budget);
  Report r;
  r.stats = json{{"nodes", h.nodes}, {"work", h.work}};
  if (h.value) {
    r.result = *h.value;
    json branch = json::array();
    for (const auto& w : h.longest_branch) {
      std::string t;
      for (Symbol a : w) t += static_cast<char>('a' + a);
      branch.push_back(t.empty() ? "eps" : t);
    }
    r.certificate = json{{"longest_branch", branch}};
    r.completeness = "certified";
  } else {
    r.result = "budget_exceeded";
    r.code = inconclusive;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Output

void flatten(const std::string& prefix, const json& j, std::ostream& out) {
  if (j.is_null()) return;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value(), out);
    return;
  }
  out << prefix << ":";
  if (j.is_array()) {
    bool strings = true;
    for (const auto& e : j) strings = strings && e.is_string();
    if (strings) {
      if (j.empty()) out << " eps";
      for (const auto& e : j) out << " " << e.get<std::string>();
    } else {
      out << " " << j.dump();
    }
  } else if (j.is_string()) {
    out << " " << j.get<std::string>();
  } else {
    out << " " << j.dump();
  }
  out << "\n";
}

void emit(const Report& r, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    json doc;
    doc["command"] = r.command;
    doc["result"] = r.result;
    doc["witness"] = r.witness;
    doc["certificate"] = r.certificate;
    doc["stats"] = r.stats;
    doc["completeness"] = r.completeness;
    out << doc.dump(2) << "\n";
    return;
  }
  if (!r.artifact.empty()) {
    out << r.artifact;
    return;
  }
  std::ostringstream s;
  flatten("command", r.command, s);
  flatten("result", r.result, s);
  flatten("witness", r.witness, s);
  flatten("certificate", r.certificate, s);
  flatten("stats", r.stats, s);
  flatten("completeness", r.completeness, s);
  out << s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Post Embedding Problem toolkit", "pep"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--max-len", o.max_len, "Longest word searched");
  app.add_option("--node-budget", o.node_budget, "Search node cap");
  app.add_option("--k", o.k, "Pump exponent");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--even-only", o.even_only, "Report only even, nonzero-length derivations");
  app.add_option("--max-steps", o.max_steps, "Rewrite steps explored by reach-oracle");
  app.add_option("--word-cap", o.word_cap, "Longest P1 word used by reach-oracle");
  app.add_option("--threads", o.threads, "Search workers per length");

  std::string file;
  std::vector<std::string> word;
  std::size_t hn = 0, hk = 0, hs = 1;
  std::function<Report()> action;
  std::string name;

  auto with_file = [&](const std::string& cmd, const std::string& help, auto fn) {
    auto* sub = app.add_subcommand(cmd, help);
    sub->add_option("file", file, "Input file")->required();
    sub->callback([&, cmd, fn] {
      name = cmd;
      action = [&, fn] { return fn(); };
    });
    return sub;
  };
  auto with_word = [&](CLI::App* sub) { sub->add_option("word", word, "Word tokens"); };

  with_word(with_file("check", "Check whether a word is a solution",
                      [&] { return cmd_check(o, file, word); }));
  with_file("solve", "Search for the least solution", [&] { return cmd_solve(o, file); });
  with_file("count", "Count solutions", [&] { return cmd_count(o, file, false); });
  with_file("infinite", "Look for a pump certificate", [&] { return cmd_infinite(o, file); });
  with_word(with_file("minimize", "Cut a solution down", [&] { return cmd_minimize(o, file, word); }));
  with_word(with_file("pump", "Pump a solution", [&] { return cmd_pump(o, file, word); }));
  with_file("forall", "Are all words of R solutions?", [&] { return cmd_forall(o, file, false); });
  with_file("forallinf", "Are almost all words of R solutions?",
            [&] { return cmd_forall(o, file, true); });
  with_file("countnonsol", "Count non-solutions", [&] { return cmd_count(o, file, true); });
  with_file("reduce-forall", "Reduce a universal question to a plain one",
            [&] { return cmd_reduce(o, file); });
  with_file("encode-pcp", "Encode a PCP instance", [&] { return cmd_encode_pcp(o, file); });
  with_file("encode-semithue", "Encode a semi-Thue reachability instance",
            [&] { return cmd_encode_semithue(o, file); });
  with_word(with_file("decode", "Decode a solution of an encoded semi-Thue instance",
                      [&] { return cmd_decode(o, file, word); }));
  with_word(with_file("derive-encode", "Encode a derivation (words separated by '/')",
                      [&] { return cmd_derive_encode(o, file, word); }));
  with_file("reach-oracle", "Bounded semi-Thue reachability", [&] { return cmd_reach(o, file); });
  {
    auto* sub = app.add_subcommand("hbound", "Length of the longest n-bad k-controlled sequence");
    sub->add_option("n", hn)->required();
    sub->add_option("k", hk)->required();
    sub->add_option("gamma", hs)->required();
    sub->callback([&] {
      name = "hbound";
      action = [&] { return cmd_hbound(o, hn, hk, hs); };
    });
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? answered : input_error;
  }

  Report r;
  try {
    r = action();
  } catch (const BudgetExceeded& e) {
    r = Report{};
    r.result = "budget_exceeded";
    r.stats = json{{"nodes", e.nodes()}};
    r.code = inconclusive;
  } catch (const Error& e) {
    err << "pep " << name << ": " << e.what() << "\n";
    return input_error;
  } catch (const std::logic_error& e) {
    err << "pep " << name << ": internal error: " << e.what() << "\n";
    return 3;
  }
  r.command = name;
  emit(r, o, out);
  return r.code;
}

}  // namespace pep::cli
