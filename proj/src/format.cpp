#include "pep/format.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "pep/errors.hpp"

namespace pep {

namespace {

struct Line {
  std::size_t number = 0;
  std::string text;
  std::vector<std::string> words;
  std::vector<std::size_t> columns;  // 1-based column of each word
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    start = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    Line line;
    line.number = number;
    line.text = std::string(raw);
    for (std::size_t i = 0; i < raw.size();) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.words.emplace_back(raw.substr(i, j - i));
      line.columns.push_back(i + 1);
      i = j;
    }
    if (line.words.empty() || line.words.front().front() == '#') continue;
    out.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return out;
}

[[noreturn]] void fail(const Line& l, std::size_t word, const std::string& msg) {
  std::size_t col = word < l.columns.size() ? l.columns[word] : l.text.size() + 1;
  throw ParseError(msg, l.number, col);
}

// Text after the `=` of "key = ...", or after the key when `=` is absent.
std::string rhs(const Line& l, std::size_t from) {
  if (from >= l.columns.size()) return "";
  return l.text.substr(l.columns[from] - 1);
}

std::size_t expect_equals(const Line& l, std::size_t at) {
  if (at >= l.words.size() || l.words[at] != "=") fail(l, at, "expected '='");
  return at + 1;
}

Regex regex_at(const Line& l, std::size_t word, const Alphabet& a) {
  try {
    return parse_regex(rhs(l, word), a);
  } catch (const ParseError& e) {
    fail(l, word, std::string("bad regular expression: ") + e.what());
  } catch (const AlphabetMismatch& e) {
    fail(l, word, e.what());
  }
}

Word word_at(const Line& l, std::size_t from, const Alphabet& a) {
  Word w;
  for (std::size_t i = from; i < l.words.size(); ++i) {
    if (l.words[i] == "eps") continue;
    auto s = a.find(l.words[i]);
    if (!s) fail(l, i, "unknown token '" + l.words[i] + "'");
    w.push_back(*s);
  }
  return w;
}

AlphabetPtr alphabet_at(const Line& l) {
  std::vector<std::string> toks(l.words.begin() + 1, l.words.end());
  for (std::size_t i = 0; i < toks.size(); ++i)
    if (!Alphabet::valid_token(toks[i])) fail(l, i + 1, "invalid token '" + toks[i] + "'");
  try {
    return make_alphabet(std::move(toks));
  } catch (const Error& e) {
    fail(l, 1, e.what());
  }
}

// Morphism lines "u tok = …" / "v tok = …" for every source letter.
struct MorphismLines {
  std::map<Symbol, const Line*> u, v;

  void add(const Line& l, const Alphabet& sigma) {
    if (l.words.size() < 2) fail(l, 1, "expected a letter");
    auto s = sigma.find(l.words[1]);
    if (!s) fail(l, 1, "unknown letter '" + l.words[1] + "'");
    expect_equals(l, 2);
    auto& table = l.words[0] == "u" ? u : v;
    if (table.count(*s)) fail(l, 0, "duplicate image for '" + l.words[1] + "'");
    table[*s] = &l;
  }

  Morphism build(const std::map<Symbol, const Line*>& table, const char* name,
                 const AlphabetPtr& sigma, const AlphabetPtr& gamma, std::size_t last_line) const {
    std::vector<Word> images;
    for (Symbol a = 0; a < sigma->size(); ++a) {
      auto it = table.find(a);
      if (it == table.end())
        throw ParseError(std::string("missing ") + name + " image for '" + sigma->token(a) + "'",
                         last_line, 1);
      images.push_back(word_at(*it->second, 3, *gamma));
    }
    return Morphism(sigma, gamma, std::move(images));
  }
};

const Line* single(const std::vector<Line>& lines, const std::string& key) {
  const Line* found = nullptr;
  for (const auto& l : lines)
    if (l.words[0] == key) {
      if (found) fail(l, 0, "duplicate '" + key + "' line");
      found = &l;
    }
  return found;
}

void reject_unknown(const std::vector<Line>& lines, std::initializer_list<std::string_view> keys) {
  for (const auto& l : lines) {
    bool known = false;
    for (auto k : keys) known = known || l.words[0] == k;
    if (!known) fail(l, 0, "unknown directive '" + l.words[0] + "'");
  }
}

std::string image_line(const char* name, const Alphabet& sigma, const Alphabet& gamma, Symbol a,
                       const Word& img) {
  std::string s = std::string(name) + " " + sigma.token(a) + " =";
  if (!img.empty()) s += " " + gamma.format(img);
  return s + "\n";
}

std::string regex_text(const Language& l, const Alphabet& a) {
  return to_string(l.regex ? *l.regex : from_dfa(l.dfa), a);
}

std::size_t last_line(const std::vector<Line>& lines) {
  return lines.empty() ? 1 : lines.back().number;
}

}  // namespace

PepInstance parse_instance(std::string_view text) {
  auto lines = split_lines(text);
  reject_unknown(lines, {"variant", "sigma", "gamma", "u", "v", "R", "Rp"});
  const std::size_t end = last_line(lines);
  const Line* var = single(lines, "variant");
  const Line* sig = single(lines, "sigma");
  const Line* gam = single(lines, "gamma");
  const Line* rl = single(lines, "R");
  const Line* rpl = single(lines, "Rp");
  if (!var) throw ParseError("missing 'variant' line", end, 1);
  if (!sig) throw ParseError("missing 'sigma' line", end, 1);
  if (!gam) throw ParseError("missing 'gamma' line", end, 1);
  if (!rl) throw ParseError("missing 'R' line", end, 1);
  if (var->words.size() != 2) fail(*var, 1, "expected one variant name");
  Variant variant;
  try {
    variant = parse_variant(var->words[1]);
  } catch (const ParseError&) {
    fail(*var, 1, "unknown variant '" + var->words[1] + "'");
  }
  AlphabetPtr sigma = alphabet_at(*sig);
  AlphabetPtr gamma = alphabet_at(*gam);

  MorphismLines m;
  for (const auto& l : lines)
    if (l.words[0] == "u" || l.words[0] == "v") m.add(l, *sigma);
  Morphism u = m.build(m.u, "u", sigma, gamma, end);
  Morphism v = m.build(m.v, "v", sigma, gamma, end);

  Language r = Language::from_regex(regex_at(*rl, expect_equals(*rl, 1), *sigma), sigma);
  SideConstraint rp = Language{empty_dfa(sigma), Regex::empty()};
  if (rpl) {
    const std::size_t at = expect_equals(*rpl, 1);
    if (at < rpl->words.size() && rpl->words[at] == "lenpred") {
      std::string start = "1", split = "2";
      if (rpl->words.size() == at + 3) {
        start = rpl->words[at + 1];
        split = rpl->words[at + 2];
      } else if (rpl->words.size() != at + 1) {
        fail(*rpl, at + 1, "lenpred takes either no markers or a start and a split marker");
      }
      auto s1 = sigma->find(start), s2 = sigma->find(split);
      if (!s1 || !s2) fail(*rpl, at, "lenpred markers must be letters of sigma");
      rp = LengthDiffPredicate::from(u, v, *s1, *s2);
    } else if (at + 1 == rpl->words.size() && rpl->words[at] == "all") {
      std::vector<Symbol> all(sigma->size());
      for (Symbol a = 0; a < all.size(); ++a) all[a] = a;
      rp = Language{universal_dfa(sigma), Regex::star(Regex::any_of(all))};
    } else {
      rp = Language::from_regex(regex_at(*rpl, at, *sigma), sigma);
    }
  } else if (variant == Variant::dir_partial || variant == Variant::codir_partial) {
    throw ParseError("missing 'Rp' line", end, 1);
  }
  try {
    return PepInstance(variant, std::move(u), std::move(v), std::move(r), std::move(rp));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), rpl ? rpl->number : end, 1);
  }
}

std::string format_instance(const PepInstance& inst) {
  const Alphabet& sigma = *inst.sigma();
  const Alphabet& gamma = *inst.gamma();
  std::ostringstream out;
  out << "variant " << to_string(inst.variant()) << "\n";
  out << "sigma";
  for (const auto& t : sigma.tokens()) out << " " << t;
  out << "\ngamma";
  for (const auto& t : gamma.tokens()) out << " " << t;
  out << "\n";
  for (Symbol a = 0; a < sigma.size(); ++a) out << image_line("u", sigma, gamma, a, inst.u().image(a));
  for (Symbol a = 0; a < sigma.size(); ++a) out << image_line("v", sigma, gamma, a, inst.v().image(a));
  out << "R = " << regex_text(inst.r(), sigma) << "\n";
  if (const auto* p = std::get_if<LengthDiffPredicate>(&inst.rp())) {
    out << "Rp = lenpred " << sigma.token(p->start_marker) << " " << sigma.token(p->split_marker)
        << "\n";
  } else if (inst.variant() == Variant::plain) {
    out << "Rp = none\n";
  } else if (inst.variant() == Variant::co_and_dir) {
    out << "Rp = all\n";
  } else {
    out << "Rp = " << regex_text(std::get<Language>(inst.rp()), sigma) << "\n";
  }
  return out.str();
}

SemiThueSystem parse_semithue(std::string_view text) {
  auto lines = split_lines(text);
  reject_unknown(lines, {"upsilon", "rule", "P1", "P2"});
  const std::size_t end = last_line(lines);
  const Line* ul = single(lines, "upsilon");
  const Line* p1 = single(lines, "P1");
  const Line* p2 = single(lines, "P2");
  if (!ul) throw ParseError("missing 'upsilon' line", end, 1);
  if (!p1) throw ParseError("missing 'P1' line", end, 1);
  if (!p2) throw ParseError("missing 'P2' line", end, 1);
  AlphabetPtr ups = alphabet_at(*ul);
  if (ups->find(kDagger)) fail(*ul, 1, std::string("'") + kDagger + "' is reserved");
  std::vector<Rule> rules;
  for (const auto& l : lines) {
    if (l.words[0] != "rule") continue;
    std::size_t arrow = 0;
    for (std::size_t i = 1; i < l.words.size(); ++i)
      if (l.words[i] == "->") arrow = i;
    if (arrow == 0) fail(l, 1, "expected '->'");
    Line left = l;
    left.words.resize(arrow);
    Rule rule{word_at(left, 1, *ups), word_at(l, arrow + 1, *ups)};
    if (rule.lhs.size() != rule.rhs.size()) fail(l, 1, "rule is not length-preserving");
    rules.push_back(std::move(rule));
  }
  return SemiThueSystem{ups, std::move(rules),
                        Language::from_regex(regex_at(*p1, expect_equals(*p1, 1), *ups), ups),
                        Language::from_regex(regex_at(*p2, expect_equals(*p2, 1), *ups), ups)};
}

std::string format_semithue(const SemiThueSystem& s) {
  const Alphabet& a = *s.upsilon;
  std::ostringstream out;
  out << "upsilon";
  for (const auto& t : a.tokens()) out << " " << t;
  out << "\n";
  for (const auto& r : s.rules) out << "rule " << a.format(r.lhs) << " -> " << a.format(r.rhs) << "\n";
  out << "P1 = " << regex_text(s.p1, a) << "\n";
  out << "P2 = " << regex_text(s.p2, a) << "\n";
  return out.str();
}

PcpInstance parse_pcp(std::string_view text) {
  auto lines = split_lines(text);
  reject_unknown(lines, {"sigma", "gamma", "u", "v"});
  const std::size_t end = last_line(lines);
  const Line* sig = single(lines, "sigma");
  const Line* gam = single(lines, "gamma");
  if (!sig) throw ParseError("missing 'sigma' line", end, 1);
  if (!gam) throw ParseError("missing 'gamma' line", end, 1);
  AlphabetPtr sigma = alphabet_at(*sig);
  AlphabetPtr gamma = alphabet_at(*gam);
  MorphismLines m;
  for (const auto& l : lines)
    if (l.words[0] == "u" || l.words[0] == "v") m.add(l, *sigma);
  return PcpInstance{m.build(m.u, "u", sigma, gamma, end), m.build(m.v, "v", sigma, gamma, end)};
}

std::string format_pcp(const PcpInstance& p) {
  const Alphabet& sigma = *p.u.source();
  const Alphabet& gamma = *p.u.target();
  std::ostringstream out;
  out << "sigma";
  for (const auto& t : sigma.tokens()) out << " " << t;
  out << "\ngamma";
  for (const auto& t : gamma.tokens()) out << " " << t;
  out << "\n";
  for (Symbol a = 0; a < sigma.size(); ++a) out << image_line("u", sigma, gamma, a, p.u.image(a));
  for (Symbol a = 0; a < sigma.size(); ++a) out << image_line("v", sigma, gamma, a, p.v.image(a));
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pep
