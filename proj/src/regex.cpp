#include "pep/regex.hpp"

#include <cctype>

#include "pep/errors.hpp"

namespace pep {

Regex Regex::make(Kind kind, std::vector<Regex> children) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = std::move(children);
  return Regex(std::move(n));
}

Regex Regex::empty() { return make(Kind::empty, {}); }
Regex Regex::eps() { return make(Kind::eps, {}); }

Regex Regex::symbol(Symbol s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::symbol;
  n->sym = s;
  return Regex(std::move(n));
}

Regex Regex::word(WordView w) {
  std::vector<Regex> parts;
  for (Symbol a : w) parts.push_back(symbol(a));
  return concat(std::move(parts));
}

namespace {

std::vector<Regex> flatten(Regex::Kind kind, std::vector<Regex> parts) {
  std::vector<Regex> out;
  for (auto& p : parts) {
    if (p.kind() == kind)
      out.insert(out.end(), p.children().begin(), p.children().end());
    else
      out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

Regex Regex::concat(std::vector<Regex> parts) {
  parts = flatten(Kind::concat, std::move(parts));
  if (parts.empty()) return eps();
  if (parts.size() == 1) return parts.front();
  return make(Kind::concat, std::move(parts));
}

Regex Regex::union_of(std::vector<Regex> parts) {
  parts = flatten(Kind::union_, std::move(parts));
  if (parts.empty()) return empty();
  if (parts.size() == 1) return parts.front();
  return make(Kind::union_, std::move(parts));
}

Regex Regex::inter(std::vector<Regex> parts) {
  parts = flatten(Kind::inter, std::move(parts));
  if (parts.empty()) throw PreconditionError("intersection of zero languages");
  if (parts.size() == 1) return parts.front();
  return make(Kind::inter, std::move(parts));
}

Regex Regex::star(Regex r) { return make(Kind::star, {std::move(r)}); }
Regex Regex::plus(Regex r) { return make(Kind::plus, {std::move(r)}); }
Regex Regex::opt(Regex r) { return make(Kind::opt, {std::move(r)}); }

Regex Regex::any_of(std::span<const Symbol> letters) {
  std::vector<Regex> parts;
  for (Symbol a : letters) parts.push_back(symbol(a));
  return union_of(std::move(parts));
}

Regex Regex::substitute(const std::function<Regex(Symbol)>& f) const {
  switch (kind()) {
    case Kind::empty:
    case Kind::eps: return *this;
    case Kind::symbol: return f(sym());
    default: break;
  }
  std::vector<Regex> kids;
  for (const auto& c : children()) kids.push_back(c.substitute(f));
  switch (kind()) {
    case Kind::concat: return concat(std::move(kids));
    case Kind::union_: return union_of(std::move(kids));
    case Kind::inter: return inter(std::move(kids));
    case Kind::star: return star(std::move(kids[0]));
    case Kind::plus: return plus(std::move(kids[0]));
    case Kind::opt: return opt(std::move(kids[0]));
    default: return *this;
  }
}

bool Regex::operator==(const Regex& other) const {
  if (kind() != other.kind()) return false;
  if (kind() == Kind::symbol) return sym() == other.sym();
  return children() == other.children();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_operator(char c) { return std::string_view("|&*+?()").find(c) != std::string_view::npos; }

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (is_operator(c)) {
      flush();
      out.emplace_back(1, c);
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

class Parser {
 public:
  Parser(std::vector<std::string> toks, const Alphabet& alphabet)
      : toks_(std::move(toks)), alphabet_(alphabet) {}

  Regex parse() {
    if (toks_.empty()) throw ParseError("empty regular expression", 0, 0);
    Regex r = parse_union();
    if (pos_ != toks_.size()) fail("unexpected '" + toks_[pos_] + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("regex: " + msg + " at token " + std::to_string(pos_), 0, pos_);
  }
  bool at(std::string_view t) const { return pos_ < toks_.size() && toks_[pos_] == t; }
  bool at_atom_start() const {
    if (pos_ >= toks_.size()) return false;
    const auto& t = toks_[pos_];
    return t == "(" || !(t.size() == 1 && is_operator(t[0]));
  }

  Regex parse_union() {
    std::vector<Regex> parts{parse_inter()};
    while (at("|")) {
      ++pos_;
      parts.push_back(parse_inter());
    }
    return Regex::union_of(std::move(parts));
  }

  Regex parse_inter() {
    std::vector<Regex> parts{parse_concat()};
    while (at("&")) {
      ++pos_;
      parts.push_back(parse_concat());
    }
    return Regex::inter(std::move(parts));
  }

  Regex parse_concat() {
    if (!at_atom_start()) fail(pos_ < toks_.size() ? "expected an operand before '" + toks_[pos_] + "'"
                                                   : "unexpected end of expression");
    std::vector<Regex> parts;
    while (at_atom_start()) parts.push_back(parse_postfix());
    return Regex::concat(std::move(parts));
  }

  Regex parse_postfix() {
    Regex r = parse_atom();
    for (;;) {
      if (at("*")) r = Regex::star(std::move(r));
      else if (at("+")) r = Regex::plus(std::move(r));
      else if (at("?")) r = Regex::opt(std::move(r));
      else break;
      ++pos_;
    }
    return r;
  }

  Regex parse_atom() {
    if (at("(")) {
      ++pos_;
      Regex r = parse_union();
      if (!at(")")) fail("missing ')'");
      ++pos_;
      return r;
    }
    const std::string& t = toks_[pos_];
    if (t == "eps") {
      ++pos_;
      return Regex::eps();
    }
    if (t == "none") {
      ++pos_;
      return Regex::empty();
    }
    auto s = alphabet_.find(t);
    if (!s) fail("unknown token '" + t + "'");
    ++pos_;
    return Regex::symbol(*s);
  }

  std::vector<std::string> toks_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

// Binding strength used by the printer: higher binds tighter.
int strength(Regex::Kind k) {
  switch (k) {
    case Regex::Kind::union_: return 0;
    case Regex::Kind::inter: return 1;
    case Regex::Kind::concat: return 2;
    case Regex::Kind::star:
    case Regex::Kind::plus:
    case Regex::Kind::opt: return 3;
    default: return 4;
  }
}

void print(const Regex& r, const Alphabet& alphabet, std::string& out);

void print_child(const Regex& child, int min_strength, const Alphabet& alphabet, std::string& out) {
  // Nested n-ary nodes of the same kind never occur (constructors flatten),
  // so only strictly weaker children need parentheses.
  if (strength(child.kind()) < min_strength) {
    out += "( ";
    print(child, alphabet, out);
    out += " )";
  } else {
    print(child, alphabet, out);
  }
}

void print(const Regex& r, const Alphabet& alphabet, std::string& out) {
  using K = Regex::Kind;
  switch (r.kind()) {
    case K::empty: out += "none"; return;
    case K::eps: out += "eps"; return;
    case K::symbol: out += alphabet.token(r.sym()); return;
    case K::concat:
    case K::union_:
    case K::inter: {
      const char* sep = r.kind() == K::concat ? " " : r.kind() == K::union_ ? " | " : " & ";
      // A concat child that is itself a concat cannot appear, but a union
      // child of a union also cannot; parenthesize same-strength children of
      // different kinds.
      int need = strength(r.kind()) + (r.kind() == K::concat ? 0 : 1);
      bool first = true;
      for (const auto& c : r.children()) {
        if (!first) out += sep;
        first = false;
        int s = strength(c.kind());
        if (s < need || (r.kind() == K::concat && s == strength(K::concat)))
          print_child(c, 99, alphabet, out);
        else
          print(c, alphabet, out);
      }
      return;
    }
    case K::star:
    case K::plus:
    case K::opt: {
      print_child(r.children()[0], 3, alphabet, out);
      out += r.kind() == K::star ? " *" : r.kind() == K::plus ? " +" : " ?";
      return;
    }
  }
}

}  // namespace

Regex parse_regex(std::string_view text, const Alphabet& alphabet) {
  return Parser(tokenize(text), alphabet).parse();
}

std::string to_string(const Regex& r, const Alphabet& alphabet) {
  std::string out;
  print(r, alphabet, out);
  return out;
}

Nfa to_nfa(const Regex& r, const AlphabetPtr& alphabet) {
  using K = Regex::Kind;
  switch (r.kind()) {
    case K::empty: return Nfa::empty(alphabet);
    case K::eps: return Nfa::epsilon(alphabet);
    case K::symbol:
      if (r.sym() >= alphabet->size()) throw AlphabetMismatch("regex symbol outside alphabet");
      return Nfa::letter(alphabet, r.sym());
    case K::concat: {
      Nfa n = to_nfa(r.children()[0], alphabet);
      for (std::size_t i = 1; i < r.children().size(); ++i) n = concat(n, to_nfa(r.children()[i], alphabet));
      return n;
    }
    case K::union_: {
      Nfa n = to_nfa(r.children()[0], alphabet);
      for (std::size_t i = 1; i < r.children().size(); ++i) n = union_of(n, to_nfa(r.children()[i], alphabet));
      return n;
    }
    case K::inter: {
      Dfa d = compile(to_nfa(r.children()[0], alphabet));
      for (std::size_t i = 1; i < r.children().size(); ++i)
        d = combine(BoolOp::intersection, d, compile(to_nfa(r.children()[i], alphabet)));
      return d.to_nfa();
    }
    case K::star: return star(to_nfa(r.children()[0], alphabet));
    case K::plus: return plus(to_nfa(r.children()[0], alphabet));
    case K::opt: return optional(to_nfa(r.children()[0], alphabet));
  }
  return Nfa::empty(alphabet);
}

Regex mirror(const Regex& r) {
  using K = Regex::Kind;
  switch (r.kind()) {
    case K::empty:
    case K::eps:
    case K::symbol: return r;
    default: break;
  }
  std::vector<Regex> kids;
  for (const auto& c : r.children()) kids.push_back(mirror(c));
  switch (r.kind()) {
    case K::concat: return Regex::concat(std::vector<Regex>(kids.rbegin(), kids.rend()));
    case K::union_: return Regex::union_of(std::move(kids));
    case K::inter: return Regex::inter(std::move(kids));
    case K::star: return Regex::star(std::move(kids[0]));
    case K::plus: return Regex::plus(std::move(kids[0]));
    case K::opt: return Regex::opt(std::move(kids[0]));
    default: return r;
  }
}

Dfa compile_regex(std::string_view text, const AlphabetPtr& alphabet) {
  return compile(to_nfa(parse_regex(text, *alphabet), alphabet));
}

}  // namespace pep

// ---------------------------------------------------------------------------
// State elimination

namespace pep {

namespace {

bool is_empty(const std::optional<Regex>& r) { return !r || r->kind() == Regex::Kind::empty; }

std::optional<Regex> alt(const std::optional<Regex>& a, const std::optional<Regex>& b) {
  if (is_empty(a)) return b;
  if (is_empty(b)) return a;
  if (*a == *b) return a;
  return Regex::union_of({*a, *b});
}

Regex loop(const std::optional<Regex>& r) {
  if (is_empty(r) || r->kind() == Regex::Kind::eps) return Regex::eps();
  if (r->kind() == Regex::Kind::star) return *r;
  return Regex::star(*r);
}

Regex seq(std::initializer_list<Regex> parts) {
  std::vector<Regex> keep;
  for (const auto& p : parts) {
    if (p.kind() == Regex::Kind::empty) return Regex::empty();
    if (p.kind() != Regex::Kind::eps) keep.push_back(p);
  }
  return Regex::concat(std::move(keep));
}

}  // namespace

Regex from_dfa(const Dfa& d) {
  const std::size_t n = d.state_count(), k = d.alphabet()->size();
  // Keep states that are reachable and can still reach acceptance.
  std::vector<char> reach(n, 0), coreach(n, 0);
  std::vector<State> stack{d.initial()};
  reach[d.initial()] = 1;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Symbol a = 0; a < k; ++a)
      if (!reach[d.next(q, a)]) {
        reach[d.next(q, a)] = 1;
        stack.push_back(d.next(q, a));
      }
  }
  for (State q = 0; q < n; ++q) coreach[q] = d.is_accepting(q);
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < n; ++q)
      for (Symbol a = 0; a < k && !coreach[q]; ++a)
        if (coreach[d.next(q, a)]) coreach[q] = changed = true;
  }
  std::vector<long> id(n, -1);
  std::size_t m = 0;
  for (State q = 0; q < n; ++q)
    if (reach[q] && coreach[q]) id[q] = static_cast<long>(m++);
  if (id[d.initial()] < 0) return Regex::empty();

  const std::size_t S = m, F = m + 1, W = m + 2;
  std::vector<std::optional<Regex>> edge(W * W);
  auto at = [&](std::size_t i, std::size_t j) -> std::optional<Regex>& { return edge[i * W + j]; };
  for (State q = 0; q < n; ++q) {
    if (id[q] < 0) continue;
    std::vector<std::vector<Symbol>> letters(m);
    for (Symbol a = 0; a < k; ++a)
      if (id[d.next(q, a)] >= 0) letters[static_cast<std::size_t>(id[d.next(q, a)])].push_back(a);
    for (std::size_t j = 0; j < m; ++j)
      if (!letters[j].empty()) at(static_cast<std::size_t>(id[q]), j) = Regex::any_of(letters[j]);
    if (d.is_accepting(q)) at(static_cast<std::size_t>(id[q]), F) = Regex::eps();
  }
  at(S, static_cast<std::size_t>(id[d.initial()])) = Regex::eps();

  for (std::size_t x = 0; x < m; ++x) {
    Regex self = loop(at(x, x));
    for (std::size_t i = 0; i < W; ++i) {
      if (i == x || is_empty(at(i, x))) continue;
      for (std::size_t j = 0; j < W; ++j) {
        if (j == x || is_empty(at(x, j))) continue;
        at(i, j) = alt(at(i, j), seq({*at(i, x), self, *at(x, j)}));
      }
    }
    for (std::size_t i = 0; i < W; ++i) at(i, x).reset(), at(x, i).reset();
  }
  return is_empty(at(S, F)) ? Regex::empty() : *at(S, F);
}

}  // namespace pep
