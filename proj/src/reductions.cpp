#include "pep/reductions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "pep/errors.hpp"

namespace pep {

namespace {

std::string fresh_token(const Alphabet& a, const std::string& base) {
  if (!a.find(base)) return base;
  for (int i = 1;; ++i) {
    std::string t = base + "_" + std::to_string(i);
    if (!a.find(t)) return t;
  }
}

AlphabetPtr with_token(const Alphabet& a, const std::string& token) {
  auto tokens = a.tokens();
  tokens.push_back(token);
  return make_alphabet(std::move(tokens));
}

}  // namespace

// ---------------------------------------------------------------------------
// PCP

PcpEncoding encode_pcp(const PcpInstance& p) {
  require_same(*p.u.source(), *p.v.source(), "PCP morphism sources");
  require_same(*p.u.target(), *p.v.target(), "PCP morphism targets");
  const Alphabet& sigma = *p.u.source();
  const Alphabet& gamma = *p.u.target();
  const std::string one = fresh_token(sigma, "1");
  AlphabetPtr s1 = with_token(sigma, one);
  AlphabetPtr s2 = with_token(*s1, fresh_token(*s1, "2"));
  AlphabetPtr g2 = with_token(gamma, fresh_token(gamma, "#"));
  const auto start = static_cast<Symbol>(sigma.size());
  const Symbol split = start + 1;
  const auto hash = static_cast<Symbol>(gamma.size());

  auto uimg = p.u.images(), vimg = p.v.images();
  uimg.push_back({});      // u′(1) = ε
  uimg.push_back({hash});  // u′(2) = #
  vimg.push_back({hash});  // v′(1) = #
  vimg.push_back({});      // v′(2) = ε
  Morphism u(s2, g2, std::move(uimg)), v(s2, g2, std::move(vimg));

  std::vector<Symbol> letters(sigma.size());
  for (Symbol a = 0; a < letters.size(); ++a) letters[a] = a;
  Regex r = Regex::concat(
      {Regex::symbol(start), Regex::symbol(split), Regex::plus(Regex::any_of(letters))});
  auto pred = LengthDiffPredicate::from(u, v, start, split);
  PepInstance inst(Variant::codir_partial, u, v, Language::from_regex(r, s2), pred);
  return PcpEncoding{std::move(inst), start, split, hash};
}

Word pcp_to_solution(const PcpEncoding& e, WordView x) {
  Word w{e.start, e.split};
  w.insert(w.end(), x.begin(), x.end());
  return w;
}

// ---------------------------------------------------------------------------
// Semi-Thue systems

void SemiThueSystem::validate() const {
  if (!upsilon) throw PreconditionError("semi-Thue system needs an alphabet");
  for (const auto& rule : rules) {
    upsilon->check(rule.lhs);
    upsilon->check(rule.rhs);
    if (rule.lhs.size() != rule.rhs.size())
      throw PreconditionError("rule " + upsilon->format(rule.lhs) + " -> " +
                              upsilon->format(rule.rhs) + " is not length-preserving");
  }
  require_same(*p1.dfa.alphabet(), *upsilon, "P1");
  require_same(*p2.dfa.alphabet(), *upsilon, "P2");
}

std::vector<Word> rewrites(const SemiThueSystem& s, WordView x) {
  std::vector<Word> out;
  for (const auto& rule : s.rules) {
    const std::size_t l = rule.lhs.size();
    if (l > x.size()) continue;
    for (std::size_t pos = 0; pos + l <= x.size(); ++pos) {
      if (!std::equal(rule.lhs.begin(), rule.lhs.end(), x.begin() + static_cast<std::ptrdiff_t>(pos)))
        continue;
      Word y(x.begin(), x.end());
      std::copy(rule.rhs.begin(), rule.rhs.end(), y.begin() + static_cast<std::ptrdiff_t>(pos));
      out.push_back(std::move(y));
    }
  }
  return out;
}

bool rewrites_to(const SemiThueSystem& s, WordView x, WordView y) {
  for (const auto& w : rewrites(s, x))
    if (std::equal(w.begin(), w.end(), y.begin(), y.end())) return true;
  return false;
}

EncodedLayout::EncodedLayout(AlphabetPtr upsilon) : upsilon_(std::move(upsilon)) {
  n_ = upsilon_->size() + 1;
  std::vector<std::string> tokens;
  for (int over = 0; over < 2; ++over)
    for (int primes = 0; primes < 3; ++primes)
      for (std::size_t j = 0; j < n_; ++j) {
        std::string t = j + 1 == n_ ? kDagger : upsilon_->token(static_cast<Symbol>(j));
        t += std::string(static_cast<std::size_t>(primes), '\'');
        tokens.push_back(over ? "~" + t : t);
      }
  alphabet_ = make_alphabet(std::move(tokens));
}

Word EncodedLayout::lift(WordView w, unsigned primes, bool over) const {
  Word out;
  out.reserve(w.size());
  for (Symbol a : w) out.push_back(id(a, primes, over));
  return out;
}

Word shuffle(const EncodedLayout& layout, WordView x, WordView y, unsigned primes_x,
             unsigned primes_y) {
  if (x.size() != y.size()) throw PreconditionError("shuffle needs words of equal length");
  Word out;
  out.reserve(2 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.push_back(layout.id(x[i], primes_x, false));
    out.push_back(layout.id(y[i], primes_y, true));
  }
  return out;
}

StepLanguages build_step_languages(const SemiThueSystem& s, const EncodedLayout& layout) {
  s.validate();
  const auto k = static_cast<Symbol>(s.upsilon->size());
  std::vector<Regex> diag;
  std::vector<Symbol> overlined;
  for (Symbol a = 0; a < k; ++a) {
    diag.push_back(Regex::concat({Regex::symbol(layout.id(a, 0, false)),
                                  Regex::symbol(layout.id(a, 0, true))}));
    overlined.push_back(layout.id(a, 0, true));
  }
  const Regex same = Regex::star(Regex::union_of(diag));
  std::vector<Regex> fwd_windows, bwd_windows;
  for (const auto& rule : s.rules) {
    fwd_windows.push_back(Regex::word(shuffle(layout, rule.lhs, rule.rhs)));
    bwd_windows.push_back(Regex::word(shuffle(layout, rule.rhs, rule.lhs)));
  }
  StepLanguages out{Regex::concat({same, Regex::union_of(fwd_windows), same}), Regex::empty(),
                    Regex::concat({same, Regex::union_of(bwd_windows), same}), Regex::empty()};
  // {x ⧢ y : x ∈ P, |x| = |y|}: each plain letter of P followed by any
  // overlined plain letter. Both restrictions constrain the plain track.
  auto on_plain_track = [&](const Language& p) {
    Regex pr = p.regex ? *p.regex : from_dfa(p.dfa);
    return pr.substitute([&](Symbol a) {
      return Regex::concat({Regex::symbol(layout.id(a, 0, false)), Regex::any_of(overlined)});
    });
  };
  out.forward_p1 = Regex::inter({out.forward, on_plain_track(s.p1)});
  out.backward_p2 = Regex::inter({out.backward, on_plain_track(s.p2)});
  return out;
}

SemiThueEncoding encode_semithue(const SemiThueSystem& s) {
  s.validate();
  if (s.p1.dfa.accepts(Word{})) throw PreconditionError("P1 must not contain the empty word");
  EncodedLayout layout(s.upsilon);
  StepLanguages steps = build_step_languages(s, layout);
  const auto k = static_cast<Symbol>(s.upsilon->size());
  const Symbol dag = layout.dagger_index();

  auto letters = [&](unsigned primes, bool over) {
    std::vector<Symbol> out;
    for (Symbol a = 0; a < k; ++a) out.push_back(layout.id(a, primes, over));
    return Regex::any_of(out);
  };
  auto sym = [&](Symbol base, unsigned primes, bool over) {
    return Regex::symbol(layout.id(base, primes, over));
  };
  // (Υ″ †̄″)+, (†′ Ῡ′)+ and (Υ′ †̄′)+.
  const Regex outer = Regex::plus(Regex::concat({letters(2, false), sym(dag, 2, true)}));
  const Regex odd_fill = Regex::plus(Regex::concat({sym(dag, 1, false), letters(1, true)}));
  const Regex even_fill = Regex::plus(Regex::concat({letters(1, false), sym(dag, 1, true)}));
  Regex r = Regex::concat(
      {outer, steps.forward_p1, odd_fill,
       Regex::star(Regex::concat({steps.backward, even_fill, steps.forward, odd_fill})),
       steps.backward_p2, outer});

  // u and v on the plain copies; overlining is carried through.
  const std::size_t n = layout.base_size();
  Word w_upsilon;
  for (Symbol a = 0; a < k; ++a) w_upsilon.push_back(a);
  std::vector<Word> uimg(layout.alphabet()->size()), vimg(layout.alphabet()->size());
  for (int over = 0; over < 2; ++over)
    for (unsigned primes = 0; primes < 3; ++primes)
      for (Symbol j = 0; j < n; ++j) {
        const bool is_dag = j == dag;
        Word ub, vb;  // images as base words; lifted as plain letters below
        switch (primes) {
          case 0:
            ub = is_dag ? Word{dag} : Word{j};
            vb = Word{dag};
            break;
          case 1:
            ub = Word{dag};
            vb = is_dag ? w_upsilon : Word{j};
            break;
          default:
            vb = is_dag ? w_upsilon : Word{j};
            break;
        }
        const Symbol s_id = layout.id(j, primes, over != 0);
        uimg[s_id] = layout.lift(ub, 0, over != 0);
        vimg[s_id] = layout.lift(vb, 0, over != 0);
      }
  Morphism u(layout.alphabet(), layout.alphabet(), std::move(uimg));
  Morphism v(layout.alphabet(), layout.alphabet(), std::move(vimg));
  PepInstance inst(Variant::co_and_dir, std::move(u), std::move(v),
                   Language::from_regex(r, layout.alphabet()),
                   Language{universal_dfa(layout.alphabet()), std::nullopt});
  return SemiThueEncoding{s, std::move(layout), std::move(steps), std::move(r), std::move(inst)};
}

Word derivation_to_solution(const SemiThueEncoding& e, const Derivation& pi) {
  const auto& x = pi.words;
  if (x.size() < 3 || x.size() % 2 == 0)
    throw PreconditionError("derivation must have an even, nonzero number of steps");
  const std::size_t K = x.front().size();
  if (K == 0) throw PreconditionError("derivation words must be nonempty");
  for (std::size_t i = 0; i < x.size(); ++i) {
    e.system.upsilon->check(x[i]);
    if (x[i].size() != K) throw PreconditionError("derivation words differ in length");
    if (i > 0 && !rewrites_to(e.system, x[i - 1], x[i]))
      throw PreconditionError("step " + std::to_string(i) + " is not a rewrite");
  }
  if (!e.system.p1.dfa.accepts(x.front())) throw PreconditionError("x_0 is not in P1");
  if (!e.system.p2.dfa.accepts(x.back())) throw PreconditionError("last word is not in P2");

  const EncodedLayout& L = e.layout;
  const Word daggers(K, L.dagger_index());
  const std::size_t m = x.size() - 1;
  Word out = shuffle(L, x[0], daggers, 2, 2);
  auto append = [&](const Word& w) { out.insert(out.end(), w.begin(), w.end()); };
  for (std::size_t i = 1; i <= m; ++i) {
    append(i % 2 ? shuffle(L, x[i - 1], x[i]) : shuffle(L, x[i], x[i - 1]));
    if (i == m)
      append(shuffle(L, x[i], daggers, 2, 2));
    else if (i % 2)
      append(shuffle(L, daggers, x[i], 1, 1));
    else
      append(shuffle(L, x[i], daggers, 1, 1));
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> segments(const EncodedLayout& layout,
                                                          WordView sigma) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < sigma.size();) {
    std::size_t j = i + 1;
    while (j < sigma.size() && layout.primes(sigma[j]) == layout.primes(sigma[i])) ++j;
    out.emplace_back(i, j);
    i = j;
  }
  return out;
}

Derivation decode_semithue_solution(const SemiThueEncoding& e, WordView sigma) {
  if (!check_solution(e.instance, sigma).ok())
    throw PreconditionError("decode: the word is not a solution");
  const EncodedLayout& L = e.layout;
  auto broken = [](const std::string& what) { throw std::logic_error("decode: " + what); };
  const auto segs = segments(L, sigma);
  if (segs.size() < 5 || segs.size() % 4 != 1) broken("unexpected number of segments");
  const std::size_t steps = (segs.size() - 1) / 2;

  // Plain and overlined tracks of a step segment.
  auto tracks = [&](std::pair<std::size_t, std::size_t> seg) {
    Word plain, over;
    if ((seg.second - seg.first) % 2) broken("odd step segment");
    for (std::size_t i = seg.first; i < seg.second; ++i) {
      const Symbol s = sigma[i];
      const bool want_over = (i - seg.first) % 2 == 1;
      if (L.primes(s) != 0 || L.over(s) != want_over || L.is_dagger(s))
        broken("step segment is not a shuffle");
      (want_over ? over : plain).push_back(L.base(s));
    }
    return std::pair{plain, over};
  };

  Derivation d;
  for (std::size_t i = 1; i <= steps; ++i) {
    auto [plain, over] = tracks(segs[2 * i - 1]);
    const Word& from = i % 2 ? plain : over;
    const Word& to = i % 2 ? over : plain;
    if (i == 1) d.words.push_back(from);
    else if (d.words.back() != from) broken("consecutive steps do not chain");
    if (!rewrites_to(e.system, from, to)) broken("step is not a rewrite");
    d.words.push_back(to);
  }
  if (!e.system.p1.dfa.accepts(d.words.front())) broken("first word is not in P1");
  if (!e.system.p2.dfa.accepts(d.words.back())) broken("last word is not in P2");
  return d;
}

// ---------------------------------------------------------------------------
// Reachability oracle

ReachResult semithue_reach_oracle(const SemiThueSystem& s, const ReachOptions& opts) {
  s.validate();
  ReachResult res;
  std::size_t cap = opts.word_cap;
  if (cap == 0) {
    cap = s.p1.dfa.state_count() + s.p2.dfa.state_count();
    std::size_t longest = 0;
    for (const auto& rule : s.rules) longest = std::max(longest, rule.lhs.size());
    cap += longest;
  }
  res.word_cap = cap;
  const std::vector<Word> sources = enumerate(s.p1.dfa, cap);

  struct Node {
    Word word;
    long parent;
  };
  std::vector<Node> nodes;
  auto count = [&] {
    if (++res.nodes > opts.node_budget) throw BudgetExceeded("node budget exhausted", res.nodes);
  };
  auto witness = [&](long idx) {
    Derivation d;
    for (; idx >= 0; idx = nodes[static_cast<std::size_t>(idx)].parent)
      d.words.push_back(nodes[static_cast<std::size_t>(idx)].word);
    std::reverse(d.words.begin(), d.words.end());
    return d;
  };

  // Any number of steps, including zero.
  {
    nodes.clear();
    std::set<Word> seen;
    std::vector<long> level;
    for (const auto& w : sources)
      if (seen.insert(w).second) {
        count();
        nodes.push_back({w, -1});
        level.push_back(static_cast<long>(nodes.size() - 1));
      }
    for (std::size_t depth = 0; !res.any; ++depth) {
      for (long idx : level)
        if (s.p2.dfa.accepts(nodes[static_cast<std::size_t>(idx)].word)) {
          res.any = witness(idx);
          break;
        }
      if (res.any || depth == opts.max_steps || level.empty()) break;
      std::vector<long> next;
      for (long idx : level)
        for (auto& y : rewrites(s, nodes[static_cast<std::size_t>(idx)].word))
          if (seen.insert(y).second) {
            count();
            nodes.push_back({std::move(y), idx});
            next.push_back(static_cast<long>(nodes.size() - 1));
          }
      level = std::move(next);
    }
  }

  // Even, nonzero number of steps: states are (word, parity), and the
  // sources themselves are not marked visited so loops back to them count.
  {
    nodes.clear();
    std::set<std::pair<Word, int>> seen;
    std::vector<long> level;
    for (const auto& w : sources) {
      count();
      nodes.push_back({w, -1});
      level.push_back(static_cast<long>(nodes.size() - 1));
    }
    for (std::size_t depth = 0; depth < opts.max_steps && !level.empty() && !res.even; ++depth) {
      std::vector<long> next;
      const int parity = static_cast<int>((depth + 1) % 2);
      for (long idx : level)
        for (auto& y : rewrites(s, nodes[static_cast<std::size_t>(idx)].word))
          if (seen.insert({y, parity}).second) {
            count();
            nodes.push_back({std::move(y), idx});
            next.push_back(static_cast<long>(nodes.size() - 1));
          }
      level = std::move(next);
      if (parity == 0)
        for (long idx : level)
          if (s.p2.dfa.accepts(nodes[static_cast<std::size_t>(idx)].word)) {
            res.even = witness(idx);
            break;
          }
    }
  }
  return res;
}

}  // namespace pep
