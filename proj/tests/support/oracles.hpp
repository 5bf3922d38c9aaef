#pragma once

// Brute-force reference implementations and random generators shared by the
// unit and acceptance suites. Nothing here calls the library's own decision
// procedures; they only use automaton membership and morphism images.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pep/automata.hpp"
#include "pep/instance.hpp"
#include "pep/words.hpp"

namespace oracle {

using pep::Symbol;
using pep::Word;
using pep::WordView;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_);
  }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }

  Word word(std::size_t alphabet, std::size_t max_len) {
    Word w(between(0, max_len));
    for (auto& a : w) a = static_cast<Symbol>(below(alphabet));
    return w;
  }
  Word word_exact(std::size_t alphabet, std::size_t len) {
    Word w(len);
    for (auto& a : w) a = static_cast<Symbol>(below(alphabet));
    return w;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// ---------------------------------------------------------------------------
// Subword order, by the recursive definition rather than a greedy scan.

inline bool subword(WordView s, WordView t) {
  // reach[i][j]: s[i..) embeds into t[j..)
  std::vector<std::vector<char>> reach(s.size() + 1, std::vector<char>(t.size() + 1, 0));
  for (std::size_t j = 0; j <= t.size(); ++j) reach[s.size()][j] = 1;
  for (std::size_t i = s.size(); i-- > 0;)
    for (std::size_t j = t.size(); j-- > 0;)
      reach[i][j] = reach[i][j + 1] || (s[i] == t[j] && reach[i + 1][j + 1]);
  return reach[0][0];
}

/// Every strictly increasing position list realising s ⊑ t, in
/// lexicographic order.
inline std::vector<std::vector<std::size_t>> all_embeddings(WordView s, WordView t) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) {
    if (i == s.size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t k = j; k < t.size(); ++k) {
      if (t[k] != s[i]) continue;
      cur.push_back(k);
      go(i + 1, k + 1);
      cur.pop_back();
    }
  };
  go(0, 0);
  return out;
}

inline Word cat(WordView a, WordView b) {
  Word w(a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}
inline Word sub(WordView w, std::size_t from, std::size_t to) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

// Residuals by scanning every candidate.

inline std::optional<Word> longest_suffix_carrier(WordView y, WordView z, WordView t) {
  for (std::size_t len = y.size() + 1; len-- > 0;) {
    Word x = sub(y, y.size() - len, y.size());
    if (subword(cat(x, z), t)) return x;
  }
  return std::nullopt;
}

inline Word shortest_prefix_overflow(WordView z, WordView t) {
  for (std::size_t len = 0; len <= z.size(); ++len)
    if (subword(sub(z, len, z.size()), t)) return sub(z, 0, len);
  return Word(z.begin(), z.end());
}

inline std::optional<Word> longest_prefix_host(WordView z, WordView t) {
  for (std::size_t len = t.size() + 1; len-- > 0;)
    if (subword(z, sub(t, len, t.size()))) return sub(t, 0, len);
  return std::nullopt;
}

inline std::optional<Word> shortest_suffix_host(WordView z, WordView s, WordView t) {
  for (std::size_t len = 0; len <= s.size(); ++len) {
    Word x = sub(s, s.size() - len, s.size());
    if (subword(z, cat(x, t))) return x;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Words in length-lex order.

/// Σ^{≤max_len} in length-then-lexicographic order.
inline void for_each_word(std::size_t alphabet, std::size_t max_len,
                          const std::function<void(const Word&)>& fn) {
  for (std::size_t len = 0; len <= max_len; ++len) {
    Word w(len, 0);
    while (true) {
      fn(w);
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1 == alphabet) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
    if (alphabet == 0) break;
  }
}

inline bool length_lex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// ---------------------------------------------------------------------------
// Random automata and instances.

inline pep::AlphabetPtr letters(std::size_t n, const std::string& prefix = "") {
  std::vector<std::string> toks;
  for (std::size_t i = 0; i < n; ++i) toks.push_back(prefix + std::string(1, static_cast<char>('a' + i)));
  return pep::make_alphabet(std::move(toks));
}
inline pep::AlphabetPtr digits(std::size_t n) {
  std::vector<std::string> toks;
  for (std::size_t i = 0; i < n; ++i) toks.push_back(std::to_string(i));
  return pep::make_alphabet(std::move(toks));
}

inline pep::Dfa random_dfa(Rng& rng, const pep::AlphabetPtr& alpha, std::size_t max_states,
                           double accept = 0.5) {
  std::size_t n = rng.between(1, max_states);
  std::vector<pep::State> delta(n * alpha->size());
  for (auto& d : delta) d = static_cast<pep::State>(rng.below(n));
  std::vector<bool> acc(n);
  for (std::size_t q = 0; q < n; ++q) acc[q] = rng.coin(accept);
  return pep::Dfa(alpha, n, 0, std::move(delta), std::move(acc));
}

inline pep::Morphism random_morphism(Rng& rng, const pep::AlphabetPtr& src,
                                     const pep::AlphabetPtr& dst, std::size_t max_image) {
  std::vector<Word> imgs;
  for (std::size_t a = 0; a < src->size(); ++a) imgs.push_back(rng.word(dst->size(), max_image));
  return pep::Morphism(src, dst, std::move(imgs));
}

struct InstanceShape {
  std::size_t max_sigma = 3, max_gamma = 3, max_u = 2, max_v = 2, max_states = 3;
};

inline pep::PepInstance random_instance(Rng& rng, pep::Variant variant, InstanceShape shape = {}) {
  auto sigma = digits(rng.between(1, shape.max_sigma));
  auto gamma = letters(rng.between(1, shape.max_gamma));
  auto u = random_morphism(rng, sigma, gamma, shape.max_u);
  auto v = random_morphism(rng, sigma, gamma, shape.max_v);
  auto r = pep::Language::from_dfa(random_dfa(rng, sigma, shape.max_states));
  auto rp = pep::Language::from_dfa(random_dfa(rng, sigma, shape.max_states));
  return pep::PepInstance(variant, std::move(u), std::move(v), std::move(r), std::move(rp));
}

// ---------------------------------------------------------------------------
// Solutions straight from the definitions.

inline bool embeds(const pep::PepInstance& inst, WordView w) {
  return subword(inst.u().apply(w), inst.v().apply(w));
}

inline bool is_solution(const pep::PepInstance& inst, WordView sigma) {
  if (!inst.r().dfa.accepts(sigma)) return false;
  if (!embeds(inst, sigma)) return false;
  const std::size_t n = sigma.size();
  for (std::size_t i = 0; i <= n; ++i) {
    Word pre = sub(sigma, 0, i), suf = sub(sigma, i, n);
    switch (inst.variant()) {
      case pep::Variant::plain:
        break;
      case pep::Variant::dir_partial:
        if (pep::contains(inst.rp(), pre) && !embeds(inst, pre)) return false;
        break;
      case pep::Variant::codir_partial:
        if (pep::contains(inst.rp(), suf) && !embeds(inst, suf)) return false;
        break;
      case pep::Variant::co_and_dir:
        if (!embeds(inst, pre) || !embeds(inst, suf)) return false;
        break;
    }
  }
  return true;
}

inline std::vector<Word> solutions(const pep::PepInstance& inst, std::size_t max_len) {
  std::vector<Word> out;
  for_each_word(inst.sigma()->size(), max_len, [&](const Word& w) {
    if (is_solution(inst, w)) out.push_back(w);
  });
  return out;
}

/// { y : some x with |x| ≥ k (> k when strict) has x·y ∈ L }, restricted to
/// |y| ≤ max_len, by enumerating words of L up to max_len + extra.
inline std::set<Word> suffixes(const pep::Dfa& d, std::size_t k, bool strict, std::size_t max_len,
                               std::size_t extra) {
  std::set<Word> out;
  for_each_word(d.alphabet()->size(), max_len + extra, [&](const Word& w) {
    if (!d.accepts(w)) return;
    for (std::size_t cut = strict ? k + 1 : k; cut <= w.size(); ++cut)
      if (w.size() - cut <= max_len) out.insert(sub(w, cut, w.size()));
  });
  return out;
}

inline std::set<Word> language(const pep::Dfa& d, std::size_t max_len) {
  std::set<Word> out;
  for_each_word(d.alphabet()->size(), max_len, [&](const Word& w) {
    if (d.accepts(w)) out.insert(w);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Bad sequences.

/// Longest subsequence increasing for ⊑, by trying every subset.
inline std::size_t longest_chain(const std::vector<Word>& seq) {
  std::size_t best = 0;
  const std::size_t n = seq.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    bool ok = true;
    for (std::size_t i = 1; i < idx.size() && ok; ++i) ok = subword(seq[idx[i - 1]], seq[idx[i]]);
    if (ok) best = std::max(best, idx.size());
  }
  return best;
}

// ---------------------------------------------------------------------------
// Post correspondence.

/// Shortest x ∈ Σ⁺ of length ≤ max_len with u(x) = v(x), if any.
inline std::optional<Word> pcp_solution(const pep::Morphism& u, const pep::Morphism& v,
                                        std::size_t max_len) {
  std::optional<Word> found;
  for_each_word(u.source()->size(), max_len, [&](const Word& x) {
    if (found || x.empty()) return;
    if (u.apply(x) == v.apply(x)) found = x;
  });
  return found;
}

}  // namespace oracle
