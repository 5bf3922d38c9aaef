// Acceptance run: one line per criterion, with the observed counts and the
// wall time against its limit. Exit status is nonzero if any line fails.
//
// One check is known to be unattainable: the stated bound |t_{b_i}| ≤ (i−1)K_v
// in criterion 4 fails already at i = 1, where t is never empty. The provable
// bound i·K_v is checked next to it. With --allow-known-red the exit status
// ignores a criterion whose only failures are that stated bound; its line
// still reads FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "pep/errors.hpp"
#include "pep/format.hpp"
#include "pep/higman.hpp"
#include "pep/reductions.hpp"
#include "pep/solver.hpp"
#include "pep/universal.hpp"

using namespace pep;
using oracle::cat;
using oracle::Rng;
using oracle::sub;
using oracle::subword;

namespace {

struct Tally {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> notes;  // first few failure descriptions
  std::map<std::string, std::uint64_t> failed_by;
  std::map<std::string, std::uint64_t> counters;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    ++failed_by[what];
    if (notes.size() < 5) notes.push_back(what);
  }
  std::uint64_t& operator[](const std::string& key) { return counters[key]; }
};

struct Requirement {
  std::string key;
  std::uint64_t at_least;
};

constexpr const char* kStatedTBound = "|t_{b_i}| <= (i-1)K_v (stated)";

enum class Outcome { pass, fail, known_red };

Outcome run(int id, const char* title, double limit_s, std::vector<Requirement> reqs,
            const std::function<void(Tally&)>& body) {
  Tally t;
  auto start = std::chrono::steady_clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    t.expect(false, std::string("uncaught: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = secs <= limit_s;
  for (const auto& r : reqs)
    if (t.counters[r.key] < r.at_least) ok = false;
  const bool only_known = t.failures > 0 && t.failed_by.size() == 1 && t.failed_by.count(kStatedTBound);
  const Outcome outcome = !ok || (t.failures > 0 && !only_known) ? Outcome::fail
                          : t.failures > 0                       ? Outcome::known_red
                                                                 : Outcome::pass;

  std::ostringstream line;
  line << (outcome == Outcome::pass ? "PASS" : "FAIL") << "  " << id << ". " << title << ": " << t.checks << " checks, "
       << t.failures << " failures";
  for (const auto& [k, v] : t.counters) line << ", " << k << "=" << v;
  for (const auto& r : reqs)
    if (t.counters[r.key] < r.at_least) line << " [" << r.key << " < " << r.at_least << "]";
  char tbuf[64];
  std::snprintf(tbuf, sizeof tbuf, " (%.2fs / %.0fs)", secs, limit_s);
  line << tbuf;
  if (outcome == Outcome::known_red) line << " [known red: stated bound unattainable]";
  std::puts(line.str().c_str());
  for (const auto& [what, n] : t.failed_by)
    if (n > 0 && t.failed_by.size() <= 8) std::printf("      %s: %llu\n", what.c_str(), static_cast<unsigned long long>(n));
  if (t.failed_by.size() > 8)
    for (const auto& n : t.notes) std::printf("      %s\n", n.c_str());
  std::fflush(stdout);
  return outcome;
}

std::string show(const Alphabet& a, WordView w) { return "[" + a.format(w) + "]"; }

// Random subsequence of w, each letter kept with probability p.
Word thin(Rng& rng, WordView w, double p) {
  Word out;
  for (Symbol a : w)
    if (rng.coin(p)) out.push_back(a);
  return out;
}

// Random superword of w with up to `extra` letters inserted.
Word thicken(Rng& rng, WordView w, std::size_t alphabet, std::size_t extra) {
  Word out(w.begin(), w.end());
  for (std::size_t n = rng.below(extra + 1); n > 0; --n)
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(rng.below(out.size() + 1)),
               static_cast<Symbol>(rng.below(alphabet)));
  return out;
}

Word rev(WordView w) { return Word(w.rbegin(), w.rend()); }

// ---------------------------------------------------------------------------
// 1. Subwords and concatenation.

void word_laws(Tally& t) {
  Rng rng(1);
  for (int it = 0; it < 12'000; ++it) {
    const std::size_t g = rng.between(1, 3);
    // y·z ⊑ s·t by construction: pick s, t, thin s·t, split the result.
    Word s = rng.word(g, 10), tt = rng.word(g, 10);
    Word yz = thin(rng, cat(s, tt), rng.coin() ? 0.5 : 0.9);
    if (yz.size() > 20) yz.resize(20);
    const std::size_t cut_at = rng.below(yz.size() + 1);
    Word y = sub(yz, 0, cut_at), z = sub(yz, cut_at, yz.size());
    if (y.size() > 10 || z.size() > 10) continue;
    ++t["tuples"];

    // Library embedding against the recursive definition, plus mirror symmetry.
    Word a = rng.word(g, 10), b = rng.word(g, 10);
    t.expect(is_subword(a, b) == subword(a, b), "is_subword disagrees with the definition");
    t.expect(is_subword(y, s) == subword(y, s), "is_subword disagrees with the definition");
    t.expect(is_subword(a, b) == is_subword(rev(a), rev(b)), "mirror symmetry");

    // Item 1.
    t.expect(subword(y, s) || subword(z, tt), "item 1");

    const bool z_in_t = subword(z, tt);
    if (z_in_t) {
      ++t["z_in_t"];
      Word x2 = longest_suffix_carrier(y, z, tt);
      t.expect(x2 == *oracle::longest_suffix_carrier(y, z, tt), "longest_suffix_carrier vs scan");
      t.expect(is_suffix(x2, y) && subword(sub(y, 0, y.size() - x2.size()), s), "item 2");
      Word x4 = longest_prefix_host(z, tt);
      t.expect(x4 == *oracle::longest_prefix_host(z, tt), "longest_prefix_host vs scan");
      t.expect(subword(y, cat(s, x4)), "item 4");
    } else {
      ++t["z_not_in_t"];
      Word x3 = shortest_prefix_overflow(z, tt);
      t.expect(x3 == oracle::shortest_prefix_overflow(z, tt), "shortest_prefix_overflow vs scan");
      t.expect(subword(cat(y, x3), s), "item 3");
      Word x5 = shortest_suffix_host(z, s, tt);
      t.expect(x5 == *oracle::shortest_suffix_host(z, s, tt), "shortest_suffix_host vs scan");
      t.expect(is_suffix(x5, s) && subword(y, sub(s, 0, s.size() - x5.size())), "item 5");
    }
    // Residuals on unconstrained inputs, including precondition failures.
    Word r1 = rng.word(g, 6), r2 = rng.word(g, 6), r3 = rng.word(g, 6);
    t.expect(shortest_prefix_overflow(r1, r2) == oracle::shortest_prefix_overflow(r1, r2),
             "shortest_prefix_overflow vs scan (free)");
    auto lsc = oracle::longest_suffix_carrier(r3, r1, r2);
    if (lsc) {
      t.expect(longest_suffix_carrier(r3, r1, r2) == *lsc, "longest_suffix_carrier vs scan (free)");
    } else {
      bool threw = false;
      try {
        longest_suffix_carrier(r3, r1, r2);
      } catch (const PreconditionError&) {
        threw = true;
      }
      t.expect(threw, "longest_suffix_carrier accepted z ⋢ t");
    }

    // Items 6 and 7. s·x ⊑ y·t with t ⊑ s, built as y = y1·y2 with s ⊑ y1
    // and x ⊑ y2·t.
    Word s6 = rng.word(g, 6);
    Word t6 = thin(rng, s6, 0.6);
    Word y1 = thicken(rng, s6, g, 2), y2 = rng.word(g, 3);
    Word y6 = cat(y1, y2);
    Word x6 = thin(rng, cat(y2, t6), 0.7);
    if (subword(cat(s6, x6), cat(y6, t6)) && subword(t6, s6)) {
      ++t["item6_premises"];
      for (std::size_t k = 1; k <= 4; ++k)
        t.expect(subword(cat(s6, power(x6, k)), cat(power(y6, k), t6)), "item 6");
    }
    // Mirror image for item 7: x·s ⊑ t·y.
    Word s7 = rev(s6), t7 = rev(t6), y7 = rev(y6), x7 = rev(x6);
    if (subword(cat(x7, s7), cat(t7, y7)) && subword(t7, s7)) {
      ++t["item7_premises"];
      for (std::size_t k = 1; k <= 4; ++k)
        t.expect(subword(cat(power(x7, k), s7), cat(t7, power(y7, k))), "item 7");
    }
    // A free draw for item 6 as well, so the construction is not the only source.
    Word fs = rng.word(g, 4), ft = thin(rng, fs, 0.5), fy = rng.word(g, 5), fx = rng.word(g, 3);
    if (subword(cat(fs, fx), cat(fy, ft))) {
      ++t["item6_free_premises"];
      for (std::size_t k = 1; k <= 4; ++k)
        t.expect(subword(cat(fs, power(fx, k)), cat(power(fy, k), ft)), "item 6 (free)");
    }
  }
}

// ---------------------------------------------------------------------------
// 2–4. Cutting, pumping and margins on codir solutions.

struct MarginCheck {
  // Margins from the definitions, in the codirect orientation.
  static void check(Tally& t, const ColoredSolution& c, bool check_stated_t) {
    const auto& inst = c.instance();
    const Word& w = c.word();
    const std::size_t n = w.size();
    auto U = [&](std::size_t i, std::size_t j) { return inst.u().apply(sub(w, i, j)); };
    auto V = [&](std::size_t i, std::size_t j) { return inst.v().apply(sub(w, i, j)); };
    const std::size_t ku = inst.u().expansion(), kv = inst.v().expansion();
    auto blue = c.blue_indices(), red = c.red_indices();
    const std::size_t n1 = blue.size(), n2 = red.size();
    for (std::size_t i = 0; i <= n; ++i)
      t.expect(c.is_blue(i) == subword(U(i, n), V(i, n)), "colour differs from the definition");
    for (std::size_t gi = 0; gi < n1; ++gi) {
      const std::size_t i = blue[gi];
      const Word& l = c.left_margin_u(i);
      const Word& s = c.right_margin_v(i);
      t.expect(l == *oracle::longest_suffix_carrier(U(0, i), U(i, n), V(i, n)), "l_i definition");
      t.expect(s == *oracle::longest_prefix_host(U(i, n), V(i, n)), "s_i definition");
      t.expect(l.size() <= gi * ku, "|l_{g_i}| bound");
      t.expect(s.size() <= (n1 - gi) * kv, "|s_{g_i}| bound");
      ++t["margins"];
    }
    for (std::size_t bi = 0; bi < n2; ++bi) {
      const std::size_t i = red[bi];
      const Word& r = c.right_margin_u(i);
      t.expect(r == oracle::shortest_prefix_overflow(U(i, n), V(i, n)), "r_i definition");
      t.expect(r.size() <= (n2 - bi) * ku, "|r_{b_i}| bound");
      const auto& tm = c.left_margin_v(i);
      auto expect_t = oracle::shortest_suffix_host(U(i, n), V(0, i), V(i, n));
      t.expect(tm.has_value() == expect_t.has_value() && (!tm || *tm == *expect_t), "t_i definition");
      if (tm) {
        t.expect(tm->size() <= (bi + 1) * kv, "|t_{b_i}| <= i*K_v");
        if (check_stated_t) t.expect(tm->size() <= bi * kv, kStatedTBound);
      }
      ++t["margins"];
    }
  }
};

struct Corpus {
  std::vector<std::pair<PepInstance, std::vector<Word>>> items;
};

// Random codir instances with at least one solution of length ≤ 10; up to
// eight solutions each, spread over the enumeration.
Corpus codir_corpus(std::uint64_t seed, std::size_t wanted) {
  Corpus c;
  Rng rng(seed);
  oracle::InstanceShape shape{2, 2, 2, 3, 3};
  SearchOptions o;
  o.max_len = 10;
  o.node_budget = 200'000;
  while (c.items.size() < wanted) {
    auto inst = oracle::random_instance(rng, Variant::codir_partial, shape);
    std::vector<Word> sols;
    try {
      enumerate_solutions(inst, o, [&](const Word& w) {
        sols.push_back(w);
        return sols.size() < 200;
      });
    } catch (const BudgetExceeded&) {
    }
    if (sols.empty()) continue;
    std::vector<Word> picked;
    const std::size_t step = std::max<std::size_t>(1, sols.size() / 8);
    for (std::size_t i = sols.size(); i-- > 0 && picked.size() < 8;)
      if ((sols.size() - 1 - i) % step == 0) picked.push_back(sols[i]);
    c.items.emplace_back(std::move(inst), std::move(picked));
  }
  return c;
}

const Corpus& shared_corpus() {
  static const Corpus c = codir_corpus(2, 1'000);
  return c;
}

void cutting(Tally& t) {
  const auto& corpus = shared_corpus();
  for (const auto& [inst, sols] : corpus.items) {
    ++t["instances"];
    for (const auto& sigma : sols) {
      t.expect(oracle::is_solution(inst, sigma), "corpus word is not a solution");
      ++t["solutions"];
      auto c = color_indices(inst, sigma);
      const std::size_t n = sigma.size();
      for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t b = a + 1; b <= n; ++b) {
          Word shorter;
          try {
            shorter = cut(c, a, b);
          } catch (const PreconditionError&) {
            continue;
          }
          ++t["accepted_cuts"];
          t.expect(shorter == cat(sub(sigma, 0, a), sub(sigma, b, n)), "cut changed the wrong factor");
          t.expect(shorter.size() < n && oracle::is_solution(inst, shorter),
                   "cut gave a non-solution: " + show(*inst.sigma(), sigma));
        }
      if (auto cert = find_cut_pair(c)) {
        Word shorter = cut(c, cert->a, cert->b);
        t.expect(oracle::is_solution(inst, shorter), "find_cut_pair certificate failed");
      }
      Word m = minimize_solution(inst, sigma);
      t.expect(oracle::is_solution(inst, m) && m.size() <= n, "minimize_solution");
      t.expect(!find_cut_pair(color_indices(inst, m)), "minimized word still cuts");
    }
  }
}

void pumping(Tally& t) {
  const auto& corpus = shared_corpus();
  for (const auto& [inst, sols] : corpus.items) {
    ++t["instances"];
    for (const auto& sigma : sols) {
      auto c = color_indices(inst, sigma);
      const Word& w = c.word();
      const std::size_t n = w.size();
      auto U = [&](std::size_t i, std::size_t j) { return inst.u().apply(sub(w, i, j)); };
      auto V = [&](std::size_t i, std::size_t j) { return inst.v().apply(sub(w, i, j)); };
      for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t b = a + 1; b <= n; ++b) {
          if (c.is_blue(a) != c.is_blue(b)) continue;
          if (c.is_blue(a)) {
            const Word &sa = c.right_margin_v(a), &sb = c.right_margin_v(b);
            if (subword(sb, sa)) {
              ++t["blue_inequalities"];
              for (std::size_t k = 1; k <= 4; ++k)
                t.expect(subword(cat(sa, power(U(a, b), k)), cat(power(V(a, b), k), sb)),
                         "blue inequality");
            }
          } else {
            const auto &ta = c.left_margin_v(a), &tb = c.left_margin_v(b);
            if (ta && tb && subword(*ta, *tb)) {
              ++t["red_inequalities"];
              for (std::size_t k = 1; k <= 4; ++k)
                t.expect(subword(cat(power(U(a, b), k), *tb), cat(*ta, power(V(a, b), k))),
                         "red inequality");
            }
          }
          Word first;
          try {
            first = pump(c, a, b, 1);
          } catch (const PreconditionError&) {
            continue;
          }
          ++t["accepted_pumps"];
          for (std::size_t k = 1; k <= 4; ++k) {
            Word longer = pump(c, a, b, k);
            Word expect = cat(cat(sub(sigma, 0, a), power(sub(sigma, a, b), k)), sub(sigma, b, n));
            t.expect(longer == expect, "pump changed the wrong factor");
            t.expect(oracle::is_solution(inst, longer),
                     "pump gave a non-solution: " + show(*inst.sigma(), sigma));
          }
        }
      if (auto cert = find_pump_pair(c))
        for (std::size_t k = 1; k <= 4; ++k)
          t.expect(oracle::is_solution(inst, pump(inst, *cert, k)), "find_pump_pair certificate failed");
    }
  }
}

void margins(Tally& t) {
  // Margin control on the corpus and on dir instances, whose colouring runs on
  // the mirror.
  for (const auto& [inst, sols] : shared_corpus().items)
    for (const auto& sigma : sols) {
      ++t["solutions"];
      MarginCheck::check(t, color_indices(inst, sigma), true);
    }
  Rng rng(4);
  SearchOptions o;
  o.max_len = 9;
  o.node_budget = 200'000;
  for (int found = 0; found < 200;) {
    auto inst = oracle::random_instance(rng, Variant::dir_partial, {2, 2, 2, 3, 3});
    std::vector<Word> sols;
    try {
      enumerate_solutions(inst, o, [&](const Word& w) {
        sols.push_back(w);
        return sols.size() < 4;
      });
    } catch (const BudgetExceeded&) {
    }
    if (sols.empty()) continue;
    ++found;
    for (const auto& s : sols) {
      ++t["dir_solutions"];
      auto c = color_indices(inst, s);
      t.expect(c.mirrored() && c.original_word() == s, "dir colouring orientation");
      MarginCheck::check(t, c, true);
    }
  }
}

// ---------------------------------------------------------------------------
// 5. Bounded-complete solving.

void solving(Tally& t) {
  Rng rng(5);
  const Variant variants[] = {Variant::plain, Variant::dir_partial, Variant::codir_partial,
                              Variant::co_and_dir};
  SearchOptions o;
  o.max_len = 8;
  o.bound_budget = 20'000;
  for (int it = 0; it < 520; ++it) {
    const Variant v = variants[it % 4];
    auto inst = oracle::random_instance(rng, v);
    ++t["instances_" + to_string(v)];
    auto expected = oracle::solutions(inst, 8);
    auto res = solve(inst, o);
    if (expected.empty()) {
      t.expect(res.kind != SolveResult::Kind::found, "solve found a solution the oracle did not");
    } else {
      ++t["solvable"];
      t.expect(res.kind == SolveResult::Kind::found && res.witness == expected.front(),
               "witness is not the length-lex least solution");
    }
    std::vector<Word> got;
    enumerate_solutions(inst, o, [&](const Word& w) {
      got.push_back(w);
      return true;
    });
    t.expect(got == expected, "enumeration differs from brute force");
    if (it % 4 == 0) {
      SearchOptions par = o;
      par.threads = 3;
      auto pr = solve(inst, par);
      t.expect(pr.witness == res.witness, "threaded solve differs");
    }
  }
}

// ---------------------------------------------------------------------------
// 6. Worked encoding example.

void golden_encoding(Tally& t) {
  auto s = parse_semithue(
      "upsilon a b c\nrule a b -> b c\nrule c c -> a a\nP1 = a b c\nP2 = b a a\n");
  auto e = encode_semithue(s);
  const auto& A = *e.layout.alphabet();
  const auto& ups = *s.upsilon;
  const std::string sigma_pi =
      "a'' ~†'' b'' ~†'' c'' ~†'' a ~b b ~c c ~c †' ~b' †' ~c' †' ~c' b ~b a ~c a ~c "
      "b'' ~†'' a'' ~†'' a'' ~†''";
  Word sigma = A.parse_word(sigma_pi);
  t.expect(sigma.size() == 30, "σ_π has 30 tokens");
  t.expect(oracle::is_solution(e.instance, sigma), "σ_π is not accepted");
  Derivation pi{{ups.parse_word("a b c"), ups.parse_word("b c c"), ups.parse_word("b a a")}};
  t.expect(derivation_to_solution(e, pi) == sigma, "derivation does not encode to σ_π");
  t.expect(A.format(e.instance.u().apply(sigma)) == "a ~b b ~c c ~c † ~† † ~† † ~† b ~b a ~c a ~c",
           "u(σ_π) row");
  t.expect(A.format(e.instance.v().apply(sigma)) ==
               "a ~a ~b ~c b ~a ~b ~c c ~a ~b ~c † ~† † ~† † ~† a b c ~b a b c ~c a b c ~c "
               "† ~† † ~† † ~† b ~a ~b ~c a ~a ~b ~c a ~a ~b ~c",
           "v(σ_π) row");
  auto d = decode_semithue_solution(e, sigma);
  t.expect(d.words.size() == 3 && ups.format(d.words[0]) == "a b c" &&
               ups.format(d.words[1]) == "b c c" && ups.format(d.words[2]) == "b a a",
           "decoding");
  auto segs = segments(e.layout, sigma);
  bool equal = segs.size() == 5;
  for (std::size_t i = 1; equal && i + 1 < segs.size(); ++i) equal = segs[i].second - segs[i].first == 6;
  t.expect(equal, "segment lengths");
}

// ---------------------------------------------------------------------------
// 7. Semi-Thue round trip.

// Even, nonzero reachability from P1 to P2 in at most max_steps rewrites,
// by a breadth-first walk over (word, parity).
bool even_reachable(const Alphabet& ups, const std::vector<std::pair<Word, Word>>& rules,
                    const std::set<Word>& p1, const std::set<Word>& p2, std::size_t max_steps) {
  (void)ups;
  std::set<Word> frontier = p1;
  for (std::size_t step = 1; step <= max_steps; ++step) {
    std::set<Word> next;
    for (const auto& x : frontier)
      for (const auto& [l, r] : rules)
        for (std::size_t i = 0; i + l.size() <= x.size(); ++i)
          if (std::equal(l.begin(), l.end(), x.begin() + static_cast<std::ptrdiff_t>(i))) {
            Word y = x;
            std::copy(r.begin(), r.end(), y.begin() + static_cast<std::ptrdiff_t>(i));
            next.insert(y);
          }
    frontier = std::move(next);
    if (step % 2 == 0)
      for (const auto& y : frontier)
        if (p2.count(y)) return true;
  }
  return false;
}

std::string words_regex(const Alphabet& a, const std::set<Word>& ws) {
  std::string out;
  for (const auto& w : ws) {
    if (!out.empty()) out += " | ";
    out += "( " + a.format(w) + " )";
  }
  return out;
}

void semithue_round_trip(Tally& t) {
  Rng rng(7);
  for (int it = 0; it < 120; ++it) {
    const std::size_t n = rng.between(1, 3);
    // Length-3 words make unsolvable encodings too large to exhaust at the
    // 4-step cap, so the words stay at length 1 or 2.
    const std::size_t len = rng.between(1, 2);
    auto ups = oracle::letters(n);
    std::ostringstream text;
    text << "upsilon";
    for (const auto& tok : ups->tokens()) text << " " << tok;
    text << "\n";
    std::vector<std::pair<Word, Word>> rules;
    for (std::size_t r = rng.between(1, 3); r > 0; --r) {
      const std::size_t rl = rng.between(1, std::min<std::size_t>(len, 2));
      Word l = rng.word_exact(n, rl), rr = rng.word_exact(n, rl);
      rules.emplace_back(l, rr);
      text << "rule " << ups->format(l) << " -> " << ups->format(rr) << "\n";
    }
    std::set<Word> p1, p2;
    for (std::size_t k = rng.between(1, 2); k > 0; --k) p1.insert(rng.word_exact(n, len));
    for (std::size_t k = rng.between(1, 2); k > 0; --k) p2.insert(rng.word_exact(n, len));
    text << "P1 = " << words_regex(*ups, p1) << "\nP2 = " << words_regex(*ups, p2) << "\n";
    auto sys = parse_semithue(text.str());
    auto e = encode_semithue(sys);
    ++t["systems"];

    const bool expected = even_reachable(*ups, rules, p1, p2, 4);
    ReachOptions ro;
    ro.max_steps = 4;
    auto reach = semithue_reach_oracle(sys, ro);
    t.expect(reach.even.has_value() == expected, "library reachability differs from the BFS");

    SearchOptions o;
    o.max_len = 18 * len;
    o.node_budget = 500'000'000;
    auto res = solve(e.instance, o);
    const bool found = res.kind == SolveResult::Kind::found;
    t.expect(found == expected, "solvability differs from reachability: " + text.str());
    if (expected) ++t["reachable"];
    if (found) {
      t.expect(oracle::is_solution(e.instance, *res.witness), "witness fails the definition");
      auto d = decode_semithue_solution(e, *res.witness);
      t.expect(derivation_to_solution(e, d) == *res.witness, "solution → derivation → solution");
      bool valid = d.steps() % 2 == 0 && d.steps() > 0 && p1.count(d.words.front()) &&
                   p2.count(d.words.back());
      for (std::size_t i = 0; valid && i + 1 < d.words.size(); ++i)
        valid = rewrites_to(sys, d.words[i], d.words[i + 1]);
      t.expect(valid, "decoded derivation is not a derivation");
    }
    if (reach.even) {
      Word sigma = derivation_to_solution(e, *reach.even);
      t.expect(oracle::is_solution(e.instance, sigma), "encoded derivation is not a solution");
      t.expect(decode_semithue_solution(e, sigma).words == reach.even->words,
               "derivation → solution → derivation");
    }
  }
}

// ---------------------------------------------------------------------------
// 8. Post correspondence.

void pcp(Tally& t) {
  Rng rng(8);
  for (int it = 0; it < 150; ++it) {
    auto sigma = oracle::letters(rng.between(1, 3), "x");
    auto gamma = oracle::letters(2);
    std::vector<Word> ui, vi;
    for (std::size_t a = 0; a < sigma->size(); ++a) {
      ui.push_back(rng.word_exact(2, rng.between(1, 3)));
      vi.push_back(rng.word_exact(2, rng.between(1, 3)));
    }
    // Plant a solution x0·x1 in a third of the instances by cutting one word
    // at two different places.
    if (it % 3 == 0 && sigma->size() >= 2) {
      Word whole = rng.word_exact(2, rng.between(3, 5));
      const std::size_t i = rng.between(1, whole.size() - 1);
      std::size_t j = rng.between(1, whole.size() - 2);
      if (j >= i) ++j;
      ui[0] = sub(whole, 0, i), ui[1] = sub(whole, i, whole.size());
      vi[0] = sub(whole, 0, j), vi[1] = sub(whole, j, whole.size());
    }
    bool has_empty = false;
    for (std::size_t a = 0; a < sigma->size(); ++a) has_empty |= ui[a].empty() && vi[a].empty();
    if (has_empty) continue;
    PcpInstance p{Morphism(sigma, gamma, ui), Morphism(sigma, gamma, vi)};
    auto e = encode_pcp(p);
    ++t["instances"];
    auto x = oracle::pcp_solution(p.u, p.v, 5);
    SearchOptions o;
    o.max_len = 7;
    auto res = solve(e.instance, o);
    const bool found = res.kind == SolveResult::Kind::found;
    t.expect(found == x.has_value(), "PCP solvability differs: " + format_pcp(p));
    if (x) ++t["solvable"];
    if (found) {
      const Word& w = *res.witness;
      t.expect(w.size() >= 3 && w[0] == e.start && w[1] == e.split, "witness shape");
      Word tail = sub(w, 2, w.size());
      t.expect(p.u.apply(tail) == p.v.apply(tail), "witness tail is not a PCP solution");
      t.expect(oracle::is_solution(e.instance, w), "witness fails the definition");
    }
    if (x) t.expect(oracle::is_solution(e.instance, pcp_to_solution(e, *x)), "1·2·x is not a solution");
  }
}

// ---------------------------------------------------------------------------
// 9. Reductions between universal questions.

std::set<Word> non_solutions(const PepInstance& inst, std::size_t max_len) {
  std::set<Word> out;
  oracle::for_each_word(inst.sigma()->size(), max_len, [&](const Word& s) {
    if (inst.r().dfa.accepts(s) && !oracle::is_solution(inst, s)) out.insert(s);
  });
  return out;
}

// Prefixes x with x·y ∈ R and min_x ≤ |x| ≤ max_x, up to `limit` of them.
std::vector<Word> hosts(const PepInstance& inst, const Word& y, std::size_t min_x, std::size_t max_x,
                        std::size_t limit) {
  std::vector<Word> out;
  oracle::for_each_word(inst.sigma()->size(), max_x, [&](const Word& x) {
    if (out.size() < limit && x.size() >= min_x && inst.r().dfa.accepts(cat(x, y))) out.push_back(x);
  });
  return out;
}

void reductions(Tally& t) {
  Rng rng(9);
  const std::size_t L = 6;
  for (int it = 0; it < 220; ++it) {
    const Variant variant = it % 4 == 3 ? Variant::dir_partial : Variant::codir_partial;
    auto inst = oracle::random_instance(rng, variant, {2, 2, 2, 2, 3});
    ++t["instances"];

    // Padding: non-solutions of the padded instance are the padded non-solutions.
    auto padded = pad_forall_to_forall_inf(inst);
    const Symbol z = static_cast<Symbol>(inst.sigma()->size());
    std::set<Word> expect_pad;
    for (const auto& s : non_solutions(inst, L))
      for (std::size_t k = 0; s.size() + k <= L; ++k)
        expect_pad.insert(variant == Variant::dir_partial ? cat(Word(k, z), s) : cat(s, Word(k, z)));
    t.expect(non_solutions(padded, L) == expect_pad, "padding changes the non-solutions");

    if (variant != Variant::codir_partial) continue;
    ++t["codir_reductions"];
    auto red = reduce_to_forall_inf_pep(inst);
    const Dfa& rp = inst.rp_dfa();
    const std::size_t states = inst.r().dfa.state_count();
    const std::size_t extra = red.k_r + 2 + states;

    // Conjuncts against brute-force suffix generation.
    t.expect(oracle::language(red.x1.dfa, L) == oracle::language(inst.r().dfa, L), "X1");
    auto filter = [&](std::set<Word> s) {
      for (auto it2 = s.begin(); it2 != s.end();) it2 = rp.accepts(*it2) ? std::next(it2) : s.erase(it2);
      return s;
    };
    t.expect(oracle::language(red.x2.dfa, L) == filter(oracle::suffixes(inst.r().dfa, 0, false, L, extra)),
             "X2 vs brute-force suffixes");
    t.expect(oracle::language(red.x3.dfa, L) ==
                 filter(oracle::suffixes(inst.r().dfa, red.k_r, true, L, extra)),
             "X3 vs brute-force suffixes");
    if (!red.x3.dfa.is_empty()) ++t["x3_nonempty"];

    const PepInstance& out = red.output;
    t.expect(out.variant() == Variant::plain, "output is plain");

    // Input non-solutions land on output non-solutions.
    for (const auto& s : non_solutions(inst, L)) {
      auto cls = classify_non_solution(inst, s);
      Word image = cls.type1 ? s : sub(s, *cls.split, s.size());
      t.expect(out.r().dfa.accepts(image) && !oracle::is_solution(out, image),
               "input non-solution has no output counterpart");
      ++t["forward_maps"];
    }

    // Output non-solutions come from input non-solutions; X3 ones from at
    // least two.
    for (const auto& rho : non_solutions(out, L)) {
      Word core = rho;
      while (red.pad && !core.empty() && core.back() == *red.pad) core.pop_back();
      const bool tail_padded = core.size() != rho.size();
      std::vector<Word> xs = hosts(inst, core, 0, extra, 1);
      bool in_x3 = red.x3.dfa.accepts(core);
      if (in_x3) xs = hosts(inst, core, red.k_r + 1, red.k_r + 1 + 2 * states, 2);
      const std::size_t need = tail_padded || in_x3 ? 2 : 1;
      std::size_t witnessed = 0;
      for (const auto& x : xs)
        if (!oracle::is_solution(inst, cat(x, core))) ++witnessed;
      if (!tail_padded && !in_x3 && witnessed == 0 && inst.r().dfa.accepts(core) &&
          !oracle::is_solution(inst, core))
        witnessed = 1;
      t.expect(witnessed >= need, "output non-solution without an input source");
      ++t["backward_maps"];
      if (auto loop = find_loop_certificate(out, rho)) {
        ++t["loops"];
        for (std::size_t k = loop->from_k; k < loop->from_k + 3; ++k) {
          Word big = loop->word(k);
          t.expect(out.r().dfa.accepts(big) && !oracle::is_solution(out, big), "output loop fails");
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 10. Higman grid.

// Longest controlled n-bad sequence over s letters, by plain enumeration with
// the chain computed from scratch for every extension.
std::size_t longest_bad(std::size_t n, std::size_t k, std::size_t s, std::uint64_t& visited) {
  std::vector<Word> seq;
  std::size_t best = 0;
  std::function<void()> go = [&] {
    best = std::max(best, seq.size());
    const std::size_t bound = (seq.size() + 1) * k;
    oracle::for_each_word(s, bound, [&](const Word& x) {
      seq.push_back(x);
      ++visited;
      // Longest ⊑-chain ending anywhere, by dynamic programming.
      std::vector<std::size_t> chain(seq.size(), 1);
      std::size_t longest = 0;
      for (std::size_t j = 0; j < seq.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i)
          if (subword(seq[i], seq[j])) chain[j] = std::max(chain[j], chain[i] + 1);
        longest = std::max(longest, chain[j]);
      }
      if (longest < n) go();
      seq.pop_back();
    });
  };
  go();
  return best;
}

void higman(Tally& t) {
  for (std::size_t k = 0; k <= 3; ++k)
    for (std::size_t s = 1; s <= 3; ++s) t.expect(h_bound(1, k, s).value == 0u, "H(1,k,s) = 0");
  for (std::size_t s = 1; s <= 3; ++s) t.expect(h_bound(2, 0, s).value == 1u, "H(2,0,s) = 1");
  {
    // Tree for n = 2, k = 1, one letter: (ε) dead-ends since ε embeds
    // everywhere; (a, ε) is the longest branch.
    auto h = h_bound(2, 1, 1);
    t.expect(h.value == 2u, "H(2,1,1) = 2");
    std::uint64_t visited = 0;
    t.expect(longest_bad(2, 1, 1, visited) == 2, "tree oracle for H(2,1,1)");
  }

  auto report = monotonicity_probe(3, 2, 2, 2'000'000);
  t.expect(report.ok(), "monotonicity: " + (report.ok() ? std::string() : report.violations.front()));
  for (const auto& p : report.grid) {
    if (!p.value) {
      ++t["grid_over_budget"];
      continue;
    }
    ++t["grid_points"];
    if (p.n < 2) continue;
    // Exhaustive check that nothing longer than H is bad and controlled, and
    // that the reported branch is itself bad and controlled.
    std::uint64_t visited = 0;
    const std::size_t brute = longest_bad(p.n, p.k, p.s, visited);
    t["exhaustive_sequences"] += visited;
    t.expect(brute == *p.value, "H(" + std::to_string(p.n) + "," + std::to_string(p.k) + "," +
                                    std::to_string(p.s) + ") = " + std::to_string(*p.value) +
                                    " but exhaustive search gives " + std::to_string(brute));
    auto h = h_bound(p.n, p.k, p.s);
    t.expect(h.longest_branch.size() == *p.value && !is_n_good(h.longest_branch, p.n) &&
                 is_controlled(h.longest_branch, p.k),
             "reported branch");
  }
}

}  // namespace

int main(int argc, char** argv) {
  const bool allow_known_red = argc > 1 && std::string(argv[1]) == "--allow-known-red";
  int failed = 0, known = 0;
  auto tally = [&](Outcome o) {
    failed += o != Outcome::pass;
    known += o == Outcome::known_red;
  };
  tally(run(1, "subword laws and residuals", 30, {{"tuples", 10'000}}, word_laws));
  tally(run(2, "cutting soundness", 120, {{"instances", 1'000}}, cutting));
  tally(run(3, "iteration soundness", 120, {{"instances", 1'000}}, pumping));
  tally(run(4, "margin control", 120, {{"solutions", 1'000}}, margins));
  tally(run(5, "bounded-complete solving", 300,
                {{"instances_plain", 125}, {"instances_dir", 125}, {"instances_codir", 125},
                 {"instances_coanddir", 125}},
                solving));
  tally(run(6, "worked encoding example", 1, {}, golden_encoding));
  tally(run(7, "semi-Thue round trip", 600, {{"systems", 100}}, semithue_round_trip));
  tally(run(8, "PCP correspondence", 300, {{"instances", 100}}, pcp));
  tally(run(9, "universal-question reductions", 300, {{"instances", 200}}, reductions));
  tally(run(10, "Higman grid", 120, {{"grid_points", 1}}, higman));
  std::printf("%d of 10 criteria failed (%d known red)\n", failed, known);
  const int hard = failed - (allow_known_red ? known : 0);
  return hard == 0 ? 0 : 1;
}
