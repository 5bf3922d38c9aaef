#include "pep/solver.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "pep/errors.hpp"
#include "pep/higman.hpp"

namespace pep {

namespace {

constexpr int kDead = INT_MIN / 4;

// Tables shared by every search layer. `best[g][r][q]` is the largest value of
// count_g(v(w)) − count_g(u(w)) over words w of length exactly r leading from q
// to an accepting state of R (kDead if there is none). Every variant needs
// u(σ) ⊑ v(σ), so a prefix whose deficit cannot be repaid is dead; co&dir needs
// the same for every suffix.
struct Tables {
  std::size_t max_len = 0;
  std::size_t states = 0;
  std::size_t letters = 0;
  std::vector<char> live;        // [r][q]
  std::vector<Symbol> tracked;   // target letters occurring in some u-image
  std::vector<int> delta;        // [a][g]: count_g(u(a)) − count_g(v(a))
  std::vector<int> best;         // [g][r][q]

  bool is_live(std::size_t r, State q) const { return live[r * states + q]; }
  int best_at(std::size_t g, std::size_t r, State q) const {
    return best[(g * (max_len + 1) + r) * states + q];
  }
};

Tables build_tables(const PepInstance& inst, std::size_t max_len) {
  const Dfa& d = inst.r().dfa;
  Tables t;
  t.max_len = max_len;
  t.states = d.state_count();
  t.letters = inst.sigma()->size();
  const std::size_t gsize = inst.gamma()->size();
  std::vector<char> in_u(gsize, 0);
  for (Symbol a = 0; a < t.letters; ++a)
    for (Symbol g : inst.u().image(a)) in_u[g] = 1;
  for (Symbol g = 0; g < gsize; ++g)
    if (in_u[g]) t.tracked.push_back(g);
  const std::size_t G = t.tracked.size();
  t.delta.assign(t.letters * G, 0);
  for (Symbol a = 0; a < t.letters; ++a)
    for (std::size_t gi = 0; gi < G; ++gi) {
      const Symbol g = t.tracked[gi];
      int cu = static_cast<int>(std::count(inst.u().image(a).begin(), inst.u().image(a).end(), g));
      int cv = static_cast<int>(std::count(inst.v().image(a).begin(), inst.v().image(a).end(), g));
      t.delta[a * G + gi] = cu - cv;
    }

  const std::size_t Q = t.states;
  t.live.assign((max_len + 1) * Q, 0);
  for (State q = 0; q < Q; ++q) t.live[q] = d.is_accepting(q);
  for (std::size_t r = 1; r <= max_len; ++r)
    for (State q = 0; q < Q; ++q)
      for (Symbol a = 0; a < t.letters && !t.live[r * Q + q]; ++a)
        if (t.live[(r - 1) * Q + d.next(q, a)]) t.live[r * Q + q] = 1;

  t.best.assign(G * (max_len + 1) * Q, kDead);
  for (std::size_t gi = 0; gi < G; ++gi) {
    int* base = t.best.data() + gi * (max_len + 1) * Q;
    for (State q = 0; q < Q; ++q)
      if (d.is_accepting(q)) base[q] = 0;
    for (std::size_t r = 1; r <= max_len; ++r)
      for (State q = 0; q < Q; ++q) {
        int b = kDead;
        for (Symbol a = 0; a < t.letters; ++a) {
          int next = base[(r - 1) * Q + d.next(q, a)];
          if (next != kDead) b = std::max(b, next - t.delta[a * G + gi]);
        }
        base[r * Q + q] = b;
      }
  }
  return t;
}

// Subtrees already searched without finding a solution, keyed by everything
// the rest of the search depends on (see Layer::memo_key). Shared across
// length layers of one single-threaded search.
struct DeadStates {
  static constexpr std::size_t kCap = 4'000'000;
  std::unordered_set<std::u32string> keys;
  // co&dir: whether the suffix constraints alone can still be met from
  // (q, remaining length, hardest tail); see Layer::suffixes_alive.
  std::unordered_map<std::u32string, bool> suffix_alive;
};

// Depth-first search over words of one exact length, children in token order.
class Layer {
 public:
  Layer(const PepInstance& inst, const Tables& t, std::size_t length, std::uint64_t budget,
        std::atomic<std::uint64_t>& nodes, DeadStates* dead)
      : inst_(inst), t_(t), length_(length), budget_(budget), nodes_(nodes),
        r_(inst.r().dfa), G_(t.tracked.size()) {
    prefix_all_ = inst.variant() == Variant::co_and_dir;
    // A non-regular R′ gets no prefix pruning; the leaf check still applies.
    prefix_rp_ = inst.variant() == Variant::dir_partial && is_regular(inst.rp());
    if (prefix_rp_) rp_ = &inst.rp_dfa();
    // The key below captures the future exactly except for codir suffix
    // constraints and the length predicate.
    const bool keyed = inst.variant() == Variant::plain || inst.variant() == Variant::co_and_dir ||
                       prefix_rp_;
    if (keyed) dead_ = dead;
  }

  // Visits solutions whose first letter lies in [first_lo, first_hi).
  // Returns false when the visitor asked to stop.
  bool run(Symbol first_lo, Symbol first_hi, const std::function<bool(const Word&)>& visit) {
    visit_ = &visit;
    word_.clear();
    ubuf_.clear();
    vbuf_.clear();
    deficit_.assign(G_, 0);
    ucount_.assign(G_, 0);
    Frame root{r_.initial(), rp_ ? rp_->initial() : 0, 0, 0, 0, 0};
    if (!admissible(root, 0)) return true;
    if (length_ == 0) return leaf();
    return expand(root, first_lo, first_hi);
  }

 private:
  struct Frame {
    State q;
    State qp;
    std::size_t p;  // greedy: letters of u matched so far
    std::size_t j;  // greedy: letters of v scanned so far
    // co&dir: greedy state of the hardest suffix start. Starts compare by
    // their unmatched u tail (longer is harder) and then by unused v slack
    // (less is harder); greedy matching preserves that order, so one start
    // stands for all of them.
    std::size_t hp, hj;
  };

  bool admissible(const Frame& f, std::size_t depth) {
    const std::size_t rem = length_ - depth;
    if (!t_.is_live(rem, f.q)) return false;
    if (prefix_all_) {
      if (!dead_) {
        // The hardest tail has to be repaid letter by letter by the rest.
        const std::size_t end = ubuf_.size() * G_;
        for (std::size_t g = 0; g < G_; ++g)
          if (t_.best_at(g, rem, f.q) < ucount_[end + g] - ucount_[f.hp * G_ + g]) return false;
      } else if (!suffixes_alive(f.q, rem, slice(ubuf_, f.hp, ubuf_.size()))) {
        return false;
      }
    } else {
      for (std::size_t g = 0; g < G_; ++g)
        if (t_.best_at(g, rem, f.q) < deficit_[g]) return false;
    }
    if (depth < length_ && depth > 0) {
      bool constrained = prefix_all_ || (prefix_rp_ && rp_->is_accepting(f.qp));
      if (constrained && f.p < ubuf_.size()) return false;
    }
    return true;
  }

  // co&dir with the prefix constraints dropped: is there a word s of length
  // rem taking q into R such that tail·u(s) ⊑ v(s) and u(τ) ⊑ v(τ) for every
  // suffix τ of s? By the dominance of the hardest start this is a finite
  // recursion on (q, rem, tail), and a false answer prunes every node with
  // that signature whatever its prefix.
  bool suffixes_alive(State q, std::size_t rem, const Word& tail) {
    if (!t_.is_live(rem, q)) return false;
    for (std::size_t g = 0; g < G_; ++g) {
      const auto c = static_cast<int>(std::count(tail.begin(), tail.end(), t_.tracked[g]));
      if (t_.best_at(g, rem, q) < c) return false;
    }
    if (rem == 0) return tail.empty();
    std::u32string key;
    key.push_back(q);
    key.push_back(static_cast<char32_t>(rem));
    key.append(tail.begin(), tail.end());
    if (auto it = dead_->suffix_alive.find(key); it != dead_->suffix_alive.end()) return it->second;
    bool alive = false;
    Word next;
    for (Symbol a = 0; a < t_.letters && !alive; ++a) {
      if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_)
        throw BudgetExceeded("node budget exhausted", nodes_.load());
      next = tail;
      const Word& ua = inst_.u().image(a);
      next.insert(next.end(), ua.begin(), ua.end());
      std::size_t p = 0;
      for (Symbol b : inst_.v().image(a))
        if (p < next.size() && next[p] == b) ++p;
      next.erase(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(p));
      alive = suffixes_alive(r_.next(q, a), rem - 1, next);
    }
    dead_->suffix_alive.emplace(std::move(key), alive);
    return alive;
  }

  bool leaf() {
    if (!check_solution(inst_, word_).ok()) return true;
    ++found_;
    return (*visit_)(word_);
  }

  // (q, q′, remaining length, hardest suffix tail, prefix tail, prefix slack).
  // Which completions are solutions depends on nothing else.
  const std::u32string& memo_key(const Frame& f, std::size_t depth) {
    key_.clear();
    key_.push_back(f.q);
    key_.push_back(f.qp);
    key_.push_back(static_cast<char32_t>(length_ - depth));
    key_.push_back(static_cast<char32_t>(ubuf_.size() - f.hp));
    key_.append(ubuf_.begin() + static_cast<std::ptrdiff_t>(f.hp), ubuf_.end());
    key_.push_back(static_cast<char32_t>(ubuf_.size() - f.p));
    key_.append(ubuf_.begin() + static_cast<std::ptrdiff_t>(f.p), ubuf_.end());
    key_.append(vbuf_.begin() + static_cast<std::ptrdiff_t>(f.j), vbuf_.end());
    return key_;
  }

  bool descend(const Frame& c, std::size_t depth) {
    if (!dead_) return expand(c, 0, static_cast<Symbol>(t_.letters));
    std::u32string key = memo_key(c, depth);
    if (dead_->keys.count(key)) return true;
    const std::uint64_t before = found_;
    bool go_on = expand(c, 0, static_cast<Symbol>(t_.letters));
    if (go_on && found_ == before && dead_->keys.size() < DeadStates::kCap)
      dead_->keys.insert(std::move(key));
    return go_on;
  }

  static void greedy(const Word& u, const Word& v, std::size_t& p, std::size_t& j) {
    while (j < v.size() && p < u.size()) {
      if (v[j] == u[p]) ++p;
      ++j;
    }
  }

  bool expand(const Frame& f, Symbol lo, Symbol hi) {
    const std::size_t depth = word_.size();
    for (Symbol a = lo; a < hi; ++a) {
      if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_)
        throw BudgetExceeded("node budget exhausted", nodes_.load());
      const Word& ua = inst_.u().image(a);
      const Word& va = inst_.v().image(a);
      const std::size_t ulen = ubuf_.size(), vlen = vbuf_.size();
      ubuf_.insert(ubuf_.end(), ua.begin(), ua.end());
      vbuf_.insert(vbuf_.end(), va.begin(), va.end());
      Frame c{r_.next(f.q, a), rp_ ? rp_->next(f.qp, a) : 0, f.p, f.j, f.hp, f.hj};
      greedy(ubuf_, vbuf_, c.p, c.j);
      if (prefix_all_) {
        for (std::size_t i = ulen; i < ubuf_.size(); ++i) {
          const std::size_t base = ucount_.size() - G_;
          for (std::size_t g = 0; g < G_; ++g)
            ucount_.push_back(ucount_[base + g] + (ubuf_[i] == t_.tracked[g] ? 1 : 0));
        }
        greedy(ubuf_, vbuf_, c.hp, c.hj);
        // Without a tail, the suffix starting here is at least as hard.
        if (c.hp == ubuf_.size()) c.hj = vbuf_.size();
      } else {
        for (std::size_t g = 0; g < G_; ++g) deficit_[g] += t_.delta[a * G_ + g];
      }
      word_.push_back(a);
      bool go_on = true;
      if (admissible(c, depth + 1)) go_on = depth + 1 == length_ ? leaf() : descend(c, depth + 1);
      word_.pop_back();
      if (prefix_all_) {
        ucount_.resize((ulen + 1) * G_);
      } else {
        for (std::size_t g = 0; g < G_; ++g) deficit_[g] -= t_.delta[a * G_ + g];
      }
      ubuf_.resize(ulen);
      vbuf_.resize(vlen);
      if (!go_on) return false;
    }
    return true;
  }

  const PepInstance& inst_;
  const Tables& t_;
  std::size_t length_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t>& nodes_;
  const Dfa& r_;
  const Dfa* rp_ = nullptr;
  std::size_t G_;
  bool prefix_all_ = false;
  bool prefix_rp_ = false;
  DeadStates* dead_ = nullptr;
  std::uint64_t found_ = 0;
  const std::function<bool(const Word&)>* visit_ = nullptr;
  Word word_, ubuf_, vbuf_;
  std::vector<int> deficit_;
  std::vector<int> ucount_;  // [k][g]: count_g in ubuf_[0, k)
  std::u32string key_;
};

// One length layer, optionally split across workers by first letter. Each
// worker owns a contiguous block of first letters; solutions are replayed in
// canonical order afterwards, so the visitor sees the same sequence whatever
// the thread count.
bool search_layer(const PepInstance& inst, const Tables& t, std::size_t length,
                  const SearchOptions& opts, std::atomic<std::uint64_t>& nodes,
                  const std::function<bool(const Word&)>& visit, bool first_only, DeadStates& dead) {
  const Symbol k = static_cast<Symbol>(t.letters);
  if (opts.threads <= 1 || length == 0 || k <= 1) {
    Layer layer(inst, t, length, opts.node_budget, nodes, &dead);
    return layer.run(0, k, visit);
  }
  std::vector<std::vector<Word>> found(k);
  std::vector<std::exception_ptr> errors(k);
  std::atomic<Symbol> next{0};
  std::atomic<Symbol> best_first{k};
  auto worker = [&] {
    for (;;) {
      Symbol a = next.fetch_add(1);
      if (a >= k) return;
      if (first_only && a > best_first.load()) continue;
      try {
        DeadStates local;
        Layer layer(inst, t, length, opts.node_budget, nodes, &local);
        layer.run(a, a + 1, [&](const Word& w) {
          found[a].push_back(w);
          if (first_only) {
            Symbol cur = best_first.load();
            while (a < cur && !best_first.compare_exchange_weak(cur, a)) {}
            return false;
          }
          return true;
        });
      } catch (...) {
        errors[a] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(opts.threads, k);
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (Symbol a = 0; a < k; ++a) {
    if (errors[a]) std::rethrow_exception(errors[a]);
    for (const auto& w : found[a])
      if (!visit(w)) return false;
  }
  return true;
}

PepInstance oriented_for_bounds(const PepInstance& inst) {
  return inst.variant() == Variant::dir_partial ? mirror_instance(inst) : inst;
}

bool r_bounded_by(const PepInstance& inst, std::size_t max_len) {
  return compile(strip_short(inst.r().dfa.to_nfa(), max_len)).is_empty();
}

void verify_pump(const PepInstance& inst, const PumpCertificate& cert) {
  for (std::size_t k : {1, 2, 3, 4}) pump(inst, cert, k);
}

bool has_pumping_theory(const PepInstance& inst) {
  return inst.variant() != Variant::co_and_dir && is_regular(inst.rp());
}

}  // namespace

SearchStats enumerate_solutions(const PepInstance& inst, const SearchOptions& opts,
                                const std::function<bool(const Word&)>& visit) {
  Tables t = build_tables(inst, opts.max_len);
  std::atomic<std::uint64_t> nodes{0};
  DeadStates dead;
  SearchStats stats;
  for (std::size_t len = 0; len <= opts.max_len; ++len) {
    stats.lengths_searched = len + 1;
    bool go_on = search_layer(inst, t, len, opts, nodes, visit, false, dead);
    stats.nodes = nodes.load();
    if (!go_on) break;
  }
  return stats;
}

SolveResult solve(const PepInstance& inst, const SearchOptions& opts) {
  SolveResult res;
  res.max_len = opts.max_len;
  Tables t = build_tables(inst, opts.max_len);
  std::atomic<std::uint64_t> nodes{0};
  DeadStates dead;
  for (std::size_t len = 0; len <= opts.max_len && !res.witness; ++len) {
    res.stats.lengths_searched = len + 1;
    search_layer(inst, t, len, opts, nodes,
                 [&](const Word& w) {
                   res.witness = w;
                   return false;
                 },
                 true, dead);
  }
  res.stats.nodes = nodes.load();
  if (res.witness) {
    if (!check_solution(inst, *res.witness).ok())
      throw std::logic_error("solver returned a non-solution");
    res.kind = SolveResult::Kind::found;
    return res;
  }
  if (r_bounded_by(inst, opts.max_len)) {
    res.kind = SolveResult::Kind::none_certified;
    res.bound = opts.max_len;
    res.justification = "R has no word longer than the search bound";
    return res;
  }
  if (auto b = short_bound(inst, opts.bound_budget); b && *b <= opts.max_len) {
    res.kind = SolveResult::Kind::none_certified;
    res.bound = b;
    res.justification = "every solvable instance has a solution within the short bound";
    return res;
  }
  res.kind = SolveResult::Kind::none_up_to;
  return res;
}

std::optional<std::uint64_t> short_bound(const PepInstance& inst, std::uint64_t budget) {
  if (!has_pumping_theory(inst)) return std::nullopt;
  PepInstance o = oriented_for_bounds(inst);
  auto nr = size_bounds(o.r().dfa);
  auto nrp = size_bounds(o.rp_dfa());
  const std::uint64_t cap = 1'000'000;
  if (nr.monoid_size > cap || nrp.monoid_size > cap) return std::nullopt;
  const std::uint64_t classes = nr.monoid_size * nrp.monoid_size + 1;
  if (classes > cap) return std::nullopt;
  auto h = h_bound(classes, o.u().expansion(), o.gamma()->size(), budget);
  if (!h.value) return std::nullopt;
  return 2 * *h.value;
}

CountResult count(const PepInstance& inst, const SearchOptions& opts) {
  CountResult res;
  res.max_len = opts.max_len;
  const bool pumpable = has_pumping_theory(inst);
  res.stats = enumerate_solutions(inst, opts, [&](const Word& w) {
    ++res.count;
    if (!pumpable) return true;
    auto colored = color_indices(inst, w);
    if (auto cert = find_pump_pair(colored)) {
      verify_pump(inst, *cert);
      res.certificate = std::move(cert);
      return false;
    }
    return true;
  });
  if (res.certificate) {
    res.kind = CountResult::Kind::infinite;
    res.justification = "a pump certificate gives a solution for every k ≥ 1";
    return res;
  }
  if (r_bounded_by(inst, opts.max_len)) {
    res.kind = CountResult::Kind::exact;
    res.justification = "R has no word longer than the search bound";
    return res;
  }
  if (pumpable) {
    // Solutions longer than max_len are the solutions of the instance with R
    // replaced by R \ Σ^{≤max_len}; if its short bound fits, there are none.
    PepInstance longer(inst.variant(), inst.u(), inst.v(),
                       Language::from_dfa(compile(strip_short(inst.r().dfa.to_nfa(), opts.max_len))),
                       inst.rp());
    if (auto b = short_bound(longer, opts.bound_budget); b && *b <= opts.max_len) {
      res.kind = CountResult::Kind::exact;
      res.justification = "no solution is longer than the search bound (short-solution bound)";
      return res;
    }
  }
  res.kind = CountResult::Kind::finite_at_least;
  return res;
}

std::optional<PumpCertificate> infinite_check(const PepInstance& inst, const SearchOptions& opts,
                                              SearchStats* stats) {
  std::optional<PumpCertificate> out;
  if (!has_pumping_theory(inst)) return out;
  auto s = enumerate_solutions(inst, opts, [&](const Word& w) {
    auto colored = color_indices(inst, w);
    if (auto cert = find_pump_pair(colored)) {
      verify_pump(inst, *cert);
      out = std::move(cert);
      return false;
    }
    return true;
  });
  if (stats) *stats = s;
  return out;
}

}  // namespace pep
