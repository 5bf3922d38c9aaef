#include "pep/automata.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "pep/errors.hpp"

namespace pep {

// ---------------------------------------------------------------------------
// Nfa

Nfa::Nfa(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
  if (!alphabet_) throw PreconditionError("automaton needs an alphabet");
}

State Nfa::add_state() {
  moves_.emplace_back();
  eps_.emplace_back();
  initial_.push_back(false);
  accepting_.push_back(false);
  return static_cast<State>(moves_.size() - 1);
}

void Nfa::add_transition(State from, Symbol a, State to) {
  if (from >= state_count() || to >= state_count())
    throw PreconditionError("transition endpoint is not a declared state");
  if (a >= alphabet_->size())
    throw AlphabetMismatch("transition label outside the automaton alphabet");
  moves_[from].emplace_back(a, to);
}

void Nfa::add_epsilon(State from, State to) {
  if (from >= state_count() || to >= state_count())
    throw PreconditionError("transition endpoint is not a declared state");
  eps_[from].push_back(to);
}

void Nfa::set_initial(State s, bool on) { initial_.at(s) = on; }
void Nfa::set_accepting(State s, bool on) { accepting_.at(s) = on; }

std::vector<State> Nfa::closure(std::vector<State> states) const {
  std::vector<bool> seen(state_count(), false);
  std::vector<State> stack;
  for (State s : states)
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  std::vector<State> out;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    out.push_back(s);
    for (State t : eps_[s])
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<State> Nfa::initial_closure() const {
  std::vector<State> init;
  for (State s = 0; s < state_count(); ++s)
    if (initial_[s]) init.push_back(s);
  return closure(std::move(init));
}

std::vector<State> Nfa::step(const std::vector<State>& states, Symbol a) const {
  std::vector<State> next;
  for (State s : states)
    for (const auto& [b, t] : moves_[s])
      if (b == a) next.push_back(t);
  return closure(std::move(next));
}

bool Nfa::accepts(WordView w) const {
  alphabet_->check(w);
  auto cur = initial_closure();
  for (Symbol a : w) {
    cur = step(cur, a);
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](State s) { return accepting_[s]; });
}

Nfa Nfa::empty(AlphabetPtr alphabet) {
  Nfa n(std::move(alphabet));
  n.set_initial(n.add_state());
  return n;
}

Nfa Nfa::epsilon(AlphabetPtr alphabet) {
  Nfa n(std::move(alphabet));
  State s = n.add_state();
  n.set_initial(s);
  n.set_accepting(s);
  return n;
}

Nfa Nfa::letter(AlphabetPtr alphabet, Symbol a) {
  Symbol one[] = {a};
  return any_of(std::move(alphabet), one);
}

Nfa Nfa::word(AlphabetPtr alphabet, WordView w) {
  Nfa n(std::move(alphabet));
  State cur = n.add_state();
  n.set_initial(cur);
  for (Symbol a : w) {
    State next = n.add_state();
    n.add_transition(cur, a, next);
    cur = next;
  }
  n.set_accepting(cur);
  return n;
}

Nfa Nfa::any_of(AlphabetPtr alphabet, std::span<const Symbol> letters) {
  Nfa n(std::move(alphabet));
  State s = n.add_state(), t = n.add_state();
  n.set_initial(s);
  n.set_accepting(t);
  for (Symbol a : letters) n.add_transition(s, a, t);
  return n;
}

Nfa Nfa::universal(AlphabetPtr alphabet) {
  Nfa n(std::move(alphabet));
  State s = n.add_state();
  n.set_initial(s);
  n.set_accepting(s);
  for (Symbol a = 0; a < n.alphabet()->size(); ++a) n.add_transition(s, a, s);
  return n;
}

namespace {

// Copies `src` into `dst`, returning the offset of its states.
State embed(Nfa& dst, const Nfa& src) {
  State offset = static_cast<State>(dst.state_count());
  for (State s = 0; s < src.state_count(); ++s) dst.add_state();
  for (State s = 0; s < src.state_count(); ++s) {
    for (const auto& [a, t] : src.moves(s)) dst.add_transition(offset + s, a, offset + t);
    for (State t : src.epsilons(s)) dst.add_epsilon(offset + s, offset + t);
  }
  return offset;
}

}  // namespace

Nfa concat(const Nfa& a, const Nfa& b) {
  require_same(*a.alphabet(), *b.alphabet(), "concat");
  Nfa n(a.alphabet());
  State oa = embed(n, a), ob = embed(n, b);
  for (State s = 0; s < a.state_count(); ++s) {
    if (a.is_initial(s)) n.set_initial(oa + s);
    if (a.is_accepting(s))
      for (State t = 0; t < b.state_count(); ++t)
        if (b.is_initial(t)) n.add_epsilon(oa + s, ob + t);
  }
  for (State t = 0; t < b.state_count(); ++t)
    if (b.is_accepting(t)) n.set_accepting(ob + t);
  return n;
}

Nfa union_of(const Nfa& a, const Nfa& b) {
  require_same(*a.alphabet(), *b.alphabet(), "union");
  Nfa n(a.alphabet());
  State oa = embed(n, a), ob = embed(n, b);
  for (State s = 0; s < a.state_count(); ++s) {
    n.set_initial(oa + s, a.is_initial(s));
    n.set_accepting(oa + s, a.is_accepting(s));
  }
  for (State s = 0; s < b.state_count(); ++s) {
    n.set_initial(ob + s, b.is_initial(s));
    n.set_accepting(ob + s, b.is_accepting(s));
  }
  return n;
}

Nfa plus(const Nfa& a) {
  Nfa n(a.alphabet());
  State hub = n.add_state();
  State oa = embed(n, a);
  n.set_initial(hub);
  State out = n.add_state();
  n.set_accepting(out);
  for (State s = 0; s < a.state_count(); ++s) {
    if (a.is_initial(s)) n.add_epsilon(hub, oa + s);
    if (a.is_accepting(s)) {
      n.add_epsilon(oa + s, hub);
      n.add_epsilon(oa + s, out);
    }
  }
  return n;
}

Nfa star(const Nfa& a) { return optional(plus(a)); }

Nfa optional(const Nfa& a) { return union_of(a, Nfa::epsilon(a.alphabet())); }

// ---------------------------------------------------------------------------
// Dfa

Dfa::Dfa(AlphabetPtr alphabet, std::size_t states, State initial, std::vector<State> delta,
         std::vector<bool> accepting)
    : alphabet_(std::move(alphabet)),
      states_(states),
      initial_(initial),
      delta_(std::move(delta)),
      accepting_(std::move(accepting)) {
  if (!alphabet_) throw PreconditionError("automaton needs an alphabet");
  if (states_ == 0 || initial_ >= states_ || accepting_.size() != states_ ||
      delta_.size() != states_ * alphabet_->size())
    throw PreconditionError("malformed DFA tables");
  for (State t : delta_)
    if (t >= states_) throw PreconditionError("DFA transition to an undeclared state");
}

State Dfa::run(State q, WordView w) const {
  for (Symbol a : w) q = next(q, a);
  return q;
}

bool Dfa::accepts(WordView w) const {
  alphabet_->check(w);
  return accepting_[run(initial_, w)];
}

bool Dfa::is_empty() const {
  std::vector<bool> seen(states_, false);
  std::vector<State> stack{initial_};
  seen[initial_] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    if (accepting_[q]) return false;
    for (Symbol a = 0; a < alphabet_->size(); ++a) {
      State t = next(q, a);
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return true;
}

Nfa Dfa::to_nfa() const {
  Nfa n(alphabet_);
  for (std::size_t q = 0; q < states_; ++q) n.add_state();
  n.set_initial(initial_);
  for (State q = 0; q < states_; ++q) {
    n.set_accepting(q, accepting_[q]);
    for (Symbol a = 0; a < alphabet_->size(); ++a) n.add_transition(q, a, next(q, a));
  }
  return n;
}

bool Dfa::operator==(const Dfa& other) const {
  return *alphabet_ == *other.alphabet_ && states_ == other.states_ &&
         initial_ == other.initial_ && delta_ == other.delta_ &&
         accepting_ == other.accepting_;
}

Dfa determinize(const Nfa& n) {
  const std::size_t k = n.alphabet()->size();
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> sets;
  std::vector<State> delta;
  std::vector<bool> accepting;
  auto intern = [&](std::vector<State> set) {
    auto [it, fresh] = ids.emplace(set, static_cast<State>(sets.size()));
    if (fresh) {
      bool acc = std::any_of(set.begin(), set.end(), [&](State s) { return n.is_accepting(s); });
      sets.push_back(std::move(set));
      accepting.push_back(acc);
    }
    return it->second;
  };
  intern(n.initial_closure());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (Symbol a = 0; a < k; ++a) {
      State t = intern(n.step(sets[i], a));
      delta.push_back(t);
    }
  }
  return Dfa(n.alphabet(), sets.size(), 0, std::move(delta), std::move(accepting));
}

Dfa minimize(const Dfa& d) {
  const std::size_t k = d.alphabet()->size();
  // Reachable part.
  std::vector<State> order;
  std::vector<int> reach(d.state_count(), -1);
  order.push_back(d.initial());
  reach[d.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Symbol a = 0; a < k; ++a) {
      State t = d.next(order[i], a);
      if (reach[t] < 0) {
        reach[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  const std::size_t m = order.size();
  // Moore refinement over reachable states (indexed by position in `order`).
  std::vector<std::size_t> cls(m);
  for (std::size_t i = 0; i < m; ++i) cls[i] = d.is_accepting(order[i]) ? 1 : 0;
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> keys;
    std::vector<std::size_t> next_cls(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::size_t> key{cls[i]};
      for (Symbol a = 0; a < k; ++a) key.push_back(cls[reach[d.next(order[i], a)]]);
      auto [it, fresh] = keys.emplace(std::move(key), keys.size());
      next_cls[i] = it->second;
    }
    bool stable = keys.size() == classes;
    classes = keys.size();
    cls = std::move(next_cls);
    if (stable) break;
  }
  // Canonical numbering: BFS over classes from the initial class.
  std::vector<std::size_t> rep(classes, m);
  for (std::size_t i = 0; i < m; ++i)
    if (rep[cls[i]] == m) rep[cls[i]] = i;
  std::vector<int> id(classes, -1);
  std::vector<std::size_t> bfs{cls[0]};
  id[cls[0]] = 0;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (Symbol a = 0; a < k; ++a) {
      std::size_t c = cls[reach[d.next(order[rep[bfs[i]]], a)]];
      if (id[c] < 0) {
        id[c] = static_cast<int>(bfs.size());
        bfs.push_back(c);
      }
    }
  std::vector<State> delta(classes * k);
  std::vector<bool> accepting(classes);
  for (std::size_t c = 0; c < classes; ++c) {
    State q = order[rep[c]];
    accepting[id[c]] = d.is_accepting(q);
    for (Symbol a = 0; a < k; ++a)
      delta[id[c] * k + a] = static_cast<State>(id[cls[reach[d.next(q, a)]]]);
  }
  return Dfa(d.alphabet(), classes, 0, std::move(delta), std::move(accepting));
}

Dfa universal_dfa(AlphabetPtr alphabet) {
  std::size_t k = alphabet->size();
  return Dfa(std::move(alphabet), 1, 0, std::vector<State>(k, 0), {true});
}

Dfa empty_dfa(AlphabetPtr alphabet) {
  std::size_t k = alphabet->size();
  return Dfa(std::move(alphabet), 1, 0, std::vector<State>(k, 0), {false});
}

Dfa combine(BoolOp op, const Dfa& a, const Dfa& b) {
  if (op == BoolOp::complement) return complement(a);
  require_same(*a.alphabet(), *b.alphabet(), "boolean combination");
  const std::size_t k = a.alphabet()->size();
  const std::size_t nb = b.state_count();
  std::vector<int> id(a.state_count() * nb, -1);
  std::vector<std::pair<State, State>> pairs{{a.initial(), b.initial()}};
  id[a.initial() * nb + b.initial()] = 0;
  std::vector<State> delta;
  std::vector<bool> accepting;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    bool x = a.is_accepting(p), y = b.is_accepting(q);
    switch (op) {
      case BoolOp::union_: accepting.push_back(x || y); break;
      case BoolOp::intersection: accepting.push_back(x && y); break;
      case BoolOp::difference: accepting.push_back(x && !y); break;
      case BoolOp::complement: break;
    }
    for (Symbol c = 0; c < k; ++c) {
      State p2 = a.next(p, c), q2 = b.next(q, c);
      int& slot = id[p2 * nb + q2];
      if (slot < 0) {
        slot = static_cast<int>(pairs.size());
        pairs.emplace_back(p2, q2);
      }
      delta.push_back(static_cast<State>(slot));
    }
  }
  return minimize(Dfa(a.alphabet(), pairs.size(), 0, std::move(delta), std::move(accepting)));
}

Dfa combine(BoolOp op, const Nfa& a, const Nfa& b) {
  if (op == BoolOp::complement) return complement(compile(a));
  return combine(op, compile(a), compile(b));
}

Dfa complement(const Dfa& a) {
  std::vector<State> delta;
  const std::size_t k = a.alphabet()->size();
  delta.reserve(a.state_count() * k);
  std::vector<bool> accepting(a.state_count());
  for (State q = 0; q < a.state_count(); ++q) {
    accepting[q] = !a.is_accepting(q);
    for (Symbol c = 0; c < k; ++c) delta.push_back(a.next(q, c));
  }
  return minimize(Dfa(a.alphabet(), a.state_count(), a.initial(), std::move(delta), std::move(accepting)));
}

Nfa mirror_language(const Nfa& n) {
  Nfa m(n.alphabet());
  for (State s = 0; s < n.state_count(); ++s) m.add_state();
  for (State s = 0; s < n.state_count(); ++s) {
    m.set_initial(s, n.is_accepting(s));
    m.set_accepting(s, n.is_initial(s));
    for (const auto& [a, t] : n.moves(s)) m.add_transition(t, a, s);
    for (State t : n.epsilons(s)) m.add_epsilon(t, s);
  }
  return m;
}

bool membership(const Dfa& d, WordView w) { return d.accepts(w); }

bool equivalent(const Dfa& a, const Dfa& b) { return minimize(a) == minimize(b); }

// ---------------------------------------------------------------------------
// Signatures

Transformation identity_transformation(std::size_t states) {
  Transformation t(states);
  for (std::size_t q = 0; q < states; ++q) t[q] = static_cast<State>(q);
  return t;
}

Transformation transformation(const Dfa& d, WordView w) {
  d.alphabet()->check(w);
  Transformation t(d.state_count());
  for (State q = 0; q < d.state_count(); ++q) t[q] = d.run(q, w);
  return t;
}

Transformation compose(const Transformation& first, const Transformation& second) {
  if (first.size() != second.size())
    throw PreconditionError("composing transformations of different automata");
  Transformation out(first.size());
  for (std::size_t q = 0; q < first.size(); ++q) out[q] = second[first[q]];
  return out;
}

CongruenceSignature signature(const Dfa& d, WordView w) { return {{transformation(d, w)}}; }

CongruenceSignature signature(std::span<const Dfa* const> automata, WordView w) {
  CongruenceSignature sig;
  sig.parts.reserve(automata.size());
  for (const Dfa* d : automata) sig.parts.push_back(transformation(*d, w));
  return sig;
}

// ---------------------------------------------------------------------------
// Transforms

Nfa suffix_language(const Nfa& n, std::size_t k, bool strict) {
  const std::size_t need = strict ? k + 1 : k;
  const std::size_t letters = n.alphabet()->size();
  // States reachable from the initial states by exactly `need` letters, then
  // closed under further letters: the possible states after removing x.
  std::vector<State> cur = n.initial_closure();
  auto advance = [&](const std::vector<State>& set) {
    std::vector<State> out;
    for (Symbol a = 0; a < letters; ++a) {
      auto s = n.step(set, a);
      out.insert(out.end(), s.begin(), s.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  for (std::size_t i = 0; i < need && !cur.empty(); ++i) cur = advance(cur);
  std::vector<bool> start(n.state_count(), false);
  std::vector<State> frontier = cur;
  for (State s : cur) start[s] = true;
  while (!frontier.empty()) {
    std::vector<State> next;
    for (State s : advance(frontier))
      if (!start[s]) {
        start[s] = true;
        next.push_back(s);
      }
    frontier = std::move(next);
  }
  Nfa m(n.alphabet());
  for (State s = 0; s < n.state_count(); ++s) m.add_state();
  for (State s = 0; s < n.state_count(); ++s) {
    m.set_initial(s, start[s]);
    m.set_accepting(s, n.is_accepting(s));
    for (const auto& [a, t] : n.moves(s)) m.add_transition(s, a, t);
    for (State t : n.epsilons(s)) m.add_epsilon(s, t);
  }
  return m;
}

Nfa strip_short(const Nfa& n, std::size_t max_len) {
  // Product with a length counter saturating at max_len + 1.
  const std::size_t layers = max_len + 2;
  const std::size_t ns = n.state_count();
  Nfa m(n.alphabet());
  for (std::size_t i = 0; i < ns * layers; ++i) m.add_state();
  auto id = [&](State s, std::size_t c) { return static_cast<State>(c * ns + s); };
  for (State s = 0; s < ns; ++s) {
    m.set_initial(id(s, 0), n.is_initial(s));
    m.set_accepting(id(s, layers - 1), n.is_accepting(s));
    for (std::size_t c = 0; c < layers; ++c) {
      std::size_t c2 = std::min(c + 1, layers - 1);
      for (const auto& [a, t] : n.moves(s)) m.add_transition(id(s, c), a, id(t, c2));
      for (State t : n.epsilons(s)) m.add_epsilon(id(s, c), id(t, c));
    }
  }
  return m;
}

void for_each_word(const Dfa& d, std::size_t max_len, const std::function<bool(const Word&)>& fn) {
  const std::size_t k = d.alphabet()->size();
  const std::size_t m = d.state_count();
  // live[l][q]: some word of length exactly l leads from q to acceptance.
  std::vector<std::vector<bool>> live(max_len + 1, std::vector<bool>(m, false));
  for (State q = 0; q < m; ++q) live[0][q] = d.is_accepting(q);
  for (std::size_t l = 1; l <= max_len; ++l)
    for (State q = 0; q < m; ++q)
      for (Symbol a = 0; a < k && !live[l][q]; ++a) live[l][q] = live[l - 1][d.next(q, a)];

  Word w;
  bool stop = false;
  std::function<void(State, std::size_t)> dfs = [&](State q, std::size_t remaining) {
    if (remaining == 0) {
      if (!fn(w)) stop = true;
      return;
    }
    for (Symbol a = 0; a < k && !stop; ++a) {
      State t = d.next(q, a);
      if (!live[remaining - 1][t]) continue;
      w.push_back(a);
      dfs(t, remaining - 1);
      w.pop_back();
    }
  };
  for (std::size_t len = 0; len <= max_len && !stop; ++len)
    if (live[len][d.initial()]) dfs(d.initial(), len);
}

std::vector<Word> enumerate(const Dfa& d, std::size_t max_len) {
  std::vector<Word> out;
  for_each_word(d, max_len, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

std::optional<Word> shortest_word(const Dfa& d) {
  const std::size_t k = d.alphabet()->size();
  std::vector<int> parent(d.state_count(), -1);
  std::vector<Symbol> via(d.state_count(), 0);
  std::vector<bool> seen(d.state_count(), false);
  std::deque<State> queue{d.initial()};
  seen[d.initial()] = true;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (d.is_accepting(q)) {
      Word w;
      for (State s = q; s != d.initial(); s = static_cast<State>(parent[s])) w.push_back(via[s]);
      return mirror(w);
    }
    for (Symbol a = 0; a < k; ++a) {
      State t = d.next(q, a);
      if (!seen[t]) {
        seen[t] = true;
        parent[t] = static_cast<int>(q);
        via[t] = a;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

SizeBounds size_bounds(const Dfa& d, std::size_t cap) {
  Dfa md = minimize(d);
  SizeBounds out;
  out.k_r = md.state_count();
  const std::size_t k = md.alphabet()->size();
  std::vector<Transformation> gens;
  for (Symbol a = 0; a < k; ++a) gens.push_back(transformation(md, Word{a}));
  std::set<Transformation> seen{identity_transformation(md.state_count())};
  std::vector<Transformation> queue(seen.begin(), seen.end());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& g : gens) {
      Transformation t = compose(queue[i], g);
      if (seen.insert(t).second) {
        if (seen.size() > cap) {
          // m^m, saturating.
          const std::uint64_t m = md.state_count();
          std::uint64_t bound = 1;
          for (std::uint64_t j = 0; j < m; ++j) {
            if (bound > std::numeric_limits<std::uint64_t>::max() / m) {
              bound = std::numeric_limits<std::uint64_t>::max();
              break;
            }
            bound *= m;
          }
          out.monoid_size = bound;
          out.exact = false;
          return out;
        }
        queue.push_back(std::move(t));
      }
    }
  }
  out.monoid_size = seen.size();
  out.exact = true;
  return out;
}

}  // namespace pep
