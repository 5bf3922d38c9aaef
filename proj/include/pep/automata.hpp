#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pep/words.hpp"

namespace pep {

using State = std::uint32_t;

/// Nondeterministic automaton with ε-moves. Used as the construction currency:
/// regex compilation, concatenations and suffix transforms all happen here,
/// and queries go through determinize().
class Nfa {
 public:
  explicit Nfa(AlphabetPtr alphabet);

  State add_state();
  void add_transition(State from, Symbol a, State to);
  void add_epsilon(State from, State to);
  void set_initial(State s, bool on = true);
  void set_accepting(State s, bool on = true);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return moves_.size(); }
  bool is_initial(State s) const { return initial_[s]; }
  bool is_accepting(State s) const { return accepting_[s]; }
  const std::vector<std::pair<Symbol, State>>& moves(State s) const { return moves_[s]; }
  const std::vector<State>& epsilons(State s) const { return eps_[s]; }

  /// Sorted ε-closure of a state set.
  std::vector<State> closure(std::vector<State> states) const;
  std::vector<State> initial_closure() const;
  std::vector<State> step(const std::vector<State>& states, Symbol a) const;
  bool accepts(WordView w) const;

  static Nfa empty(AlphabetPtr alphabet);
  static Nfa epsilon(AlphabetPtr alphabet);
  static Nfa letter(AlphabetPtr alphabet, Symbol a);
  static Nfa word(AlphabetPtr alphabet, WordView w);
  static Nfa any_of(AlphabetPtr alphabet, std::span<const Symbol> letters);
  /// Σ*.
  static Nfa universal(AlphabetPtr alphabet);

 private:
  AlphabetPtr alphabet_;
  std::vector<std::vector<std::pair<Symbol, State>>> moves_;
  std::vector<std::vector<State>> eps_;
  std::vector<bool> initial_;
  std::vector<bool> accepting_;
};

Nfa concat(const Nfa& a, const Nfa& b);
Nfa union_of(const Nfa& a, const Nfa& b);
Nfa star(const Nfa& a);
Nfa plus(const Nfa& a);
Nfa optional(const Nfa& a);

/// Complete deterministic automaton. Totality is checked at construction.
class Dfa {
 public:
  Dfa(AlphabetPtr alphabet, std::size_t states, State initial, std::vector<State> delta,
      std::vector<bool> accepting);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return states_; }
  State initial() const { return initial_; }
  State next(State q, Symbol a) const { return delta_[q * alphabet_->size() + a]; }
  State run(State q, WordView w) const;
  bool is_accepting(State q) const { return accepting_[q]; }
  bool accepts(WordView w) const;
  bool is_empty() const;
  Nfa to_nfa() const;

  bool operator==(const Dfa& other) const;

 private:
  AlphabetPtr alphabet_;
  std::size_t states_;
  State initial_;
  std::vector<State> delta_;
  std::vector<bool> accepting_;
};

Dfa determinize(const Nfa& n);
/// Minimal complete DFA with states numbered in breadth-first order from the
/// initial state (letters in token order), so equal languages give equal DFAs.
Dfa minimize(const Dfa& d);
inline Dfa compile(const Nfa& n) { return minimize(determinize(n)); }

Dfa universal_dfa(AlphabetPtr alphabet);
Dfa empty_dfa(AlphabetPtr alphabet);

enum class BoolOp { union_, intersection, difference, complement };

/// Boolean combination, minimized. For `complement` the second operand is
/// ignored.
Dfa combine(BoolOp op, const Dfa& a, const Dfa& b);
Dfa combine(BoolOp op, const Nfa& a, const Nfa& b);
Dfa complement(const Dfa& a);

/// Accepts exactly the mirrored words of L(n).
Nfa mirror_language(const Nfa& n);

bool membership(const Dfa& d, WordView w);
bool equivalent(const Dfa& a, const Dfa& b);

// ---------------------------------------------------------------------------
// Congruence signatures: the state transformation a word induces on a DFA.
// Equal transformations imply syntactic equivalence.

using Transformation = std::vector<State>;

Transformation identity_transformation(std::size_t states);
Transformation transformation(const Dfa& d, WordView w);
/// First `first`, then `second`: result[q] = second[first[q]].
Transformation compose(const Transformation& first, const Transformation& second);

/// Transformations of one word on several automata at once.
struct CongruenceSignature {
  std::vector<Transformation> parts;
  bool operator==(const CongruenceSignature&) const = default;
};

CongruenceSignature signature(const Dfa& d, WordView w);
CongruenceSignature signature(std::span<const Dfa* const> automata, WordView w);
inline bool signatures_equal(const CongruenceSignature& a, const CongruenceSignature& b) {
  return a == b;
}

// ---------------------------------------------------------------------------
// Language transforms.

/// { y | ∃x : |x| ≥ k and x·y ∈ L(n) }, or |x| > k when `strict`.
Nfa suffix_language(const Nfa& n, std::size_t k, bool strict);

/// { w ∈ L(n) : |w| > max_len }.
Nfa strip_short(const Nfa& n, std::size_t max_len);

/// Words of L(d) up to `max_len` in length-then-lexicographic order. The
/// callback returns false to stop early.
void for_each_word(const Dfa& d, std::size_t max_len, const std::function<bool(const Word&)>& fn);
std::vector<Word> enumerate(const Dfa& d, std::size_t max_len);

std::optional<Word> shortest_word(const Dfa& d);

struct SizeBounds {
  /// Transformation-monoid size when `exact`, else the m^m bound (saturated).
  std::uint64_t monoid_size = 0;
  bool exact = false;
  /// State count of the minimal complete DFA.
  std::size_t k_r = 0;
};

/// Closes the letter transformations of minimize(d) under composition, giving
/// up (and reporting m^m) once more than `cap` elements are found.
SizeBounds size_bounds(const Dfa& d, std::size_t cap = 200000);

}  // namespace pep
