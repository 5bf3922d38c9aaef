#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pep/instance.hpp"

namespace pep {

// ---------------------------------------------------------------------------
// Post's correspondence problem.

/// Is there x ∈ Σ⁺ with u(x) = v(x)?
struct PcpInstance {
  Morphism u, v;
};

struct PcpEncoding {
  /// codir instance over Σ ∪ {1, 2} and Γ ∪ {#} with R = 1·2·Σ⁺ and the
  /// length-difference R′.
  PepInstance instance;
  Symbol start = 0;   // "1"
  Symbol split = 0;   // "2"
  Symbol hash = 0;    // "#" in Γ′
};

PcpEncoding encode_pcp(const PcpInstance& p);

/// x ↦ 1·2·x.
Word pcp_to_solution(const PcpEncoding& e, WordView x);

// ---------------------------------------------------------------------------
// Semi-Thue systems.

struct Rule {
  Word lhs, rhs;
};

/// Length-preserving system with source and target languages.
struct SemiThueSystem {
  AlphabetPtr upsilon;
  std::vector<Rule> rules;
  Language p1, p2;

  /// Throws PreconditionError unless every rule is length-preserving and
  /// the languages live over Υ.
  void validate() const;
};

/// One-step rewrites of x in (rule, position) order.
std::vector<Word> rewrites(const SemiThueSystem& s, WordView x);
bool rewrites_to(const SemiThueSystem& s, WordView x, WordView y);

/// x_0 → x_1 → … → x_m.
struct Derivation {
  std::vector<Word> words;
  std::size_t steps() const { return words.empty() ? 0 : words.size() - 1; }
};

/// Six copies of Υ ∪ {†}: plain, primed, double-primed, each also overlined.
/// Symbol id = ((overlined·3) + primes)·n + j with n = |Υ| + 1 and j = n − 1
/// standing for †.
class EncodedLayout {
 public:
  explicit EncodedLayout(AlphabetPtr upsilon);

  const AlphabetPtr& upsilon() const { return upsilon_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::size_t base_size() const { return n_; }
  Symbol dagger_index() const { return static_cast<Symbol>(n_ - 1); }

  Symbol id(Symbol base, unsigned primes, bool over) const {
    return static_cast<Symbol>(((over ? 3u : 0u) + primes) * n_ + base);
  }
  Symbol base(Symbol s) const { return static_cast<Symbol>(s % n_); }
  unsigned primes(Symbol s) const { return static_cast<unsigned>((s / n_) % 3); }
  bool over(Symbol s) const { return s / n_ >= 3; }
  bool is_dagger(Symbol s) const { return base(s) == dagger_index(); }

  /// Copy of an Υ-word (or dagger run) with the given decoration.
  Word lift(WordView w, unsigned primes, bool over) const;

 private:
  AlphabetPtr upsilon_;
  AlphabetPtr alphabet_;
  std::size_t n_;
};

/// Token used for the extra letter.
inline constexpr const char* kDagger = "†";

/// x_0·ȳ_0·x_1·ȳ_1·… over the encoded alphabet (x and y given as Υ-words or
/// with base index n − 1 for †). Throws PreconditionError on length mismatch.
Word shuffle(const EncodedLayout& layout, WordView x, WordView y, unsigned primes_x,
             unsigned primes_y);
/// Plain-letter form used by the step languages.
inline Word shuffle(const EncodedLayout& layout, WordView x, WordView y) {
  return shuffle(layout, x, y, 0, 0);
}

/// T▶, T▶ restricted to x ∈ P1, T◀, T◀ restricted to y ∈ P2, as expressions
/// over the encoded alphabet.
struct StepLanguages {
  Regex forward, forward_p1, backward, backward_p2;
};

StepLanguages build_step_languages(const SemiThueSystem& s, const EncodedLayout& layout);

struct SemiThueEncoding {
  SemiThueSystem system;
  EncodedLayout layout;
  StepLanguages steps;
  Regex r;
  /// co&dir instance with Σ = Γ = the encoded alphabet.
  PepInstance instance;
};

SemiThueEncoding encode_semithue(const SemiThueSystem& s);

/// σ_π = ρ_0 σ_1 ρ_1 … σ_2k ρ_2k. Throws PreconditionError when π is not an
/// even, nonzero, length-preserving derivation from P1 to P2.
Word derivation_to_solution(const SemiThueEncoding& e, const Derivation& pi);

/// Maximal runs of letters with the same number of primes, as [begin, end)
/// index pairs.
std::vector<std::pair<std::size_t, std::size_t>> segments(const EncodedLayout& layout,
                                                          WordView sigma);

/// Reads the derivation back from a solution. Throws PreconditionError if σ
/// is not a solution and std::logic_error if a solution fails to decode
/// (which the correctness argument rules out).
Derivation decode_semithue_solution(const SemiThueEncoding& e, WordView sigma);

struct ReachOptions {
  std::size_t max_steps = 4;
  /// Longest P1 word considered; 0 means the default (state counts of P1 and
  /// P2 plus the longest rule).
  std::size_t word_cap = 0;
  std::uint64_t node_budget = 10'000'000;
};

struct ReachResult {
  std::size_t word_cap = 0;
  /// Some x ∈ P1 rewrites to some y ∈ P2 in at most max_steps steps.
  std::optional<Derivation> any;
  /// The same with an even, nonzero number of steps.
  std::optional<Derivation> even;
  std::uint64_t nodes = 0;
};

/// Breadth-first closure from P1. Witnesses are the first found in
/// level order, with P1 words in length-lex order and rewrites in (rule,
/// position) order.
ReachResult semithue_reach_oracle(const SemiThueSystem& s, const ReachOptions& opts);

}  // namespace pep
