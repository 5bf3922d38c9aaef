#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pep/automata.hpp"
#include "pep/regex.hpp"
#include "pep/words.hpp"

namespace pep {

/// Letter-to-word map u : Σ* → Γ*, extended to words by concatenation.
class Morphism {
 public:
  Morphism(AlphabetPtr source, AlphabetPtr target, std::vector<Word> images);

  const AlphabetPtr& source() const { return source_; }
  const AlphabetPtr& target() const { return target_; }
  const Word& image(Symbol a) const { return images_.at(a); }
  const std::vector<Word>& images() const { return images_; }
  /// Expansion factor: the longest letter image.
  std::size_t expansion() const { return expansion_; }

  Word apply(WordView w) const;
  std::size_t image_length(WordView w) const;
  Morphism mirrored() const;

 private:
  AlphabetPtr source_;
  AlphabetPtr target_;
  std::vector<Word> images_;
  std::size_t expansion_ = 0;
};

inline Word apply_morphism(const Morphism& m, WordView w) { return m.apply(w); }

enum class Variant { plain, dir_partial, codir_partial, co_and_dir };

std::string to_string(Variant v);
Variant parse_variant(std::string_view text);

/// A regular language kept both as a minimal DFA and, when known, as the
/// expression it came from (used for printing instances).
struct Language {
  Dfa dfa;
  std::optional<Regex> regex;

  static Language from_regex(Regex r, const AlphabetPtr& alphabet);
  static Language from_dfa(Dfa d);
};

/// Non-regular constraint { τ·split·τ′ : τ, τ′ free of both markers and
/// |u(ττ′)| ≠ |v(ττ′)| }. Decided in one pass with an integer counter.
struct LengthDiffPredicate {
  Symbol start_marker = 0;
  Symbol split_marker = 0;
  /// |u(a)| − |v(a)| per letter.
  std::vector<long> delta;

  static LengthDiffPredicate from(const Morphism& u, const Morphism& v, Symbol start, Symbol split);
  bool contains(WordView w) const;
};

/// R′: a regular language or the length-difference predicate.
using SideConstraint = std::variant<Language, LengthDiffPredicate>;

bool contains(const SideConstraint& c, WordView w);
inline bool is_regular(const SideConstraint& c) { return std::holds_alternative<Language>(c); }

/// (Σ, Γ, u, v, R, R′, variant). Immutable once built.
class PepInstance {
 public:
  PepInstance(Variant variant, Morphism u, Morphism v, Language r, SideConstraint rp);

  Variant variant() const { return variant_; }
  const AlphabetPtr& sigma() const { return u_.source(); }
  const AlphabetPtr& gamma() const { return u_.target(); }
  const Morphism& u() const { return u_; }
  const Morphism& v() const { return v_; }
  const Language& r() const { return r_; }
  const SideConstraint& rp() const { return rp_; }
  /// R′ as a DFA; throws PreconditionError for the predicate form.
  const Dfa& rp_dfa() const;

 private:
  Variant variant_;
  Morphism u_;
  Morphism v_;
  Language r_;
  SideConstraint rp_;
};

// ---------------------------------------------------------------------------
// Solution checking.

struct Verdict {
  enum class Kind { solution, fails_membership, fails_embedding };
  enum class Side { none, whole, prefix, suffix };
  Kind kind = Kind::solution;
  Side side = Side::none;
  /// Split index of the earliest offending prefix σ[0,i) or suffix σ[i,N).
  std::size_t split = 0;

  bool ok() const { return kind == Kind::solution; }
};

Verdict check_solution(const PepInstance& inst, WordView sigma);

/// Swaps dir and codir and mirrors images and languages; solutions correspond
/// by mirroring. Plain and co&dir keep their variant.
PepInstance mirror_instance(const PepInstance& inst);

// ---------------------------------------------------------------------------
// Colouring and margins. All index arithmetic happens in the codirect
// orientation: a dir instance is mirrored on entry and `mirrored()` says so.

enum class Color { blue, red };

class ColoredSolution {
 public:
  ColoredSolution(std::shared_ptr<const PepInstance> oriented, Word oriented_word, bool mirrored);

  const PepInstance& instance() const { return *inst_; }
  std::shared_ptr<const PepInstance> instance_ptr() const { return inst_; }
  /// The word in the codirect orientation.
  const Word& word() const { return word_; }
  /// The word as the caller supplied it.
  Word original_word() const { return mirrored_ ? mirror(word_) : word_; }
  bool mirrored() const { return mirrored_; }
  std::size_t length() const { return word_.size(); }

  Color color(std::size_t i) const { return blue_.at(i) ? Color::blue : Color::red; }
  bool is_blue(std::size_t i) const { return blue_.at(i); }
  std::vector<std::size_t> blue_indices() const;
  std::vector<std::size_t> red_indices() const;

  /// u(σ[i,j)) and v(σ[i,j)).
  WordView u_range(std::size_t i, std::size_t j) const;
  WordView v_range(std::size_t i, std::size_t j) const;

  /// l_i: longest suffix of u_{0,i} with l_i·u_{i,N} ⊑ v_{i,N}. Blue i only.
  const Word& left_margin_u(std::size_t i) const;
  /// r_i: shortest prefix of u_{i,N} with r_i⁻¹u_{i,N} ⊑ v_{i,N}. Red i only.
  const Word& right_margin_u(std::size_t i) const;
  /// s_i: longest prefix of v_{i,N} with u_{i,N} ⊑ s_i⁻¹v_{i,N}. Blue i only.
  const Word& right_margin_v(std::size_t i) const;
  /// t_i: shortest suffix of v_{0,i} with u_{i,N} ⊑ t_i·v_{i,N}. Red i only;
  /// absent when u_{i,N} does not even embed in v(σ).
  const std::optional<Word>& left_margin_v(std::size_t i) const;

  /// Suffixes σ[i,N) and σ[j,N) have equal signatures on R and R′.
  bool congruent(std::size_t i, std::size_t j) const;
  /// Whether congruence is available (R′ regular).
  bool has_congruence() const { return !suffix_sig_.empty(); }

 private:
  void require(std::size_t i, Color c, const char* what) const;

  std::shared_ptr<const PepInstance> inst_;
  Word word_;
  bool mirrored_;
  Word u_all_, v_all_;
  std::vector<std::size_t> u_off_, v_off_;
  std::vector<bool> blue_;
  std::vector<CongruenceSignature> suffix_sig_;

  mutable std::mutex memo_mutex_;
  mutable std::vector<std::optional<Word>> l_, r_, s_;
  mutable std::vector<std::optional<std::optional<Word>>> t_;
};

/// Colours σ for inst (plain, dir or codir; co&dir has no colouring theory).
ColoredSolution color_indices(const PepInstance& inst, WordView sigma);

inline const Word& left_margin_u(const ColoredSolution& c, std::size_t i) { return c.left_margin_u(i); }
inline const Word& right_margin_u(const ColoredSolution& c, std::size_t i) { return c.right_margin_u(i); }
inline const Word& right_margin_v(const ColoredSolution& c, std::size_t i) { return c.right_margin_v(i); }
inline const std::optional<Word>& left_margin_v(const ColoredSolution& c, std::size_t i) {
  return c.left_margin_v(i);
}

/// Index congruence in the caller's orientation: suffixes for codir/plain,
/// prefixes for dir.
bool congruent(const PepInstance& inst, WordView sigma, std::size_t i, std::size_t j);

// ---------------------------------------------------------------------------
// Cutting and pumping. Indices a < b are in the codirect orientation of the
// ColoredSolution; returned words are in the caller's orientation.

struct CutCertificate {
  std::size_t a = 0, b = 0;
  Color color = Color::blue;
  /// (l_a, l_b) for blue, (r_a, r_b) for red.
  Word margin_a, margin_b;
  bool mirrored = false;
};

struct PumpCertificate {
  /// The solution being pumped, caller's orientation.
  Word sigma;
  std::size_t a = 0, b = 0;
  Color color = Color::blue;
  /// (s_a, s_b) for blue, (t_a, t_b) for red.
  Word margin_a, margin_b;
  bool mirrored = false;
};

/// σ[0,a)·σ[b,N). Throws PreconditionError naming the failed clause.
Word cut(const ColoredSolution& colored, std::size_t a, std::size_t b);

/// σ[0,a)·σ[a,b)^k·σ[b,N), k ≥ 1. Throws PreconditionError naming the failed
/// clause.
Word pump(const ColoredSolution& colored, std::size_t a, std::size_t b, std::size_t k);
Word pump(const PepInstance& inst, const PumpCertificate& cert, std::size_t k);

/// Scan order: blue pairs before red pairs; within a colour, smallest b first,
/// then largest a.
std::optional<CutCertificate> find_cut_pair(const ColoredSolution& colored);
std::optional<PumpCertificate> find_pump_pair(const ColoredSolution& colored);

/// Cuts until no certificate applies. The result is a solution admitting no
/// cut certificate.
Word minimize_solution(const PepInstance& inst, WordView sigma);

}  // namespace pep
