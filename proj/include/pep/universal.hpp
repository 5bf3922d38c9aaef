#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "pep/instance.hpp"
#include "pep/solver.hpp"

namespace pep {

/// Adds a fresh letter z with u(z) = v(z) = ε and replaces R, R′ by R·z*,
/// R′·z* (z*·R, z*·R′ for dir instances). "Every σ ∈ R is a solution" on the
/// input is equivalent to "almost every σ is a solution" on the output.
PepInstance pad_forall_to_forall_inf(const PepInstance& inst);

/// Output of the reduction from partially codirect ∀ / ∀∞ questions to a
/// single plain ∀∞ question.
struct ForallReduction {
  /// Plain instance (R′ = ∅) whose ∀∞ answer is the input's ∀∞ answer.
  PepInstance output;
  /// The three languages before the union, over the input alphabet:
  /// X1 = R, X2 = →R ∩ R′, X3 = R̂ ∩ R′ with R̂ the suffixes left after
  /// removing more than k_R letters.
  Language x1, x2, x3;
  std::size_t k_r = 0;
  /// The padding letter, present only when X3 is nonempty.
  std::optional<Symbol> pad;
};

/// Accepts codir and dir (by mirroring) instances with regular R′; plain
/// instances reduce to themselves.
ForallReduction reduce_to_forall_inf_pep(const PepInstance& inst);

struct UniversalVerdict {
  enum class Kind { holds_up_to, fails, fails_infinitely };
  Kind kind = Kind::holds_up_to;
  std::size_t max_len = 0;
  /// Least non-solution in length-lex order.
  std::optional<Word> counterexample;
  std::optional<LoopCertificate> loop;
  std::uint64_t non_solutions_seen = 0;
  SearchStats stats;
};

/// Is every σ ∈ R of length ≤ max_len a solution?
UniversalVerdict forall_check(const PepInstance& inst, const SearchOptions& opts);
/// Only loop certificates refute "almost every σ is a solution"; isolated
/// counterexamples are counted but leave the verdict at holds_up_to.
UniversalVerdict forall_inf_check(const PepInstance& inst, const SearchOptions& opts);
CountResult count_non_solutions(const PepInstance& inst, const SearchOptions& opts);

/// Loop certificate for a non-solution σ, when one exists: the loop with the
/// smallest from_k, then the leftmost.
std::optional<LoopCertificate> find_loop_certificate(const PepInstance& inst, WordView sigma);

/// Type 1: u(σ) ⋢ v(σ). Type 2: some suffix τ ∈ R′ has u(τ) ⋢ v(τ) (for dir
/// instances, prefixes). Both may hold.
struct NonSolutionClass {
  bool type1 = false;
  bool type2 = false;
  /// Split index of the first witnessing suffix (prefix) for type 2.
  std::optional<std::size_t> split;
};

NonSolutionClass classify_non_solution(const PepInstance& inst, WordView sigma);

}  // namespace pep
