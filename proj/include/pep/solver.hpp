#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pep/instance.hpp"

namespace pep {

struct SearchOptions {
  std::size_t max_len = 12;
  /// Node expansions before BudgetExceeded is thrown.
  std::uint64_t node_budget = 10'000'000;
  /// Workers per length layer; results are merged canonically.
  unsigned threads = 1;
  /// Budget handed to the Higman tree when a completeness bound is wanted.
  std::uint64_t bound_budget = 2'000'000;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::size_t lengths_searched = 0;
};

struct SolveResult {
  enum class Kind { found, none_up_to, none_certified };
  Kind kind = Kind::none_up_to;
  std::optional<Word> witness;
  std::size_t max_len = 0;
  /// For none_certified: every solution, if any, is at most this long.
  std::optional<std::uint64_t> bound;
  std::string justification;
  SearchStats stats;
};

/// Enumerates the solutions of length ≤ opts.max_len in length-lex order and
/// hands each to `visit`, which returns false to stop. Returns the statistics.
SearchStats enumerate_solutions(const PepInstance& inst, const SearchOptions& opts,
                                const std::function<bool(const Word&)>& visit);

/// Length-lex least solution of length ≤ max_len.
SolveResult solve(const PepInstance& inst, const SearchOptions& opts);

/// 2·H(n_R·n_R′ + 1, K_u, |Γ|) when the Higman tree fits in `budget`.
/// Absent for co&dir and for non-regular R′, where no such bound exists.
std::optional<std::uint64_t> short_bound(const PepInstance& inst,
                                         std::uint64_t budget = 2'000'000);

/// σ = α·β·γ ∈ R where β returns R's automaton to the state it left and
/// |u(β)| > |v(β)|. Every α·β^k·γ with k ≥ from_k lies in R and has
/// |u| > |v|, so none of them is a solution.
struct LoopCertificate {
  Word alpha, beta, gamma;
  std::size_t from_k = 1;

  Word word(std::size_t k) const { return concat(alpha, power(beta, k), gamma); }
};

struct CountResult {
  enum class Kind { infinite, finite_at_least, exact };
  Kind kind = Kind::finite_at_least;
  std::uint64_t count = 0;
  std::size_t max_len = 0;
  std::optional<PumpCertificate> certificate;
  /// Set instead of `certificate` when counting non-solutions.
  std::optional<LoopCertificate> loop;
  std::string justification;
  SearchStats stats;
};

/// Solutions counted by enumeration; infinite as soon as one admits a pump
/// certificate.
CountResult count(const PepInstance& inst, const SearchOptions& opts);

/// First pump certificate among the solutions of length ≤ max_len.
std::optional<PumpCertificate> infinite_check(const PepInstance& inst, const SearchOptions& opts,
                                              SearchStats* stats = nullptr);

}  // namespace pep
