#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pep/words.hpp"

namespace pep {

/// Some subsequence x_{i_1} ⊑ x_{i_2} ⊑ … of length n exists (i_1 < i_2 < …).
bool is_n_good(const std::vector<Word>& seq, std::size_t n);
/// |x_i| ≤ i·k for every 1-based position i.
bool is_controlled(const std::vector<Word>& seq, std::size_t k);

struct HResult {
  /// Longest branch of the tree of n-bad k-controlled sequences; absent when
  /// the node budget ran out.
  std::optional<std::uint64_t> value;
  std::uint64_t nodes = 0;
  /// Candidate words examined; this is what the budget limits.
  std::uint64_t work = 0;
  /// One branch of maximal length, over letters 0..gamma_size-1.
  std::vector<Word> longest_branch;
};

/// Exhaustive depth-first walk of the tree of k-controlled n-bad sequences
/// over a gamma_size-letter alphabet. Children are tried in length-lex order;
/// `node_budget` caps the number of candidate children examined.
HResult h_bound(std::size_t n, std::size_t k, std::size_t gamma_size,
                std::uint64_t node_budget = 5'000'000);

struct MonotonicityReport {
  struct Point {
    std::size_t n, k, s;
    std::optional<std::uint64_t> value;
  };
  std::vector<Point> grid;
  /// Pairs of grid points differing by one in a single coordinate where the
  /// larger point has the smaller H. Empty when H is monotone on the grid.
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Computes H on [0,max_n]×[0,max_k]×[1,max_s] and compares neighbours.
/// Points whose budget ran out are skipped in the comparison.
MonotonicityReport monotonicity_probe(std::size_t max_n, std::size_t max_k, std::size_t max_s,
                                      std::uint64_t node_budget = 5'000'000);

}  // namespace pep
