#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pep {

/// Interned letter: an index into an Alphabet.
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;
using WordView = std::span<const Symbol>;

/// Ordered list of display tokens. Token order is the canonical symbol order
/// used for every enumeration and witness.
///
/// Tokens are non-empty, unique, free of whitespace, and avoid the characters
/// the text formats reserve (`| * + ? ( ) &`) as well as the keywords `eps`, `none`,
/// `=` and `->`.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& token(Symbol s) const;
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<Symbol> find(std::string_view token) const;
  /// Throws AlphabetMismatch for unknown tokens.
  Symbol symbol(std::string_view token) const;

  /// Whitespace-separated tokens to a word.
  Word parse_word(std::string_view text) const;
  Word parse_word(const std::vector<std::string>& tokens) const;
  /// Space-separated tokens; the empty word prints as "eps".
  std::string format(WordView w) const;

  /// Throws AlphabetMismatch when some symbol is out of range.
  void check(WordView w) const;

  bool operator==(const Alphabet& other) const { return tokens_ == other.tokens_; }

  static bool valid_token(std::string_view token);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Symbol> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> tokens);

/// Throws AlphabetMismatch unless both alphabets list the same tokens.
void require_same(const Alphabet& a, const Alphabet& b, std::string_view context);

// ---------------------------------------------------------------------------
// Plain word helpers.

Word concat(WordView a, WordView b);
Word concat(WordView a, WordView b, WordView c);
Word mirror(WordView w);
Word power(WordView w, std::size_t k);
inline Word slice(WordView w, std::size_t from, std::size_t to) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from),
              w.begin() + static_cast<std::ptrdiff_t>(to));
}
bool is_prefix(WordView p, WordView w);
bool is_suffix(WordView s, WordView w);

// ---------------------------------------------------------------------------
// Subword (scattered embedding) order.

/// s ⊑ t: s is obtained from t by erasing letters.
bool is_subword(WordView s, WordView t);

/// Lexicographically least increasing position list p with t[p_i] = s_i.
std::optional<std::vector<std::size_t>> leftmost_embedding(WordView s, WordView t);

/// Lexicographically greatest embedding, computed by mirroring the leftmost
/// one.
std::optional<std::vector<std::size_t>> rightmost_embedding(WordView s, WordView t);

// Residuals. Each one scans its candidate prefixes/suffixes in order and tests
// the embedding directly.

/// Longest suffix x of y with x·z ⊑ t. Requires z ⊑ t.
Word longest_suffix_carrier(WordView y, WordView z, WordView t);

/// Shortest prefix x of z with x⁻¹z ⊑ t. Always defined (x = z qualifies).
Word shortest_prefix_overflow(WordView z, WordView t);

/// Longest prefix x of t with z ⊑ x⁻¹t. Requires z ⊑ t.
Word longest_prefix_host(WordView z, WordView t);

/// Shortest suffix x of s with z ⊑ x·t. Requires z ⊑ s·t.
Word shortest_suffix_host(WordView z, WordView s, WordView t);

}  // namespace pep
