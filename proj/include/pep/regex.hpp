#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pep/automata.hpp"
#include "pep/words.hpp"

namespace pep {

/// Regular expression syntax tree over interned symbols.
///
/// Text grammar (tokens separated by whitespace; operator characters also
/// split tokens):
///
///     union   := inter ( '|' inter )*
///     inter   := concat ( '&' concat )*
///     concat  := postfix postfix*
///     postfix := atom ( '*' | '+' | '?' )*
///     atom    := token | 'eps' | 'none' | '(' union ')'
///
/// `eps` is the empty word, `none` the empty language. `&` (intersection)
/// binds tighter than `|` and looser than concatenation.
class Regex {
 public:
  enum class Kind { empty, eps, symbol, concat, union_, inter, star, plus, opt };

  static Regex empty();
  static Regex eps();
  static Regex symbol(Symbol s);
  static Regex word(WordView w);
  static Regex concat(std::vector<Regex> parts);
  static Regex union_of(std::vector<Regex> parts);
  static Regex inter(std::vector<Regex> parts);
  static Regex star(Regex r);
  static Regex plus(Regex r);
  static Regex opt(Regex r);
  static Regex any_of(std::span<const Symbol> letters);

  Kind kind() const { return node_->kind; }
  Symbol sym() const { return node_->sym; }
  const std::vector<Regex>& children() const { return node_->children; }

  /// Replaces every symbol leaf by the regex `f` returns for it.
  Regex substitute(const std::function<Regex(Symbol)>& f) const;

  bool operator==(const Regex& other) const;

 private:
  struct Node {
    Kind kind;
    Symbol sym = 0;
    std::vector<Regex> children;
  };
  explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Regex make(Kind kind, std::vector<Regex> children);
  std::shared_ptr<const Node> node_;
};

/// Throws ParseError (column = token index) or AlphabetMismatch-flavoured
/// ParseError for tokens outside the alphabet.
Regex parse_regex(std::string_view text, const Alphabet& alphabet);

/// Canonical text with minimal parentheses; parse(to_string(r)) == r.
std::string to_string(const Regex& r, const Alphabet& alphabet);

/// Expression for the mirrored language.
Regex mirror(const Regex& r);

/// An expression for L(d) by state elimination (states removed in index
/// order). Used to print languages that only exist as automata.
Regex from_dfa(const Dfa& d);

/// Thompson-style compilation; intersections go through a DFA product.
Nfa to_nfa(const Regex& r, const AlphabetPtr& alphabet);

/// Convenience: parse and compile to a minimal DFA.
Dfa compile_regex(std::string_view text, const AlphabetPtr& alphabet);

}  // namespace pep
