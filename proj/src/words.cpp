#include "pep/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "pep/errors.hpp"

namespace pep {

namespace {

constexpr std::string_view kReservedChars = "|*+?()&";

}  // namespace

bool Alphabet::valid_token(std::string_view token) {
  if (token.empty() || token == "eps" || token == "none" || token == "=" || token == "->") return false;
  for (char c : token) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    if (kReservedChars.find(c) != std::string_view::npos) return false;
  }
  return true;
}

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!valid_token(tokens_[i]))
      throw PreconditionError("invalid alphabet token '" + tokens_[i] + "'");
    if (!index_.emplace(tokens_[i], static_cast<Symbol>(i)).second)
      throw PreconditionError("duplicate alphabet token '" + tokens_[i] + "'");
  }
}

const std::string& Alphabet::token(Symbol s) const {
  if (s >= tokens_.size())
    throw AlphabetMismatch("symbol " + std::to_string(s) + " outside alphabet of size " +
                           std::to_string(tokens_.size()));
  return tokens_[s];
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::symbol(std::string_view token) const {
  if (auto s = find(token)) return *s;
  throw AlphabetMismatch("unknown token '" + std::string(token) + "'");
}

Word Alphabet::parse_word(std::string_view text) const {
  std::istringstream in{std::string(text)};
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);
  return parse_word(toks);
}

Word Alphabet::parse_word(const std::vector<std::string>& tokens) const {
  Word w;
  w.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t == "eps") continue;
    w.push_back(symbol(t));
  }
  return w;
}

std::string Alphabet::format(WordView w) const {
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += token(w[i]);
  }
  return out;
}

void Alphabet::check(WordView w) const {
  for (Symbol s : w)
    if (s >= tokens_.size())
      throw AlphabetMismatch("symbol " + std::to_string(s) + " outside alphabet of size " +
                             std::to_string(tokens_.size()));
}

AlphabetPtr make_alphabet(std::vector<std::string> tokens) {
  return std::make_shared<const Alphabet>(std::move(tokens));
}

void require_same(const Alphabet& a, const Alphabet& b, std::string_view context) {
  if (!(a == b)) throw AlphabetMismatch(std::string(context) + ": alphabets differ");
}

Word concat(WordView a, WordView b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word concat(WordView a, WordView b, WordView c) {
  Word out;
  out.reserve(a.size() + b.size() + c.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

Word mirror(WordView w) { return Word(w.rbegin(), w.rend()); }

Word power(WordView w, std::size_t k) {
  Word out;
  out.reserve(w.size() * k);
  for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

bool is_prefix(WordView p, WordView w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

bool is_suffix(WordView s, WordView w) {
  return s.size() <= w.size() && std::equal(s.begin(), s.end(), w.end() - static_cast<std::ptrdiff_t>(s.size()));
}

bool is_subword(WordView s, WordView t) {
  if (s.size() > t.size()) return false;
  std::size_t i = 0;
  for (std::size_t j = 0; j < t.size() && i < s.size(); ++j)
    if (s[i] == t[j]) ++i;
  return i == s.size();
}

std::optional<std::vector<std::size_t>> leftmost_embedding(WordView s, WordView t) {
  std::vector<std::size_t> pos;
  pos.reserve(s.size());
  std::size_t j = 0;
  for (Symbol a : s) {
    while (j < t.size() && t[j] != a) ++j;
    if (j == t.size()) return std::nullopt;
    pos.push_back(j++);
  }
  return pos;
}

std::optional<std::vector<std::size_t>> rightmost_embedding(WordView s, WordView t) {
  Word ms = mirror(s), mt = mirror(t);
  auto pos = leftmost_embedding(ms, mt);
  if (!pos) return std::nullopt;
  std::vector<std::size_t> out(pos->rbegin(), pos->rend());
  for (auto& p : out) p = t.size() - 1 - p;
  return out;
}

Word longest_suffix_carrier(WordView y, WordView z, WordView t) {
  if (!is_subword(z, t))
    throw PreconditionError("longest_suffix_carrier: z is not a subword of t");
  for (std::size_t len = y.size();; --len) {
    WordView x = y.subspan(y.size() - len);
    if (is_subword(concat(x, z), t)) return Word(x.begin(), x.end());
    if (len == 0) break;
  }
  return {};  // unreachable: the empty suffix qualifies
}

Word shortest_prefix_overflow(WordView z, WordView t) {
  for (std::size_t len = 0; len <= z.size(); ++len)
    if (is_subword(z.subspan(len), t)) return slice(z, 0, len);
  return Word(z.begin(), z.end());
}

Word longest_prefix_host(WordView z, WordView t) {
  if (!is_subword(z, t))
    throw PreconditionError("longest_prefix_host: z is not a subword of t");
  for (std::size_t len = t.size();; --len) {
    if (is_subword(z, t.subspan(len))) return slice(t, 0, len);
    if (len == 0) break;
  }
  return {};
}

Word shortest_suffix_host(WordView z, WordView s, WordView t) {
  if (!is_subword(z, concat(s, t)))
    throw PreconditionError("shortest_suffix_host: z is not a subword of s·t");
  for (std::size_t len = 0; len <= s.size(); ++len) {
    WordView x = s.subspan(s.size() - len);
    if (is_subword(z, concat(x, t))) return Word(x.begin(), x.end());
  }
  return Word(s.begin(), s.end());
}

}  // namespace pep
