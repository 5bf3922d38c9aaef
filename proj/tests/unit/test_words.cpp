#include "doctest.h"

#include "../support/oracles.hpp"
#include "pep/errors.hpp"
#include "pep/words.hpp"

using namespace pep;

namespace {

auto abc() { return make_alphabet({"a", "b", "c", "~a", "~b", "~c"}); }

}  // namespace

TEST_CASE("alphabet tokens and formatting") {
  auto al = abc();
  CHECK(al->size() == 6);
  CHECK(al->symbol("~b") == 4);
  CHECK(al->format(al->parse_word("a ~c b")) == "a ~c b");
  CHECK(al->format(Word{}) == "eps");
  CHECK(al->parse_word("eps").empty());
  CHECK_THROWS_AS(al->symbol("d"), AlphabetMismatch);
  CHECK_THROWS_AS(make_alphabet({"a", "a"}), Error);
  CHECK_THROWS_AS(make_alphabet({"a|b"}), Error);
  CHECK_FALSE(Alphabet::valid_token("eps"));
  CHECK_FALSE(Alphabet::valid_token("->"));
  CHECK(Alphabet::valid_token("a''"));
  CHECK_THROWS_AS(al->check(Word{9}), AlphabetMismatch);
}

TEST_CASE("is_subword examples") {
  auto al = abc();
  auto w = [&](const char* s) { return al->parse_word(s); };
  CHECK(is_subword(Word{}, w("a b c")));
  CHECK(is_subword(w("a ~b b ~c c ~c"), w("a ~a ~b ~c b ~a ~b ~c c ~a ~b ~c")));
  CHECK_FALSE(is_subword(w("a a"), w("a")));
}

TEST_CASE("leftmost and rightmost embeddings") {
  auto al = abc();
  auto w = [&](const char* s) { return al->parse_word(s); };
  CHECK(*leftmost_embedding(w("a b"), w("a a b")) == std::vector<std::size_t>{0, 2});
  CHECK(*rightmost_embedding(w("a b"), w("a a b")) == std::vector<std::size_t>{1, 2});
  CHECK(*leftmost_embedding(w("a b c"), w("a b c")) == std::vector<std::size_t>{0, 1, 2});
  CHECK_FALSE(leftmost_embedding(w("b"), w("a a")).has_value());

  oracle::Rng rng(7);
  for (int it = 0; it < 500; ++it) {
    Word s = rng.word(2, 4), t = rng.word(2, 7);
    auto all = oracle::all_embeddings(s, t);
    auto left = leftmost_embedding(s, t);
    auto right = rightmost_embedding(s, t);
    REQUIRE(left.has_value() == !all.empty());
    REQUIRE(right.has_value() == !all.empty());
    if (!all.empty()) {
      CHECK(*left == all.front());
      CHECK(*right == all.back());
    }
  }
}

TEST_CASE("residual examples") {
  auto al = make_alphabet({"a", "b"});
  auto w = [&](const char* s) { return al->parse_word(s); };
  CHECK(longest_suffix_carrier(w("a b"), w("b"), w("a b b")) == w("a b"));
  CHECK(longest_suffix_carrier(w("a b"), w("b"), w("b b")) == w("b"));
  CHECK(longest_suffix_carrier(Word{}, w("b"), w("b")).empty());
  CHECK_THROWS_AS(longest_suffix_carrier(w("a"), w("b"), w("a")), PreconditionError);

  CHECK(shortest_prefix_overflow(w("a b"), w("b")) == w("a"));
  CHECK(shortest_prefix_overflow(w("a b"), w("a b")).empty());
  CHECK(shortest_prefix_overflow(w("a b"), Word{}) == w("a b"));

  CHECK(longest_prefix_host(w("b"), w("a b b")) == w("a b"));
  CHECK(longest_prefix_host(Word{}, w("a b")) == w("a b"));
  CHECK(longest_prefix_host(w("a b"), w("a b")).empty());
  CHECK_THROWS_AS(longest_prefix_host(w("b b"), w("b")), PreconditionError);

  CHECK(shortest_suffix_host(w("a"), w("b a"), Word{}) == w("a"));
  CHECK(shortest_suffix_host(w("a"), w("b a"), w("a")).empty());
  CHECK(shortest_suffix_host(w("b a"), w("b a"), w("a")) == w("b a"));
  CHECK_THROWS_AS(shortest_suffix_host(w("b b"), w("a"), w("b")), PreconditionError);
}

TEST_CASE("residuals agree with exhaustive scans") {
  oracle::Rng rng(11);
  for (int it = 0; it < 3000; ++it) {
    std::size_t g = rng.between(1, 3);
    Word y = rng.word(g, 8), z = rng.word(g, 8), s = rng.word(g, 8), t = rng.word(g, 8);
    REQUIRE(is_subword(z, t) == oracle::subword(z, t));
    if (oracle::subword(z, t)) {
      CHECK(longest_suffix_carrier(y, z, t) == *oracle::longest_suffix_carrier(y, z, t));
      CHECK(longest_prefix_host(z, t) == *oracle::longest_prefix_host(z, t));
    }
    CHECK(shortest_prefix_overflow(z, t) == oracle::shortest_prefix_overflow(z, t));
    if (oracle::subword(z, oracle::cat(s, t)))
      CHECK(shortest_suffix_host(z, s, t) == *oracle::shortest_suffix_host(z, s, t));
  }
}

TEST_CASE("subword order is a partial order and mirror invariant") {
  oracle::Rng rng(3);
  for (int it = 0; it < 2000; ++it) {
    Word a = rng.word(2, 6), b = rng.word(2, 6), c = rng.word(2, 6);
    CHECK(is_subword(a, a));
    if (is_subword(a, b) && is_subword(b, c)) CHECK(is_subword(a, c));
    if (is_subword(a, b) && is_subword(b, a)) CHECK(a == b);
    CHECK(is_subword(a, b) == is_subword(mirror(a), mirror(b)));
  }
}

TEST_CASE("word helpers") {
  Word w{0, 1, 2};
  CHECK(mirror(w) == Word{2, 1, 0});
  CHECK(power(Word{0, 1}, 3) == Word{0, 1, 0, 1, 0, 1});
  CHECK(power(w, 0).empty());
  CHECK(is_prefix(Word{0, 1}, w));
  CHECK_FALSE(is_prefix(Word{1}, w));
  CHECK(is_suffix(Word{1, 2}, w));
  CHECK(slice(w, 1, 3) == Word{1, 2});
  CHECK(concat(Word{0}, Word{1}, Word{2}) == w);
}
