#include "doctest.h"

#include "../support/oracles.hpp"
#include "helpers.hpp"
#include "pep/errors.hpp"
#include "pep/higman.hpp"
#include "pep/solver.hpp"

using namespace pep;
using testing::show;
using testing::unary;
using testing::w;

namespace {

SearchOptions upto(std::size_t n) {
  SearchOptions o;
  o.max_len = n;
  return o;
}

}  // namespace

TEST_CASE("solve examples") {
  auto easy = unary("plain", "a", "a", "0 0 *");
  auto r = solve(easy, upto(3));
  REQUIRE(r.kind == SolveResult::Kind::found);
  CHECK(show(easy, *r.witness) == "0");

  auto hopeless = unary("plain", "a a", "a", "0 +");
  auto h = solve(hopeless, upto(10));
  CHECK(h.kind == SolveResult::Kind::none_up_to);
  CHECK(h.max_len == 10);
  CHECK_FALSE(h.witness.has_value());

  // A finite R is certified once the search covers it.
  auto finite = unary("plain", "a a", "a", "0 | 0 0");
  auto f = solve(finite, upto(2));
  CHECK(f.kind == SolveResult::Kind::none_certified);
}

TEST_CASE("none_certified from the short bound") {
  // R = Σ*, R′ = ∅, K_u = 1, |Γ| = 1: bound 2·H(2,1,1) = 4.
  auto inst = parse_instance("variant plain\nsigma 0\ngamma a\nu 0 = a\nv 0 =\nR = 0 *\n");
  auto b = short_bound(inst);
  REQUIRE(b.has_value());
  CHECK(*b == 4);
  auto r = solve(inst, upto(4));
  // ε is a solution here, so shift to R = 0+ for the negative case.
  CHECK(r.kind == SolveResult::Kind::found);

  auto plus = parse_instance("variant codir\nsigma 0\ngamma a\nu 0 = a\nv 0 =\nR = 0 +\nRp = all\n");
  auto pb = short_bound(plus);
  REQUIRE(pb.has_value());
  auto pr = solve(plus, upto(static_cast<std::size_t>(*pb)));
  CHECK(pr.kind == SolveResult::Kind::none_certified);
  CHECK(pr.bound == pb);
  auto below = solve(plus, upto(static_cast<std::size_t>(*pb) - 1));
  CHECK(below.kind == SolveResult::Kind::none_up_to);
}

TEST_CASE("short bound availability") {
  auto both = parse_instance("variant coanddir\nsigma 0\ngamma a\nu 0 = a\nv 0 = a\nR = 0 *\n");
  CHECK_FALSE(short_bound(both).has_value());
  auto big = parse_instance(
      "variant codir\nsigma 0 1\ngamma a b c\nu 0 = a b c\nu 1 = c\nv 0 = a\nv 1 = b\n"
      "R = ( 0 | 1 ) * 1 ( 0 | 1 )\nRp = ( 0 0 ) *\n");
  CHECK_FALSE(short_bound(big, 10'000).has_value());
}

TEST_CASE("solve agrees with brute force on every variant") {
  oracle::Rng rng(61);
  for (auto variant : {Variant::plain, Variant::dir_partial, Variant::codir_partial, Variant::co_and_dir}) {
    for (int it = 0; it < 60; ++it) {
      auto inst = oracle::random_instance(rng, variant);
      auto expected = oracle::solutions(inst, 6);
      auto r = solve(inst, upto(6));
      if (expected.empty()) {
        CHECK(r.kind != SolveResult::Kind::found);
      } else {
        REQUIRE(r.kind == SolveResult::Kind::found);
        CHECK(*r.witness == expected.front());
      }
      std::vector<Word> listed;
      enumerate_solutions(inst, upto(6), [&](const Word& s) {
        listed.push_back(s);
        return true;
      });
      CHECK(listed == expected);
    }
  }
}

TEST_CASE("solve is deterministic across thread counts") {
  oracle::Rng rng(67);
  for (int it = 0; it < 40; ++it) {
    auto inst = oracle::random_instance(rng, static_cast<Variant>(it % 4));
    SearchOptions one = upto(7), many = upto(7);
    many.threads = 4;
    auto a = solve(inst, one), b = solve(inst, many);
    CHECK(a.kind == b.kind);
    CHECK(a.witness == b.witness);
    std::vector<Word> la, lb;
    enumerate_solutions(inst, one, [&](const Word& s) { la.push_back(s); return true; });
    enumerate_solutions(inst, many, [&](const Word& s) { lb.push_back(s); return true; });
    CHECK(la == lb);
  }
}

TEST_CASE("node budget is reported distinctly") {
  auto inst = parse_instance(
      "variant plain\nsigma 0 1\ngamma a\nu 0 = a\nu 1 = a\nv 0 =\nv 1 =\nR = ( 0 | 1 ) *\n");
  // ε is a solution; make it unreachable so the search has to work.
  auto plus = parse_instance(
      "variant codir\nsigma 0 1\ngamma a b\nu 0 = a\nu 1 = b\nv 0 = b\nv 1 = a\nR = ( 0 | 1 ) +\nRp = none\n");
  SearchOptions o = upto(20);
  o.node_budget = 100;
  CHECK_THROWS_AS(solve(plus, o), BudgetExceeded);
  CHECK(solve(inst, o).kind == SolveResult::Kind::found);
}

TEST_CASE("count examples") {
  auto inf = unary("codir", "a", "a", "0 +", "all");
  auto c = count(inf, upto(6));
  REQUIRE(c.kind == CountResult::Kind::infinite);
  REQUIRE(c.certificate.has_value());
  for (std::size_t k = 2; k <= 4; ++k) CHECK(oracle::is_solution(inf, pump(inf, *c.certificate, k)));

  auto none = unary("plain", "a", "", "0 +");
  auto n = count(none, upto(6));
  CHECK(n.kind == CountResult::Kind::finite_at_least);
  CHECK(n.count == 0);

  auto single = unary("plain", "a", "a", "0");
  auto s = count(single, upto(1));
  CHECK(s.kind == CountResult::Kind::exact);
  CHECK(s.count == 1);
}

TEST_CASE("count matches brute force when no certificate appears") {
  oracle::Rng rng(71);
  for (int it = 0; it < 150; ++it) {
    auto inst = oracle::random_instance(rng, it % 2 ? Variant::codir_partial : Variant::plain);
    SearchOptions o = upto(5);
    o.bound_budget = 20'000;
    auto c = count(inst, o);
    if (c.kind == CountResult::Kind::infinite) {
      for (std::size_t k = 1; k <= 4; ++k) CHECK(oracle::is_solution(inst, pump(inst, *c.certificate, k)));
    } else {
      CHECK(c.count == oracle::solutions(inst, 5).size());
    }
  }
}

TEST_CASE("infinite_check") {
  auto inst = unary("codir", "a", "a a", "0 *");
  auto cert = infinite_check(inst, upto(4));
  REQUIRE(cert.has_value());
  CHECK(cert->sigma.size() <= 2);
  CHECK(oracle::is_solution(inst, pump(inst, *cert, 5)));

  auto finite = unary("codir", "a", "a a", "0 | 0 0 0");
  CHECK_FALSE(infinite_check(finite, upto(6)).has_value());

  auto both = parse_instance("variant coanddir\nsigma 0\ngamma a\nu 0 = a\nv 0 = a\nR = 0 *\n");
  CHECK_FALSE(infinite_check(both, upto(4)).has_value());
}

TEST_CASE("dir instances with the length predicate search without prefix pruning") {
  auto inst = parse_instance(
      "variant dir\nsigma x 1 2\ngamma a #\nu x = a\nu 1 =\nu 2 = #\nv x = a\nv 1 = #\nv 2 =\n"
      "R = x + 2 1\nRp = lenpred 1 2\n");
  auto r = solve(inst, upto(5));
  REQUIRE(r.kind == SolveResult::Kind::found);
  CHECK(show(inst, *r.witness) == "x 2 1");
}
