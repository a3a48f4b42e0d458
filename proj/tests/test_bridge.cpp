#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <set>
#include <string>
#include <utility>

#include "hoas/hoas.hpp"
#include "oracles.hpp"

using namespace hoas;

namespace {

DbTerm lam(const DbTerm& d) { return DbTerm::lam(d); }
DbTerm var(std::uint64_t n) { return DbTerm::var(n); }

}  // namespace

TEST_CASE("db_validate") {
  CHECK(db_validate(lam(var(0)), 0));
  CHECK_FALSE(db_validate(var(0), 0));
  CHECK(db_validate(lam(lam(var(1))), 0));
  CHECK_FALSE(db_validate(lam(lam(var(2))), 0));
  CHECK(db_validate(lam(lam(var(2))), 1));
  CHECK(db_validate(var(0), 1));
}

TEST_CASE("DbTerm structure") {
  const DbTerm d = lam(lam(var(1)));
  CHECK(d.is_lam());
  CHECK(d.body() == lam(var(1)));
  CHECK(d.body().body().is_var());
  CHECK(d.body().body().index() == 1);
  CHECK_THROWS_AS(var(3).body(), std::logic_error);
  CHECK(db_chain(2, 1) == d);
}

TEST_CASE("DbTerm text format") {
  CHECK(to_string(lam(lam(var(1)))) == "Lam (Lam (Var 1))");
  CHECK(to_string(var(12)) == "Var 12");
  CHECK(parse_db("Lam (Lam (Var 1))") == lam(lam(var(1))));
  CHECK(parse_db("  Lam(\n\tLam (  Var   1 ) )  ") == lam(lam(var(1))));
  CHECK(parse_db("(Lam ((Var 0)))") == lam(var(0)));
  CHECK(parse_db("Var 0") == var(0));
  CHECK_THROWS_AS(parse_db("Lam Var 0"), SyntaxError);
  CHECK_THROWS_AS(parse_db("Lam (Var 0"), SyntaxError);
  CHECK_THROWS_AS(parse_db("Lam (Var 0))"), SyntaxError);
  CHECK_THROWS_AS(parse_db("Lambda (Var 0)"), SyntaxError);
  CHECK_THROWS_AS(parse_db("Var x"), SyntaxError);
  CHECK_THROWS_AS(parse_db(""), SyntaxError);
  CHECK_THROWS_AS(parse_db("Var 99999999999999999999999"), SyntaxError);
  try {
    parse_db("Lam (\n  Var )");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 7);
  }
}

TEST_CASE("DbTerm text round-trips") {
  for (const auto& d : enumerate_terms(12)) CHECK(parse_db(to_string(d)) == d);
}

TEST_CASE("db_to_hoas") {
  CHECK(print_term(db_to_hoas(lam(lam(var(1))))) == "\\ x1. \\ x2. x1");
  CHECK(fold(size_alg(), db_to_hoas(lam(var(0)))) == oracle::size(1));
  CHECK_THROWS_AS(db_to_hoas(lam(var(1))), OpenTermError);
  CHECK_THROWS_AS(db_to_hoas(var(0)), OpenTermError);
}

TEST_CASE("round-trip through the encoding is the identity on chains <= 32") {
  for (const auto& d : enumerate_terms(32)) CHECK(to_debruijn(db_to_hoas(d)) == d);
}

TEST_CASE("named_to_db") {
  CHECK(named_to_db(parse_named("\\x. \\y. x")) == lam(lam(var(1))));
  CHECK(named_to_db(parse_named("\\x. x")) == lam(var(0)));
  CHECK(named_to_db(parse_named("\\x. \\x. x")) == lam(lam(var(0))));
  try {
    named_to_db(parse_named("\\x. y"));
    FAIL("expected UnboundVariable");
  } catch (const UnboundVariable& e) {
    CHECK(e.name() == "y");
    CHECK(std::string(e.what()) == "unbound variable y");
  }
}

TEST_CASE("db_to_named") {
  CHECK(render_named(db_to_named(lam(lam(var(1))))) == "\\ x1. \\ x2. x1");
  CHECK(db_to_named(lam(var(0))) == NamedTerm::abs("x1", NamedTerm::ref("x1")));
  CHECK(render_named(db_to_named(lam(lam(lam(var(2)))))) ==
        "\\ x1. \\ x2. \\ x3. x1");
  CHECK_THROWS_AS(db_to_named(lam(var(1))), OpenTermError);
}

TEST_CASE("named and de Bruijn conversions are inverse on closed terms") {
  for (const auto& d : enumerate_terms(20)) {
    CHECK(named_to_db(db_to_named(d)) == d);
    CHECK(named_to_db(parse_named(render_named(db_to_named(d)))) == d);
  }
}

TEST_CASE("oracle_size") {
  CHECK(oracle_size(lam(lam(var(1)))) == 3);
  CHECK(oracle_size(lam(var(0))) == 2);
  CHECK(oracle_size(lam(lam(lam(var(0))))) == 4);
}

TEST_CASE("oracle_print") {
  CHECK(oracle_print(lam(lam(var(1)))) == "\\ x1. \\ x2. x1");
  CHECK(oracle_print(lam(var(0))) == "\\ x1. x1");
  CHECK(oracle_print(lam(lam(var(0)))) == "\\ x1. \\ x2. x2");
}

TEST_CASE("enumerate_terms") {
  CHECK(enumerate_terms(1) == std::vector<DbTerm>{lam(var(0))});
  CHECK(enumerate_terms(2).size() == 3);
  CHECK(enumerate_terms(10).size() == 55);
  CHECK(enumerate_terms(32).size() == 528);
  const auto terms = enumerate_terms(6);
  std::set<std::pair<std::size_t, std::uint64_t>> seen;
  std::pair<std::size_t, std::uint64_t> prev{0, 0};
  for (const auto& d : terms) {
    const std::pair<std::size_t, std::uint64_t> key{d.binders(), d.index()};
    CHECK(db_validate(d, 0));
    CHECK(seen.insert(key).second);
    CHECK((seen.size() == 1 || prev < key));
    prev = key;
  }
}

TEST_CASE("SplitMix64 reference outputs") {
  // First outputs for seed 0 and 1234567 from the reference splitmix64.c
  SplitMix64 zero(0);
  CHECK(zero.next() == 0xE220A8397B1DCDAFULL);
  CHECK(zero.next() == 0x6E789E6AA1B965F4ULL);
  SplitMix64 r(1234567);
  CHECK(r.next() == 6457827717110365317ULL);
  CHECK(r.next() == 3203168211198807973ULL);
}

TEST_CASE("gen_term") {
  for (std::uint64_t s : {0ULL, 1ULL, 42ULL, 0xFFFFFFFFFFFFFFFFULL}) {
    CHECK(gen_term(s, 1) == lam(var(0)));
  }
  CHECK(gen_term(42, 8) == gen_term(42, 8));
  SplitMix64 rng(7);
  std::set<std::size_t> depths;
  for (int i = 0; i < 2000; ++i) {
    const DbTerm d = gen_term(rng, 16);
    CHECK(db_validate(d, 0));
    CHECK(d.binders() >= 1);
    CHECK(d.binders() <= 16);
    depths.insert(d.binders());
  }
  CHECK(depths.size() == 16);
  CHECK_THROWS_AS(gen_term(1, 0), std::invalid_argument);
}

TEST_CASE("differential: encoding agrees with the first-order oracles") {
  SplitMix64 rng(2024);
  for (int i = 0; i < 500; ++i) {
    const DbTerm d = gen_term(rng, 64);
    const Term t = db_to_hoas(d);
    CHECK(fold(size_alg(), t) == oracle_size(d));
    CHECK(print_term(t) == oracle_print(d));
    CHECK(to_debruijn(t) == d);
  }
}

TEST_CASE("parse_named") {
  CHECK(parse_named("\\x. \\y. x") ==
        NamedTerm::abs("x", NamedTerm::abs("y", NamedTerm::ref("x"))));
  CHECK(parse_named("\xCE\xBBx.x") == NamedTerm::abs("x", NamedTerm::ref("x")));
  CHECK(parse_named("  \\ foo_1 .\n\t\\Bar2. foo_1 ") ==
        NamedTerm::abs("foo_1", NamedTerm::abs("Bar2", NamedTerm::ref("foo_1"))));
  CHECK(parse_named("y") == NamedTerm::ref("y"));
  CHECK(render_named_ast(parse_named("\\x. \\y. x")) == "Abs(x, Abs(y, Ref x))");
  CHECK_THROWS_AS(parse_named("\\x. (y)"), SyntaxError);
  CHECK_THROWS_AS(parse_named("\\x y"), SyntaxError);
  CHECK_THROWS_AS(parse_named("\\1x. x"), SyntaxError);
  CHECK_THROWS_AS(parse_named("\\x. x x"), SyntaxError);
  CHECK_THROWS_AS(parse_named(""), SyntaxError);
  try {
    parse_named("\\x. (y)");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
  }
}
