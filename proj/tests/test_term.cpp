#include <doctest.h>

#include "lexer.h"
#include "printer.h"
#include "symbols.h"
#include "term.h"

using namespace rewlang;

TEST_SUITE("term") {

TEST_CASE("builtin names are reserved with fixed arity") {
  CHECK(lookup_builtin("eq")->second == 2);
  CHECK(lookup_builtin("d_replace")->second == 3);
  CHECK(lookup_builtin("copy")->first == Builtin::Copy);
  CHECK_FALSE(lookup_builtin("append"));
  CHECK(is_reserved_name("pi_3"));
  CHECK(is_reserved_name("c_cons"));
  CHECK(is_reserved_name("true"));
  CHECK_FALSE(is_reserved_name("pi_0"));
  CHECK_FALSE(is_reserved_name("length"));
}

TEST_CASE("projection index parsing") {
  CHECK(projection_index("pi_1") == 1u);
  CHECK(projection_index("pi_12") == 12u);
  CHECK_FALSE(projection_index("pi_0"));
  CHECK_FALSE(projection_index("pi_01"));
  CHECK_FALSE(projection_index("pi_x"));
  CHECK_FALSE(projection_index("pi_"));
}

TEST_CASE("a name has exactly one kind") {
  SymbolTable t;
  REQUIRE(t.declare_constructor("cons", 2));
  CHECK(t.declare_constructor("cons", 0));
  CHECK_FALSE(t.declare_constructor("cons", 2));
  CHECK_FALSE(t.declare_defined("cons", 1));
  REQUIRE(t.declare_defined("append", 2));
  CHECK_FALSE(t.declare_constructor("append", 2));
  CHECK(t.kind_of_name("append") == SymbolKind::Defined);
  CHECK(t.kind_of_name("sum") == SymbolKind::Compiled);
  CHECK(t.kind_of_name("pi_4") == SymbolKind::Compiled);
  CHECK(t.kind_of_name("if") == SymbolKind::Cond);
}

TEST_CASE("variadic constructors and tuples intern any arity") {
  SymbolTable t;
  REQUIRE(t.declare_variadic("A"));
  auto a3 = t.resolve("A", 3);
  auto a5 = t.resolve("A", 5);
  REQUIRE(a3);
  REQUIRE(a5);
  CHECK(*a3 != *a5);
  CHECK(t.is_constructor(*a3));
  CHECK(t.resolve("A", 3) == a3);
  CHECK(t.is_tuple(t.tuple(2)));
  CHECK(t.tuple(2) == t.tuple(2));
  CHECK_FALSE(t.resolve("undeclared", 1));
}

TEST_CASE("top constants are shared across arities") {
  SymbolTable t;
  auto c2 = *t.declare_constructor("cons", 2);
  auto nil = *t.declare_constructor("NIL", 0);
  auto c = t.top_constant(c2);
  CHECK(t[c].name == "c_cons");
  CHECK(t[c].arity == 0);
  CHECK(t[c].is_top_constant);
  CHECK(t.top_constant(nil) == nil);
  CHECK(t.resolve("c_cons", 0) == c);
  CHECK(t[t.top_constant(t.tuple(3))].name == "c_tuple3");
}

TEST_CASE("term helpers") {
  Term t = Term::app("f", {Term::var("x"), Term::app("g", {Term::var("y"), Term::var("x")})});
  CHECK(t.size() == 5);
  CHECK_FALSE(t.is_ground());
  CHECK(vars_of(t) == std::set<std::string>{"x", "y"});
  std::vector<std::string> occ;
  collect_vars(t, occ);
  CHECK(occ == std::vector<std::string>{"x", "y", "x"});
  CHECK(Term::tuple({Term::integer(1), Term::integer(2)}).is_tuple());
  CHECK(Term::integer(BigInt("123456789012345678901234567890")) ==
        Term::integer(BigInt("123456789012345678901234567890")));
  CHECK_FALSE(Term::integer(1) == Term::app("1"));
}

TEST_CASE("printer uses infix and minimal parentheses") {
  auto sum = [](Term a, Term b) { return Term::app("sum", {std::move(a), std::move(b)}); };
  auto mul = [](Term a, Term b) { return Term::app("mul", {std::move(a), std::move(b)}); };
  auto x = Term::var("x");
  auto one = Term::integer(1);
  CHECK(to_string(sum(mul(Term::integer(2), x), one)) == "2*x+1");
  CHECK(to_string(mul(Term::integer(2), sum(x, one))) == "2*(x+1)");
  CHECK(to_string(Term::app("sub", {x, Term::app("sub", {x, one})})) == "x-(x-1)");
  CHECK(to_string(Term::app("sub", {Term::app("sub", {x, one}), one})) == "x-1-1");
  CHECK(to_string(Term::tuple({one, Term::app("NIL")})) == "<1,NIL>");
  CHECK(to_string(Term::app("f", {Term::integer(-3)})) == "f(-3)");
  CHECK(to_string(Term::integer(-3)) == "-3");
}

TEST_CASE("lexer") {
  auto toks = tokenize("x<-1; # comment\nf(x) -> <a, b> <= 10");
  std::vector<std::string> texts;
  for (const auto& t : toks) texts.push_back(t.text);
  CHECK(texts == std::vector<std::string>{"x", "<-", "1", ";", "f", "(", "x", ")", "->", "<", "a",
                                          ",", "b", ">", "<=", "10", ""});
  CHECK(toks[4].pos.line == 2);
  CHECK(toks[4].pos.column == 1);
  CHECK(toks.back().kind == Token::Kind::End);
  CHECK(is_keyword("while"));
  CHECK_FALSE(is_keyword("whilst"));
  CHECK_THROWS_AS(tokenize("x $ y"), ParseError);
}

}
