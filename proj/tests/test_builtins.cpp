#include <doctest.h>

#include <random>

#include "builtins.h"
#include "support.h"

using namespace rewlang;
using namespace rewlang::test;

namespace {

const Program& sig() {
  static Program p = parse_program("constructors cons/2, NIL/0, pair/2, A/*;");
  return p;
}

struct Fixture {
  Snapshot snap{std::make_shared<SymbolTable>(make_symbol_table(sig()))};
  Label L(const std::string& text) { return decorate(parse_query(text, sig()), snap, DecoratePolicy::AllFresh); }
  Label L(const Term& t) { return decorate(t, snap, DecoratePolicy::AllFresh); }
  Term S(Label l) { return strip(l, snap); }
  Label I(long v) { return snap.integer(v); }
  Label call(const std::string& name, std::vector<Label> args) {
    SymbolId sym = *snap.symbols().resolve(name, args.size());
    return apply_builtin(snap, sym, args);
  }
  bool is_error(Label l) { return snap.node(l).sym == snap.symbols().error_sym(); }
};

Term Q(const std::string& text) { return parse_query(text, sig()); }

// Every term of depth <= d over cons/2, NIL, 0, 1.
std::vector<Term> all_terms(int d) {
  std::vector<Term> out{Term::app("NIL"), Term::integer(0), Term::integer(1)};
  if (d <= 1) return out;
  auto smaller = all_terms(d - 1);
  for (const auto& a : smaller)
    for (const auto& b : smaller) out.push_back(Term::app("cons", {a, b}));
  return out;
}

}  // namespace

TEST_SUITE("builtins") {

TEST_CASE("the builtin table") {
  const auto& t = builtin_table();
  CHECK(t.size() == 17);
  int destructive = 0;
  for (const auto& e : t) destructive += e.destructive;
  CHECK(destructive == 1);
  CHECK(is_destructive(Builtin::DReplace));
  CHECK_FALSE(is_destructive(Builtin::Replace));
}

TEST_CASE("arithmetic") {
  Fixture f;
  CHECK(f.S(f.call("sum", {f.I(3), f.I(5)})) == Term::integer(8));
  CHECK(f.S(f.call("sub", {f.I(3), f.I(5)})) == Term::integer(-2));
  CHECK(f.S(f.call("mul", {f.I(-3), f.I(5)})) == Term::integer(-15));
  CHECK(f.S(f.call("div", {f.I(7), f.I(2)})) == Term::integer(3));
  CHECK(f.S(f.call("div", {f.I(-7), f.I(2)})) == Term::integer(-4));
  CHECK(f.S(f.call("div", {f.I(7), f.I(-2)})) == Term::integer(-4));
  CHECK(f.S(f.call("div", {f.I(-8), f.I(2)})) == Term::integer(-4));
  CHECK(f.is_error(f.call("div", {f.I(1), f.I(0)})));
  CHECK(f.is_error(f.call("sum", {f.I(1), f.L("NIL")})));
  Label big = f.snap.integer(BigInt("1000000000000000000000"));
  CHECK(f.S(f.call("mul", {big, big})) == Term::integer(BigInt("1000000000000000000000000000000000000000000")));
}

TEST_CASE("comparisons and connectives") {
  Fixture f;
  CHECK(f.S(f.call("lt", {f.I(1), f.I(2)})) == Q("true"));
  CHECK(f.S(f.call("le", {f.I(2), f.I(2)})) == Q("true"));
  CHECK(f.S(f.call("gt", {f.I(1), f.I(2)})) == Q("false"));
  CHECK(f.S(f.call("ge", {f.I(1), f.I(2)})) == Q("false"));
  CHECK(f.S(f.call("and", {f.L("true"), f.L("false")})) == Q("false"));
  CHECK(f.S(f.call("or", {f.L("true"), f.L("false")})) == Q("true"));
  CHECK(f.S(f.call("not", {f.L("false")})) == Q("true"));
  CHECK(f.is_error(f.call("lt", {f.L("NIL"), f.I(2)})));
  CHECK(f.is_error(f.call("and", {f.I(1), f.L("true")})));
  CHECK(f.is_error(f.call("not", {f.I(0)})));
}

TEST_CASE("eq is structural equality on all small terms") {
  Fixture f;
  auto terms = all_terms(3);
  REQUIRE(terms.size() == 147);
  std::vector<Label> labels;
  for (const auto& t : terms) labels.push_back(f.L(t));
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = 0; j < terms.size(); ++j) {
      bool expect = terms[i] == terms[j];
      CHECK(f.S(builtin_eq(f.snap, labels[i], labels[j])) == Term::app(expect ? "true" : "false"));
    }
}

TEST_CASE("top") {
  Fixture f;
  CHECK(f.S(f.call("top", {f.L("cons(1, NIL)")})) == Q("c_cons"));
  CHECK(f.S(f.call("top", {f.L("NIL")})) == Q("NIL"));
  CHECK(f.S(f.call("top", {f.I(42)})) == Term::integer(42));
  CHECK(f.S(f.call("top", {f.L("<1, 2, 3>")})) == Term::app("c_tuple3"));
  CHECK(f.call("top", {f.L("cons(1, NIL)")}) == f.call("top", {f.L("cons(NIL, 2)")}));
  CHECK(f.call("top", {f.L("A(1, 2)")}) == f.call("top", {f.L("A(1, 2, 3)")}));
  CHECK(f.call("top", {f.L("pair(1, 2)")}) != f.call("top", {f.L("cons(1, 2)")}));
}

TEST_CASE("arg") {
  Fixture f;
  CHECK(f.S(f.call("arg", {f.I(2), f.L("A(7, 8, 9)")})) == Term::integer(8));
  CHECK(f.is_error(f.call("arg", {f.I(0), f.L("A(7, 8, 9)")})));
  CHECK(f.is_error(f.call("arg", {f.I(4), f.L("A(7, 8, 9)")})));
  CHECK(f.is_error(f.call("arg", {f.L("NIL"), f.L("A(7, 8, 9)")})));
  CHECK(f.is_error(f.call("arg", {f.I(1), f.I(5)})));
  Label x = f.L("cons(pair(1, 2), NIL)");
  CHECK(f.call("arg", {f.I(1), x}) == f.snap.kid(x, 0));
}

TEST_CASE("replace builds a new term and leaves its argument alone") {
  Fixture f;
  Label x = f.L("A(1, 2, 3)");
  Label r = f.call("replace", {f.I(2), f.I(9), x});
  CHECK(f.S(r) == Q("A(1, 9, 3)"));
  CHECK(f.S(x) == Q("A(1, 2, 3)"));
  CHECK(f.is_error(f.call("replace", {f.I(4), f.I(9), x})));
}

TEST_CASE("d_replace mutates the class in place") {
  Fixture f;
  Label x = f.L("<1, 2>");
  Label holder = f.snap.add(*f.snap.symbols().resolve("pair", 2), {x, x});
  Label r = f.call("d_replace", {f.I(1), f.I(2), x});
  CHECK(f.snap.find(r) == f.snap.find(x));
  CHECK(f.S(x) == Q("<2, 2>"));
  CHECK(f.S(holder) == Q("pair(<2, 2>, <2, 2>)"));
  CHECK(f.is_error(f.call("d_replace", {f.I(3), f.I(2), x})));
  CHECK(f.S(x) == Q("<2, 2>"));
}

TEST_CASE("copy detaches later destructive updates") {
  Fixture f;
  Label x = f.L("A(1, 2, 3)");
  Label c = f.call("copy", {x});
  CHECK(f.S(c) == f.S(x));
  f.call("d_replace", {f.I(1), f.I(0), c});
  CHECK(f.S(c) == Q("A(0, 2, 3)"));
  CHECK(f.S(x) == Q("A(1, 2, 3)"));
}

TEST_CASE("projections") {
  Fixture f;
  Label t = f.L("<1, NIL, 3>");
  CHECK(f.S(builtin_proj(f.snap, 2, t)) == Q("NIL"));
  CHECK(f.S(f.call("pi_3", {t})) == Term::integer(3));
  CHECK_THROWS_AS(builtin_proj(f.snap, 4, t), RuntimeError);
  CHECK_THROWS_AS(builtin_proj(f.snap, 1, f.L("cons(1, NIL)")), RuntimeError);
}

TEST_CASE("replace and d_replace agree on a copy") {
  // Differential property over random arrays, indices and values.
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    Fixture f;
    std::size_t n = 1 + rng() % 6;
    std::vector<Term> elems;
    for (std::size_t i = 0; i < n; ++i) elems.push_back(Term::integer(static_cast<long>(rng() % 10)));
    Term arr = Term::app("A", elems);
    long idx = static_cast<long>(rng() % (n + 2));
    long val = static_cast<long>(rng() % 10);
    Label x = f.L(arr);
    Label pure = f.call("replace", {f.I(idx), f.I(val), x});
    Label copy = f.call("copy", {x});
    Label destr = f.call("d_replace", {f.I(idx), f.I(val), copy});
    CAPTURE(idx);
    CHECK(f.S(pure) == f.S(destr));
    CHECK(f.S(x) == arr);
    if (idx >= 1 && idx <= static_cast<long>(n)) {
      Term expect = arr;
      expect.args[idx - 1] = Term::integer(val);
      CHECK(f.S(pure) == expect);
      CHECK(f.S(f.call("arg", {f.I(idx), pure})) == Term::integer(val));
    } else {
      CHECK(f.is_error(pure));
    }
  }
}

TEST_CASE("non-constructor arguments are rejected") {
  Fixture f;
  Label x = f.snap.add(*f.snap.symbols().find("sum", 2), {f.I(1), f.I(2)});
  CHECK_THROWS_AS(builtin_top(f.snap, x), RuntimeError);
}

}
