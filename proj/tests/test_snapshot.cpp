#include <doctest.h>

#include <random>

#include "snapshot.h"
#include "support.h"

using namespace rewlang;
using namespace rewlang::test;

namespace {

std::shared_ptr<SymbolTable> table() {
  Program p = parse_program(R"(
    constructors f/2, g/1, h/1, c/0, d/0, cons/2, NIL/0;
  )");
  return std::make_shared<SymbolTable>(make_symbol_table(p));
}

Term T(const std::string& text) {
  static Program p = parse_program("constructors f/2, g/1, h/1, c/0, d/0, cons/2, NIL/0;");
  return parse_query(text, p);
}

}  // namespace

TEST_SUITE("snapshot") {

TEST_CASE("decorate shares identical subterms") {
  Snapshot snap(table());
  Label l = decorate(T("f(g(c), g(c))"), snap);
  CHECK(snap.kid(l, 0) == snap.kid(l, 1));
  CHECK(decorated_string(l, snap) == "3:f(2:g(1:c),2:g(1:c))");
  CHECK(strip(l, snap) == T("f(g(c), g(c))"));
}

TEST_CASE("fresh decoration shares nothing") {
  Snapshot snap(table());
  Label l = decorate(T("f(g(c), g(c))"), snap, DecoratePolicy::AllFresh);
  CHECK(snap.kid(l, 0) != snap.kid(l, 1));
  CHECK(snap.kid(snap.kid(l, 0), 0) != snap.kid(snap.kid(l, 1), 0));
  CHECK(strip(l, snap) == T("f(g(c), g(c))"));
}

TEST_CASE("labels start at the configured origin") {
  Snapshot snap(table(), 100);
  Label l = decorate(T("g(c)"), snap);
  CHECK(l.id == 101);
  CHECK(snap.origin() == 100);
  CHECK(snap.contains(Label{100}));
  CHECK_FALSE(snap.contains(Label{99}));
}

TEST_CASE("integers are shared constants") {
  Snapshot snap(table());
  CHECK(snap.integer(5) == snap.integer(5));
  CHECK(snap.integer(5) != snap.integer(6));
  CHECK(snap.boolean(true) == snap.constant(snap.symbols().true_sym()));
  CHECK(strip(snap.integer(-7), snap) == Term::integer(-7));
}

TEST_CASE("splice rewrites every occurrence in parallel") {
  Snapshot snap(table());
  Label root = decorate(T("f(g(c), h(g(c)))"), snap);
  snap.set_root(root);
  Label gc = snap.kid(root, 0);
  Label d = decorate(T("d"), snap);
  snap.splice(gc, d);
  CHECK(strip(snap.root(), snap) == T("f(d, h(d))"));
  CHECK(snap.resolve(gc) == d);
  CHECK_FALSE(check_store(snap));
}

TEST_CASE("splicing the root redirects the root") {
  Snapshot snap(table());
  Label root = decorate(T("g(c)"), snap);
  snap.set_root(root);
  Label other = decorate(T("h(d)"), snap);
  snap.splice(root, other);
  CHECK(snap.root() == other);
  CHECK(strip(snap.root(), snap) == T("h(d)"));
}

TEST_CASE("forwarding chains are compressed") {
  Snapshot snap(table());
  Label a = decorate(T("g(c)"), snap);
  Label b = decorate(T("h(c)"), snap);
  Label c = decorate(T("g(d)"), snap);
  snap.splice(a, b);
  snap.splice(b, c);
  CHECK(snap.find(a) == c);
  CHECK(snap.resolve(a) == c);
  CHECK(std::as_const(snap).raw(a).forward == c);
}

TEST_CASE("set_kid is visible through all holders") {
  Snapshot snap(table());
  Label shared = decorate(T("f(c, c)"), snap);
  Label outer = snap.add(*snap.symbols().find("f", 2), {shared, shared});
  snap.set_kid(shared, 0, snap.constant(*snap.symbols().find("d", 0)));
  CHECK(strip(outer, snap) == T("f(f(d, c), f(d, c))"));
}

TEST_CASE("occurs check rejects cyclic updates") {
  Snapshot snap(table());
  Label l = decorate(T("f(c, g(c))"), snap);
  Label inner = snap.kid(l, 1);
  snap.set_occurs_check(true);
  CHECK_THROWS_AS(snap.set_kid(inner, 0, l), OccursViolation);
  CHECK(strip(l, snap) == T("f(c, g(c))"));
  snap.set_occurs_check(false);
  snap.set_kid(inner, 0, l);
  CHECK_THROWS_AS(strip(l, snap), CycleDetected);
  snap.set_root(l);
  auto v = check_store(snap);
  REQUIRE(v);
  CHECK(v->kind == StoreViolation::Kind::Cycle);
  CHECK_FALSE(check_store(snap, false));
}

TEST_CASE("store violations are detected") {
  Snapshot snap(table());
  Label l = decorate(T("f(c, g(c))"), snap);
  snap.set_root(l);
  REQUIRE_FALSE(check_store(snap));

  SUBCASE("dangling child") {
    snap.debug_set_kid(l, 0, Label{999});
    auto v = check_store(snap);
    REQUIRE(v);
    CHECK(v->kind == StoreViolation::Kind::Closedness);
  }
  SUBCASE("forwarding loop") {
    Label g = snap.kid(l, 1);
    Label c = snap.kid(l, 0);
    snap.debug_set_forward(g, c);
    snap.debug_set_forward(c, g);
    auto v = check_store(snap);
    REQUIRE(v);
    CHECK(v->kind == StoreViolation::Kind::Forwarding);
  }
}

TEST_CASE("match binds variables to classes") {
  Snapshot snap(table());
  Label l = decorate(T("cons(g(c), NIL)"), snap);
  Term pat = Term::app("cons", {Term::var("u"), Term::app("NIL")});
  auto theta = match(pat, l, snap);
  REQUIRE(theta);
  CHECK(theta->at("u") == snap.kid(l, 0));
  CHECK_FALSE(match(Term::app("cons", {Term::var("u"), Term::app("cons", {Term::var("a"), Term::var("b")})}),
                    l, snap));
  CHECK(match(Term::var("z"), l, snap)->at("z") == l);
}

TEST_CASE("instantiate shares bound classes") {
  Snapshot snap(table());
  Label arg = decorate(T("g(c)"), snap);
  Term rhs = Term::app("f", {Term::var("x"), Term::app("h", {Term::var("x")})});
  Label out = instantiate(rhs, {{"x", arg}}, snap);
  CHECK(snap.kid(out, 0) == arg);
  CHECK(snap.kid(snap.kid(out, 1), 0) == arg);
  CHECK(strip(out, snap) == T("f(g(c), h(g(c)))"));
}

TEST_CASE("copy_class gives the same term with fresh labels") {
  Snapshot snap(table());
  Label l = decorate(T("f(g(c), g(c))"), snap);
  Label k = copy_class(l, snap);
  CHECK(k != l);
  CHECK(strip(k, snap) == strip(l, snap));
  CHECK(snap.kid(k, 0) != snap.kid(l, 0));
  snap.set_kid(snap.kid(k, 0), 0, snap.constant(*snap.symbols().find("d", 0)));
  CHECK(strip(l, snap) == T("f(g(c), g(c))"));
}

// Reference result of a splice: the stripped root with the class beta
// replaced by repl, computed before the store changes.
Term replaced(const Snapshot& snap, Label at, Label beta, const Term& repl) {
  if (snap.find(at) == snap.find(beta)) return repl;
  Term t = strip(at, snap);
  const Node& n = snap.node(at);
  for (std::size_t i = 0; i < n.kids.size(); ++i) t.args[i] = replaced(snap, n.kids[i], beta, repl);
  return t;
}

TEST_CASE("random splices agree with term replacement") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    Snapshot snap(table());
    Label root = decorate(T("f(f(g(c), h(d)), f(g(c), cons(c, NIL)))"), snap,
                          round % 2 ? DecoratePolicy::AllFresh : DecoratePolicy::ShareIdentical);
    snap.set_root(root);
    for (int i = 0; i < 10; ++i) {
      auto reach = snap.reachable(snap.root());
      Label beta = reach[rng() % reach.size()];
      if (snap.node(beta).kids.empty()) continue;
      Term repl_term = T(rng() % 2 ? "g(d)" : "cons(c, c)");
      Term expect = replaced(snap, snap.root(), beta, repl_term);
      Label repl = decorate(repl_term, snap, DecoratePolicy::AllFresh);
      snap.splice(beta, repl);
      CHECK(strip(snap.root(), snap) == expect);
      CHECK_FALSE(check_store(snap));
      CHECK(snap.find(beta) == snap.find(repl));
    }
  }
}

}
