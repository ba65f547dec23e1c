#include <doctest.h>

#include <random>

#include "checks.h"
#include "support.h"

using namespace rewlang;
using namespace rewlang::test;

namespace {

std::vector<std::string> codes(const std::vector<Diagnostic>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.code);
  return out;
}

std::vector<std::string> check_codes(const std::string& src, BindingMode mode = BindingMode::Multi) {
  return codes(check_program(parse_program(src), mode));
}

// Ground argument terms over a/0, b/0, s/1, p/2 up to depth d.
std::vector<Term> ground(int d) {
  std::vector<Term> out{Term::app("a"), Term::app("b")};
  if (d <= 1) return out;
  auto smaller = ground(d - 1);
  for (const auto& x : smaller) out.push_back(Term::app("s", {x}));
  for (const auto& x : smaller)
    for (const auto& y : smaller) out.push_back(Term::app("p", {x, y}));
  return out;
}

bool matches(const Term& pat, const Term& t) {
  if (pat.is_var()) return true;
  if (pat.name != t.name || pat.args.size() != t.args.size()) return false;
  for (std::size_t i = 0; i < pat.args.size(); ++i)
    if (!matches(pat.args[i], t.args[i])) return false;
  return true;
}

// Random linear pattern of depth <= d with fresh variables.
std::string pattern(std::mt19937_64& rng, int d, int& var) {
  int choice = static_cast<int>(rng() % (d <= 1 ? 3 : 5));
  switch (choice) {
    case 0: return "v" + std::to_string(var++);
    case 1: return "a";
    case 2: return "b";
    case 3: return "s(" + pattern(rng, d - 1, var) + ")";
    default: {
      std::string l = pattern(rng, d - 1, var);
      return "p(" + l + ", " + pattern(rng, d - 1, var) + ")";
    }
  }
}

}  // namespace

TEST_SUITE("checks") {

TEST_CASE("corpus programs have no errors") {
  for (const auto& name : corpus_files()) {
    CAPTURE(name);
    auto ds = check_program(corpus(name));
    CHECK_FALSE(has_errors(ds));
  }
}

TEST_CASE("fixtures produce their diagnostic") {
  struct Case {
    const char* file;
    const char* code;
    BindingMode mode;
  };
  const Case cases[] = {
      {"nonlinear.trs", kNonlinearLhs, BindingMode::Multi},
      {"overlap.trs", kOverlap, BindingMode::Multi},
      {"ctor_root.trs", kConstructorRoot, BindingMode::Multi},
      {"unbound.trs", kUnboundVar, BindingMode::Multi},
      {"self_assign.trs", kSelfAssign, BindingMode::Multi},
      {"defined_in_pattern.trs", kDefinedInPattern, BindingMode::Multi},
      {"rebind.trs", kRebind, BindingMode::Single},
  };
  for (const auto& c : cases) {
    CAPTURE(c.file);
    auto ds = check_program(parse_program(read_file(fixture_path(c.file)), c.file), c.mode);
    std::vector<std::string> errors;
    for (const auto& d : ds)
      if (d.severity == Diagnostic::Severity::Error) errors.push_back(d.code);
    CHECK(errors == std::vector<std::string>{c.code});
  }
}

TEST_CASE("partition errors") {
  CHECK(check_codes("constructors f/1; flat f(x) { x }") == std::vector<std::string>{kMixedKind});
  CHECK(check_codes("constructors f/1; rewrite f { f(x) -> x; }") == std::vector<std::string>{kConstructorRoot});
  CHECK(check_codes("rewrite g { g(x) -> x; } rewrite h { g(y) -> y; }") ==
        std::vector<std::string>{kRuleRootMismatch});
}

TEST_CASE("left-linearity") {
  auto ds = check_left_linear(parse_program("constructors c/0; rewrite f { f(x, g(x)) -> x; } rewrite g { g(y) -> y; }"));
  CHECK(codes(ds) == std::vector<std::string>{kNonlinearLhs});
}

TEST_CASE("orthogonality reports the unified witness") {
  auto ds = check_orthogonal(parse_program(read_file(fixture_path("overlap.trs"))));
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].message.find("f(c)") != std::string::npos);
  CHECK(ds[0].pos.line == 5);
  CHECK(check_orthogonal(parse_program("constructors c/0, d/0; rewrite g { g(c) -> c; g(d) -> d; }")).empty());
  CHECK(check_orthogonal(parse_program("constructors s/1, z/0; rewrite g { g(s(x)) -> x; g(s(s(y))) -> y; }"))
            .size() == 1);
}

TEST_CASE("unification") {
  auto s = unify(Term::app("f", {Term::var("x"), Term::app("g", {Term::var("y")})}),
                 Term::app("f", {Term::app("c"), Term::var("z")}));
  REQUIRE(s);
  CHECK(apply_subst(Term::var("x"), *s) == Term::app("c"));
  CHECK(apply_subst(Term::var("z"), *s) == Term::app("g", {Term::var("y")}));
  CHECK_FALSE(unify(Term::var("x"), Term::app("g", {Term::var("x")})));
  CHECK_FALSE(unify(Term::app("c"), Term::app("d")));
  CHECK_FALSE(unify(Term::integer(1), Term::integer(2)));
  CHECK(unify(Term::integer(1), Term::integer(1)));
}

TEST_CASE("overlap detection agrees with brute force") {
  std::mt19937_64 rng(3);
  auto terms = ground(3);
  int overlapping_systems = 0;
  for (int round = 0; round < 300; ++round) {
    std::size_t n = 2 + rng() % 3;
    std::vector<Term> lhss;
    std::string src = "constructors a/0, b/0, s/1, p/2;\nrewrite f {\n";
    for (std::size_t i = 0; i < n; ++i) {
      int var = 0;
      std::string pat = pattern(rng, 3, var);
      src += "  f(" + pat + ") -> a;\n";
    }
    src += "}\n";
    Program p = parse_program(src);
    for (const auto& r : p.procedures[0].rules) lhss.push_back(r.lhs.args[0]);
    // Pairs (i, j) with a ground instance matched by both.
    std::size_t expected = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        bool both = false;
        for (const auto& t : terms)
          if (matches(lhss[i], t) && matches(lhss[j], t)) {
            both = true;
            break;
          }
        expected += both;
      }
    overlapping_systems += expected > 0;
    CAPTURE(src);
    CHECK(check_orthogonal(p).size() == expected);
  }
  // The generator must exercise both outcomes.
  CHECK(overlapping_systems > 30);
  CHECK(overlapping_systems < 270);
}

TEST_CASE("exhaustiveness agrees with brute force") {
  std::mt19937_64 rng(5);
  auto terms = ground(3);
  int uncovered_systems = 0;
  for (int round = 0; round < 300; ++round) {
    std::size_t n = 1 + rng() % 4;
    std::string src = "constructors a/0, b/0, s/1, p/2;\nrewrite f {\n";
    for (std::size_t i = 0; i < n; ++i) {
      int var = 0;
      src += "  f(" + pattern(rng, 3, var) + ") -> a;\n";
    }
    src += "}\n";
    Program p = parse_program(src);
    bool uncovered = false;
    for (const auto& t : terms) {
      bool hit = false;
      for (const auto& r : p.procedures[0].rules) hit = hit || matches(r.lhs.args[0], t);
      if (!hit) {
        uncovered = true;
        break;
      }
    }
    uncovered_systems += uncovered;
    CAPTURE(src);
    auto witness = uncovered_pattern(p.procedures[0], p);
    CHECK(witness.has_value() == uncovered);
    if (witness) {
      // The witness must itself escape every rule.
      for (const auto& r : p.procedures[0].rules) CHECK_FALSE(matches(r.lhs.args[0], (*witness)[0]));
    }
  }
  CHECK(uncovered_systems > 30);
  CHECK(uncovered_systems < 270);
}

TEST_CASE("nonexhaustive is a warning with a witness") {
  auto ds = check_program(parse_program(read_file(fixture_path("uncovered.trs"))));
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].severity == Diagnostic::Severity::Warning);
  CHECK(ds[0].code == kNonexhaustive);
  CHECK(ds[0].message.find("length(pair(_,_))") != std::string::npos);
  CHECK_FALSE(has_errors(ds));
  // Flat procedures are never flagged.
  CHECK(check_exhaustive(parse_program("flat f(x) { x }")).empty());
  // Booleans are a closed family.
  CHECK(check_exhaustive(parse_program("rewrite f { f(true) -> 1; f(false) -> 0; }")).empty());
  CHECK(check_exhaustive(parse_program("rewrite f { f(true) -> 1; }")).size() == 1);
}

TEST_CASE("binding rules") {
  CHECK(check_codes("flat f(x) { y <- x + 1; y }").empty());
  CHECK(check_codes("flat f(x) { y <- z + 1; y }") == std::vector<std::string>{kUnboundVar});
  CHECK(check_codes("flat f(x) { x <- x + 1; x }").empty());
  CHECK(check_codes("flat f(x) { x <- x + 1; x }", BindingMode::Single) == std::vector<std::string>{kRebind});
  CHECK(check_codes("flat f(x) { i <- i + 1; x }") == std::vector<std::string>{kSelfAssign});
  // The loop counter is bound inside the body.
  CHECK(check_codes("flat f(n) { s <- 0; for i = 1 step 1 until n do { s <- s + i }; s }").empty());
  CHECK(check_codes("flat f(n) { for i = 1 step 1 until n do { s <- i }; s }") ==
        std::vector<std::string>{kUnboundVar});
  // A variable bound in only one branch is not visible after the conditional.
  CHECK(check_codes("flat f(x) { if x > 0 then { y <- 1 } else { z <- 2 }; y }") ==
        std::vector<std::string>{kUnboundVar});
  CHECK(check_codes("flat f(x) { if x > 0 then { y <- 1 } else { y <- 2 }; y }").empty());
  CHECK(check_codes("flat f(x) { <a, b> <- <x, x>; a + b }").empty());
  CHECK(check_codes("rewrite f { f(x) -> (y <- x; y + y); }").empty());
}

TEST_CASE("the loop example follows multi-assignment semantics") {
  Program p = corpus("doubling_loop.trs");
  CHECK(check_program(p, BindingMode::Multi).empty());
  auto strict = codes(check_program(p, BindingMode::Single));
  CHECK(std::count(strict.begin(), strict.end(), std::string(kRebind)) >= 1);
}

TEST_CASE("diagnostics are sorted and formatted") {
  auto ds = check_program(parse_program(
      "constructors c/0;\nrewrite f {\n  f(x, x) -> w;\n  f(c, y) -> y;\n}\n", "t.trs"));
  REQUIRE(ds.size() >= 3);
  for (std::size_t i = 1; i < ds.size(); ++i) CHECK(ds[i - 1].pos <= ds[i].pos);
  CHECK(format_diagnostic(ds[0]).rfind("error ", 0) == 0);
  CHECK(format_diagnostic(ds[0]).find(" t.trs:3:") != std::string::npos);
}

}
