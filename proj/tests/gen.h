#ifndef REWLANG_TEST_GEN_H
#define REWLANG_TEST_GEN_H

#include <map>
#include <random>
#include <string>
#include <vector>

#include "ast.h"

namespace rewlang::test {

/// Random aterms over f/2, g/1, h/1, c/0, d/0, the variables x, y, z and
/// assignments to them. Assignment right-hand sides are assignment-free.
class ATermGen {
 public:
  explicit ATermGen(std::uint64_t seed, int depth = 4) : rng_(seed), depth_(depth) {}

  ATerm aterm() { return gen(depth_, true); }
  ATerm plain() { return gen(depth_, false); }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  ATerm leaf() {
    static const char* kLeaves[] = {"c", "d", "x", "y", "z"};
    std::string n = kLeaves[pick(5)];
    if (n == "c" || n == "d") return ATerm::app(n, {});
    return ATerm::var(n);
  }

  ATerm gen(int depth, bool assign) {
    if (depth <= 0) return leaf();
    int choice = pick(assign ? 6 : 4);
    switch (choice) {
      case 0: return leaf();
      case 1: return ATerm::app("f", {gen(depth - 1, assign), gen(depth - 1, assign)});
      case 2: return ATerm::app("g", {gen(depth - 1, assign)});
      case 3: return ATerm::app("h", {gen(depth - 1, assign)});
      default: {
        static const char* kVars[] = {"x", "y", "z"};
        return ATerm::assign(kVars[pick(3)], gen(depth - 1, false), gen(depth - 1, assign));
      }
    }
  }

  std::mt19937_64 rng_;
  int depth_;
};

/// Reference elimination by textual substitution: x <- t; E becomes E[x := t].
inline Term substitute_out(const ATerm& a, const std::map<std::string, Term>& env = {}) {
  switch (a.kind) {
    case ATerm::Kind::Var: {
      auto it = env.find(a.name);
      return it == env.end() ? Term::var(a.name) : it->second;
    }
    case ATerm::Kind::Int: return Term::integer(a.value);
    case ATerm::Kind::Assign: {
      auto inner = env;
      inner[a.targets.at(0)] = substitute_out(a.kids[0], env);
      return substitute_out(a.kids[1], inner);
    }
    default: break;
  }
  std::vector<Term> args;
  for (const auto& k : a.kids) args.push_back(substitute_out(k, env));
  return Term::app(a.kind == ATerm::Kind::If ? "if" : a.name, std::move(args));
}

}  // namespace rewlang::test

#endif
