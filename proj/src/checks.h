#ifndef REWLANG_CHECKS_H
#define REWLANG_CHECKS_H

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ast.h"

namespace rewlang {

struct Diagnostic {
  enum class Severity { Error, Warning };

  Severity severity = Severity::Error;
  std::string code;
  std::string file;
  SourcePos pos;
  std::string message;
};

enum class BindingMode { Single, Multi };

// Diagnostic codes.
inline constexpr const char* kMixedKind = "mixed-kind";
inline constexpr const char* kConstructorRoot = "constructor-root";
inline constexpr const char* kRuleRootMismatch = "rule-root-mismatch";
inline constexpr const char* kDefinedInPattern = "defined-in-pattern";
inline constexpr const char* kNonlinearLhs = "nonlinear-lhs";
inline constexpr const char* kOverlap = "overlap";
inline constexpr const char* kUnboundVar = "unbound-var";
inline constexpr const char* kSelfAssign = "self-assign";
inline constexpr const char* kRebind = "rebind";
inline constexpr const char* kNonexhaustive = "nonexhaustive";

std::vector<Diagnostic> check_partition(const Program& p);
std::vector<Diagnostic> check_left_linear(const Program& p);
std::vector<Diagnostic> check_orthogonal(const Program& p);
std::vector<Diagnostic> check_bindings(const Program& p, BindingMode mode);
std::vector<Diagnostic> check_exhaustive(const Program& p);

/// All checks, sorted by source position.
std::vector<Diagnostic> check_program(const Program& p, BindingMode mode = BindingMode::Multi);

bool has_errors(const std::vector<Diagnostic>& ds);
/// `severity code file:line:col message`
std::string format_diagnostic(const Diagnostic& d);

using TermSubst = std::map<std::string, Term>;

/// Most general unifier of two terms (variables of a and b are assumed
/// disjoint), with occurs check.
std::optional<TermSubst> unify(const Term& a, const Term& b);
Term apply_subst(const Term& t, const TermSubst& s);

/// An uncovered argument vector for a rewrite procedure's rules, with `_`
/// for unconstrained positions; nullopt when the rules are exhaustive.
std::optional<std::vector<Term>> uncovered_pattern(const Procedure& proc, const Program& p);

}  // namespace rewlang

#endif
