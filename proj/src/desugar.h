#ifndef REWLANG_DESUGAR_H
#define REWLANG_DESUGAR_H

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ast.h"

namespace rewlang {

/// Hands out names not yet used in a scope.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}

  void reserve(const std::string& name) { used_.insert(name); }
  bool used(const std::string& name) const { return used_.count(name) != 0; }
  /// base itself when free, otherwise base1, base2, ...
  std::string fresh(const std::string& base);
  /// The next free base<k> with k >= 1.
  std::string numbered(const std::string& base);

 private:
  std::set<std::string> used_;
};

/// Every variable-like name in a procedure: parameters, pattern variables,
/// assignment targets, loop counters and variable occurrences.
std::set<std::string> names_in(const Procedure& p);
void collect_names(const ATerm& a, std::set<std::string>& out);

struct LoweredProgram {
  Program program;
  // generated procedure -> originating loop
  std::map<std::string, std::string> origins;
};

/// The assignment-free rewrite system R_P. Every procedure of `program` is a
/// rewrite procedure whose right-hand sides hold only applications and value
/// conditionals.
struct RewriteSystem {
  Program program;
  std::vector<Rule> rules() const;
};

/// Replaces loops, outermost first, by calls to fresh flat procedures
/// p_for_k / p_while_k / p_until_k whose parameters are the loop's live
/// variables.
LoweredProgram lower_loops(const Program& p);

/// <x1..xn> <- t; E  becomes  x <- t; x1 <- pi_1(x); ...; xn <- pi_n(x); E.
ATerm expand_tuple_assign(const ATerm& a, NameSupply& names);
ATerm expand_tuple_assign(const ATerm& a);

/// (if B then S1 else S2); E  becomes  if B then S1;E else S2;E.
ATerm distribute_if_seq(const ATerm& a);

/// Single-assignment form: each rebinding of x gets a fresh numbered name.
/// `bound` holds the names in scope on entry (formals).
ATerm rename_multi_assign(const ATerm& a, const std::set<std::string>& bound, NameSupply& names);
ATerm rename_multi_assign(const ATerm& a, const std::set<std::string>& bound);

/// lower_loops followed by tuple expansion and if distribution on every
/// body: the loop-free form the evaluator runs.
LoweredProgram prepare_program(const Program& p);

/// The full pipeline down to R_P.
RewriteSystem flatten_program(const Program& p);

}  // namespace rewlang

#endif
