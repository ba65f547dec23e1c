#ifndef REWLANG_AST_H
#define REWLANG_AST_H

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symbols.h"
#include "term.h"

namespace rewlang {

/// Right-hand side expression: a term that may contain assignments,
/// conditionals, and (before lowering) loops. Statement forms carry their
/// continuation as the last child; inside a braced block the final
/// continuation is a Hole that the enclosing construct fills in.
struct ATerm {
  enum class Kind : unsigned char {
    Var,
    Int,
    App,
    If,      // kids: cond, then, else
    Assign,  // kids: rhs, rest; targets has one name unless tuple_target
    StmtIf,  // kids: cond, then-block, else-block, rest
    For,     // name: counter; kids: start, end, body, rest
    While,   // kids: cond, body, rest
    Until,   // kids: body, cond, rest
    Hole,
  };

  Kind kind = Kind::Hole;
  SourcePos pos;
  std::string name;
  BigInt value;
  std::vector<std::string> targets;
  bool tuple_target = false;
  std::vector<ATerm> kids;

  static ATerm var(std::string name, SourcePos pos = {});
  static ATerm integer(BigInt value, SourcePos pos = {});
  static ATerm app(std::string name, std::vector<ATerm> args, SourcePos pos = {});
  static ATerm cond(ATerm c, ATerm then_branch, ATerm else_branch, SourcePos pos = {});
  static ATerm assign(std::string target, ATerm rhs, ATerm rest, SourcePos pos = {});
  static ATerm tuple_assign(std::vector<std::string> targets, ATerm rhs, ATerm rest, SourcePos pos = {});
  static ATerm stmt_if(ATerm c, ATerm then_block, ATerm else_block, ATerm rest, SourcePos pos = {});
  static ATerm for_loop(std::string counter, ATerm start, ATerm end, ATerm body, ATerm rest, SourcePos pos = {});
  static ATerm while_loop(ATerm c, ATerm body, ATerm rest, SourcePos pos = {});
  static ATerm until_loop(ATerm body, ATerm c, ATerm rest, SourcePos pos = {});
  static ATerm hole();
  static ATerm from_term(const Term& t);

  bool is_statement() const;
  bool is_loop() const { return kind == Kind::For || kind == Kind::While || kind == Kind::Until; }
  ATerm& rest() { return kids.back(); }
  const ATerm& rest() const { return kids.back(); }

  /// Number of Assign nodes (tuple assignments count once).
  std::size_t assignment_count() const;
  bool contains(Kind k) const;
  /// Converts an assignment- and loop-free aterm to a plain term; value
  /// conditionals become applications of the `if` symbol.
  std::optional<Term> to_term() const;

  bool operator==(const ATerm& other) const;
};

/// Free variables with sequential binding: fv(x <- t; R) = fv(t) + (fv(R) - x).
std::set<std::string> free_vars(const ATerm& a);
/// Variables assigned anywhere inside a (including nested blocks).
std::set<std::string> assigned_vars(const ATerm& a);
/// Replaces the Hole terminating a's statement chain by fill. Holes inside
/// nested blocks belong to their own statement and are left alone.
ATerm fill_hole(ATerm a, const ATerm& fill);

struct Rule {
  Term lhs;
  ATerm rhs;
  SourcePos pos;
  bool operator==(const Rule& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

struct Procedure {
  enum class Kind : unsigned char { Rewrite, Flat };

  Kind kind = Kind::Rewrite;
  std::string name;
  std::size_t arity = 0;
  std::vector<Rule> rules;          // Rewrite
  std::vector<std::string> params;  // Flat
  ATerm body;                       // Flat
  bool innermost = false;           // explicit @innermost annotation
  SourcePos pos;
  std::string origin;               // loop site for generated procedures

  bool operator==(const Procedure& o) const;
};

struct ConstructorDecl {
  std::string name;
  std::size_t arity = 0;
  bool variadic = false;
  SourcePos pos;
  bool operator==(const ConstructorDecl& o) const {
    return name == o.name && arity == o.arity && variadic == o.variadic;
  }
};

struct Program {
  std::string file;
  std::vector<ConstructorDecl> constructors;
  std::vector<Procedure> procedures;

  const Procedure* find(std::string_view name) const;
  Procedure* find(std::string_view name);
  bool operator==(const Program& o) const {
    return constructors == o.constructors && procedures == o.procedures;
  }
};

/// Symbol table for a program. Kind conflicts are skipped here; the checks
/// module reports them.
SymbolTable make_symbol_table(const Program& p);

}  // namespace rewlang

#endif
