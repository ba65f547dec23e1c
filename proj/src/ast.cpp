#include "ast.h"

namespace rewlang {

ATerm ATerm::var(std::string name, SourcePos pos) {
  ATerm a;
  a.kind = Kind::Var;
  a.name = std::move(name);
  a.pos = pos;
  return a;
}

ATerm ATerm::integer(BigInt value, SourcePos pos) {
  ATerm a;
  a.kind = Kind::Int;
  a.value = std::move(value);
  a.pos = pos;
  return a;
}

ATerm ATerm::app(std::string name, std::vector<ATerm> args, SourcePos pos) {
  ATerm a;
  a.kind = Kind::App;
  a.name = std::move(name);
  a.kids = std::move(args);
  a.pos = pos;
  return a;
}

ATerm ATerm::cond(ATerm c, ATerm then_branch, ATerm else_branch, SourcePos pos) {
  ATerm a;
  a.kind = Kind::If;
  a.kids = {std::move(c), std::move(then_branch), std::move(else_branch)};
  a.pos = pos;
  return a;
}

ATerm ATerm::assign(std::string target, ATerm rhs, ATerm rest, SourcePos pos) {
  ATerm a;
  a.kind = Kind::Assign;
  a.targets = {std::move(target)};
  a.kids = {std::move(rhs), std::move(rest)};
  a.pos = pos;
  return a;
}

ATerm ATerm::tuple_assign(std::vector<std::string> targets, ATerm rhs, ATerm rest, SourcePos pos) {
  ATerm a;
  a.kind = Kind::Assign;
  a.tuple_target = true;
  a.targets = std::move(targets);
  a.kids = {std::move(rhs), std::move(rest)};
  a.pos = pos;
  return a;
}

ATerm ATerm::stmt_if(ATerm c, ATerm then_block, ATerm else_block, ATerm rest, SourcePos pos) {
  ATerm a;
  a.kind = Kind::StmtIf;
  a.kids = {std::move(c), std::move(then_block), std::move(else_block), std::move(rest)};
  a.pos = pos;
  return a;
}

ATerm ATerm::for_loop(std::string counter, ATerm start, ATerm end, ATerm body, ATerm rest, SourcePos pos) {
  ATerm a;
  a.kind = Kind::For;
  a.name = std::move(counter);
  a.kids = {std::move(start), std::move(end), std::move(body), std::move(rest)};
  a.pos = pos;
  return a;
}

ATerm ATerm::while_loop(ATerm c, ATerm body, ATerm rest, SourcePos pos) {
  ATerm a;
  a.kind = Kind::While;
  a.kids = {std::move(c), std::move(body), std::move(rest)};
  a.pos = pos;
  return a;
}

ATerm ATerm::until_loop(ATerm body, ATerm c, ATerm rest, SourcePos pos) {
  ATerm a;
  a.kind = Kind::Until;
  a.kids = {std::move(body), std::move(c), std::move(rest)};
  a.pos = pos;
  return a;
}

ATerm ATerm::hole() { return ATerm{}; }

ATerm ATerm::from_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: return var(t.name);
    case Term::Kind::Int: return integer(t.value);
    case Term::Kind::App: break;
  }
  std::vector<ATerm> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(from_term(a));
  if (t.name == kIfName && args.size() == 3)
    return cond(std::move(args[0]), std::move(args[1]), std::move(args[2]));
  return app(t.name, std::move(args));
}

bool ATerm::is_statement() const {
  switch (kind) {
    case Kind::Assign:
    case Kind::StmtIf:
    case Kind::For:
    case Kind::While:
    case Kind::Until:
    case Kind::Hole:
      return true;
    default:
      return false;
  }
}

std::size_t ATerm::assignment_count() const {
  std::size_t n = kind == Kind::Assign ? 1 : 0;
  for (const auto& k : kids) n += k.assignment_count();
  return n;
}

bool ATerm::contains(Kind k) const {
  if (kind == k) return true;
  for (const auto& c : kids)
    if (c.contains(k)) return true;
  return false;
}

std::optional<Term> ATerm::to_term() const {
  switch (kind) {
    case Kind::Var: return Term::var(name);
    case Kind::Int: return Term::integer(value);
    case Kind::App:
    case Kind::If: {
      std::vector<Term> args;
      for (const auto& k : kids) {
        auto t = k.to_term();
        if (!t) return std::nullopt;
        args.push_back(std::move(*t));
      }
      return Term::app(kind == Kind::If ? std::string(kIfName) : name, std::move(args));
    }
    default:
      return std::nullopt;
  }
}

bool ATerm::operator==(const ATerm& o) const {
  return kind == o.kind && name == o.name && value == o.value && targets == o.targets &&
         tuple_target == o.tuple_target && kids == o.kids;
}

std::set<std::string> free_vars(const ATerm& a) {
  using K = ATerm::Kind;
  std::set<std::string> out;
  auto merge = [&out](const std::set<std::string>& s) { out.insert(s.begin(), s.end()); };
  switch (a.kind) {
    case K::Var:
      out.insert(a.name);
      break;
    case K::Int:
    case K::Hole:
      break;
    case K::App:
    case K::If:
      for (const auto& k : a.kids) merge(free_vars(k));
      break;
    case K::Assign: {
      merge(free_vars(a.kids[0]));
      auto rest = free_vars(a.kids[1]);
      for (const auto& t : a.targets) rest.erase(t);
      merge(rest);
      break;
    }
    case K::StmtIf:
      merge(free_vars(a.kids[0]));
      merge(free_vars(fill_hole(a.kids[1], a.kids[3])));
      merge(free_vars(fill_hole(a.kids[2], a.kids[3])));
      break;
    case K::For: {
      // The counter is bound in the body and in the continuation.
      auto body_and_rest = free_vars(a.kids[2]);
      auto rest = free_vars(a.kids[3]);
      merge(free_vars(a.kids[0]));
      merge(free_vars(a.kids[1]));
      body_and_rest.insert(rest.begin(), rest.end());
      body_and_rest.erase(a.name);
      merge(body_and_rest);
      break;
    }
    case K::While:
      for (const auto& k : a.kids) merge(free_vars(k));
      break;
    case K::Until: {
      // The test and the continuation see the body's bindings.
      ATerm tail = ATerm::app("#seq", {a.kids[1], a.kids[2]});
      merge(free_vars(fill_hole(a.kids[0], tail)));
      break;
    }
  }
  return out;
}

std::set<std::string> assigned_vars(const ATerm& a) {
  std::set<std::string> out;
  if (a.kind == ATerm::Kind::Assign) out.insert(a.targets.begin(), a.targets.end());
  for (const auto& k : a.kids) {
    auto s = assigned_vars(k);
    out.insert(s.begin(), s.end());
  }
  return out;
}

ATerm fill_hole(ATerm a, const ATerm& fill) {
  if (a.kind == ATerm::Kind::Hole) return fill;
  if (a.is_statement()) a.rest() = fill_hole(std::move(a.rest()), fill);
  return a;
}

bool Procedure::operator==(const Procedure& o) const {
  return kind == o.kind && name == o.name && arity == o.arity && rules == o.rules &&
         params == o.params && body == o.body && innermost == o.innermost;
}

const Procedure* Program::find(std::string_view name) const {
  for (const auto& p : procedures)
    if (p.name == name) return &p;
  return nullptr;
}

Procedure* Program::find(std::string_view name) {
  for (auto& p : procedures)
    if (p.name == name) return &p;
  return nullptr;
}

SymbolTable make_symbol_table(const Program& p) {
  SymbolTable table;
  for (const auto& c : p.constructors) {
    if (c.variadic)
      table.declare_variadic(c.name);
    else
      table.declare_constructor(c.name, c.arity);
  }
  for (const auto& proc : p.procedures) table.declare_defined(proc.name, proc.arity);
  return table;
}

}  // namespace rewlang
