#include "term.h"

#include "symbols.h"

namespace rewlang {

Term Term::var(std::string name) {
  Term t;
  t.kind = Kind::Var;
  t.name = std::move(name);
  return t;
}

Term Term::integer(BigInt value) {
  Term t;
  t.kind = Kind::Int;
  t.value = std::move(value);
  return t;
}

Term Term::app(std::string name, std::vector<Term> args) {
  Term t;
  t.kind = Kind::App;
  t.name = std::move(name);
  t.args = std::move(args);
  return t;
}

Term Term::tuple(std::vector<Term> args) { return app(std::string(kTupleName), std::move(args)); }

bool Term::is_tuple() const { return kind == Kind::App && name == kTupleName; }

bool Term::is_ground() const {
  if (kind == Kind::Var) return false;
  for (const auto& a : args)
    if (!a.is_ground()) return false;
  return true;
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const auto& a : args) n += a.size();
  return n;
}

bool Term::operator==(const Term& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Var: return name == other.name;
    case Kind::Int: return value == other.value;
    case Kind::App: return name == other.name && args == other.args;
  }
  return false;
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

std::set<std::string> vars_of(const Term& t) {
  std::vector<std::string> v;
  collect_vars(t, v);
  return {v.begin(), v.end()};
}

}  // namespace rewlang
