#include "checks.h"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

#include "printer.h"

namespace rewlang {

namespace {

Diagnostic error(const Program& p, const char* code, SourcePos pos, std::string msg) {
  return {Diagnostic::Severity::Error, code, p.file, pos, std::move(msg)};
}

std::set<std::string> constructor_names(const Program& p) {
  std::set<std::string> out;
  for (const auto& c : p.constructors) out.insert(c.name);
  return out;
}

bool is_defined_name(const Program& p, const std::set<std::string>& ctors, const Term& t) {
  if (!t.is_app() || ctors.count(t.name)) return false;
  if (p.find(t.name)) return true;
  return lookup_builtin(t.name).has_value() || projection_index(t.name).has_value() ||
         t.name == kIfName;
}

void find_defined(const Program& p, const std::set<std::string>& ctors, const Term& t,
                  std::vector<std::string>& out) {
  if (is_defined_name(p, ctors, t)) out.push_back(t.name);
  for (const auto& a : t.args) find_defined(p, ctors, a, out);
}

}  // namespace

std::vector<Diagnostic> check_partition(const Program& p) {
  std::vector<Diagnostic> out;
  auto ctors = constructor_names(p);
  for (const auto& proc : p.procedures) {
    if (proc.kind == Procedure::Kind::Flat && ctors.count(proc.name))
      out.push_back(error(p, kMixedKind, proc.pos,
                          proc.name + " is declared as a constructor and defined as a procedure"));
    for (const auto& r : proc.rules) {
      if (ctors.count(r.lhs.name)) {
        out.push_back(error(p, kConstructorRoot, r.pos,
                            "rule left-hand side is headed by constructor " + r.lhs.name));
      } else if (r.lhs.name != proc.name) {
        out.push_back(error(p, kRuleRootMismatch, r.pos,
                            "rule for " + r.lhs.name + " inside procedure " + proc.name));
      }
      std::vector<std::string> defined;
      for (const auto& a : r.lhs.args) find_defined(p, ctors, a, defined);
      for (const auto& d : defined)
        out.push_back(error(p, kDefinedInPattern, r.pos,
                            "defined symbol " + d + " inside the pattern of " + to_string(r.lhs)));
    }
  }
  return out;
}

std::vector<Diagnostic> check_left_linear(const Program& p) {
  std::vector<Diagnostic> out;
  for (const auto& proc : p.procedures) {
    for (const auto& r : proc.rules) {
      std::vector<std::string> vars;
      collect_vars(r.lhs, vars);
      std::set<std::string> seen, reported;
      for (const auto& v : vars)
        if (!seen.insert(v).second && reported.insert(v).second)
          out.push_back(error(p, kNonlinearLhs, r.pos,
                              "variable " + v + " repeated in " + to_string(r.lhs)));
    }
  }
  return out;
}

namespace {

const Term& walk(const Term& t, const TermSubst& s) {
  const Term* cur = &t;
  while (cur->is_var()) {
    auto it = s.find(cur->name);
    if (it == s.end()) break;
    cur = &it->second;
  }
  return *cur;
}

bool occurs(const std::string& v, const Term& t, const TermSubst& s) {
  const Term& w = walk(t, s);
  if (w.is_var()) return w.name == v;
  for (const auto& a : w.args)
    if (occurs(v, a, s)) return true;
  return false;
}

bool unify_into(const Term& a, const Term& b, TermSubst& s) {
  const Term& x = walk(a, s);
  const Term& y = walk(b, s);
  if (x.is_var() && y.is_var() && x.name == y.name) return true;
  if (x.is_var()) {
    if (occurs(x.name, y, s)) return false;
    s.emplace(x.name, y);
    return true;
  }
  if (y.is_var()) return unify_into(y, x, s);
  if (x.kind != y.kind) return false;
  if (x.is_int()) return x.value == y.value;
  if (x.name != y.name || x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (!unify_into(x.args[i], y.args[i], s)) return false;
  return true;
}

Term rename_apart(const Term& t, const std::string& suffix) {
  if (t.is_var()) return Term::var(t.name + suffix);
  Term out = t;
  for (auto& a : out.args) a = rename_apart(a, suffix);
  return out;
}

}  // namespace

std::optional<TermSubst> unify(const Term& a, const Term& b) {
  TermSubst s;
  if (!unify_into(a, b, s)) return std::nullopt;
  return s;
}

Term apply_subst(const Term& t, const TermSubst& s) {
  const Term& w = walk(t, s);
  if (w.is_var()) return w;
  Term out = w;
  for (auto& a : out.args) a = apply_subst(a, s);
  return out;
}

std::vector<Diagnostic> check_orthogonal(const Program& p) {
  std::vector<Diagnostic> out;
  for (const auto& proc : p.procedures) {
    for (std::size_t i = 0; i < proc.rules.size(); ++i) {
      for (std::size_t j = i + 1; j < proc.rules.size(); ++j) {
        const Rule& a = proc.rules[i];
        const Rule& b = proc.rules[j];
        Term renamed = rename_apart(b.lhs, "'");
        auto s = unify(a.lhs, renamed);
        if (!s) continue;
        out.push_back(error(p, kOverlap, b.pos,
                            "rules " + to_string(a.lhs) + " (line " + std::to_string(a.pos.line) +
                                ") and " + to_string(b.lhs) + " overlap on " +
                                to_string(apply_subst(a.lhs, *s))));
      }
    }
  }
  return out;
}

namespace {

class BindingChecker {
 public:
  using Scope = std::set<std::string>;

  BindingChecker(const Program& p, BindingMode mode, std::vector<Diagnostic>& out)
      : prog_(p), mode_(mode), out_(out) {}

  // Returns the scope in effect at the Hole that ends a's statement chain.
  Scope walk(const ATerm& a, Scope scope) {
    using K = ATerm::Kind;
    switch (a.kind) {
      case K::Var:
        if (!scope.count(a.name))
          out_.push_back(error(prog_, kUnboundVar, a.pos, "variable " + a.name + " is not bound"));
        return scope;
      case K::Int:
      case K::Hole:
        return scope;
      case K::App:
      case K::If:
        for (const auto& k : a.kids) walk(k, scope);
        return scope;
      case K::Assign: {
        Scope rhs_scope = scope;
        auto rhs_vars = free_vars(a.kids[0]);
        std::set<std::string> seen;
        for (const auto& x : a.targets) {
          if (!scope.count(x) && rhs_vars.count(x)) {
            out_.push_back(error(prog_, kSelfAssign, a.pos,
                                 "variable " + x + " is used in its own assignment before being bound"));
            rhs_scope.insert(x);
          }
          if (mode_ == BindingMode::Single && (scope.count(x) || !seen.insert(x).second))
            out_.push_back(error(prog_, kRebind, a.pos,
                                 "variable " + x + " is assigned more than once"));
        }
        walk(a.kids[0], rhs_scope);
        scope.insert(a.targets.begin(), a.targets.end());
        return walk(a.kids[1], std::move(scope));
      }
      case K::StmtIf: {
        walk(a.kids[0], scope);
        Scope t = walk(a.kids[1], scope);
        Scope e = walk(a.kids[2], scope);
        Scope joined;
        std::set_intersection(t.begin(), t.end(), e.begin(), e.end(),
                              std::inserter(joined, joined.end()));
        return walk(a.kids[3], std::move(joined));
      }
      case K::For: {
        walk(a.kids[0], scope);
        walk(a.kids[1], scope);
        if (mode_ == BindingMode::Single && scope.count(a.name))
          out_.push_back(error(prog_, kRebind, a.pos,
                               "loop counter " + a.name + " is already bound"));
        scope.insert(a.name);
        walk(a.kids[2], scope);
        return walk(a.kids[3], std::move(scope));
      }
      case K::While:
        walk(a.kids[0], scope);
        walk(a.kids[1], scope);
        return walk(a.kids[2], std::move(scope));
      case K::Until: {
        Scope after = walk(a.kids[0], std::move(scope));
        walk(a.kids[1], after);
        return walk(a.kids[2], std::move(after));
      }
    }
    return scope;
  }

 private:
  const Program& prog_;
  BindingMode mode_;
  std::vector<Diagnostic>& out_;
};

}  // namespace

std::vector<Diagnostic> check_bindings(const Program& p, BindingMode mode) {
  std::vector<Diagnostic> out;
  BindingChecker checker(p, mode, out);
  for (const auto& proc : p.procedures) {
    if (proc.kind == Procedure::Kind::Flat) {
      checker.walk(proc.body, {proc.params.begin(), proc.params.end()});
    } else {
      for (const auto& r : proc.rules) checker.walk(r.rhs, vars_of(r.lhs));
    }
  }
  return out;
}

namespace {

using Row = std::vector<Term>;

struct Head {
  std::string name;
  std::size_t arity = 0;
  bool is_int = false;
  BigInt value;
  bool operator<(const Head& o) const {
    return std::tie(is_int, name, arity, value) < std::tie(o.is_int, o.name, o.arity, o.value);
  }
};

Head head_of(const Term& t) {
  if (t.is_int()) return {"", 0, true, t.value};
  return {t.name, t.args.size(), false, 0};
}

Term wildcard() { return Term::var("_"); }

// Coverage by the usefulness algorithm: a witness is a value vector matched
// by no row. User-declared fixed-arity constructors and the Booleans form
// closed families; every other head (integers, tuples, variadic arrays,
// predeclared constants) is open.
class Coverage {
 public:
  explicit Coverage(const Program& p) {
    for (const auto& c : p.constructors)
      if (!c.variadic) universe_.push_back({c.name, c.arity, false, 0});
  }

  std::optional<Row> witness(const std::vector<Row>& rows, std::size_t width) {
    if (width == 0) {
      if (rows.empty()) return Row{};
      return std::nullopt;
    }
    std::set<Head> sigma;
    for (const auto& r : rows)
      if (!r[0].is_var()) sigma.insert(head_of(r[0]));

    std::vector<Head> family = closed_family(sigma);
    bool complete = !family.empty() && std::all_of(family.begin(), family.end(),
                                                   [&](const Head& h) { return sigma.count(h); });
    if (complete) {
      for (const auto& c : family) {
        auto w = witness(specialize(rows, c), width - 1 + c.arity);
        if (!w) continue;
        Row out;
        std::vector<Term> args(w->begin(), w->begin() + static_cast<std::ptrdiff_t>(c.arity));
        out.push_back(Term::app(c.name, std::move(args)));
        out.insert(out.end(), w->begin() + static_cast<std::ptrdiff_t>(c.arity), w->end());
        return out;
      }
      return std::nullopt;
    }

    std::vector<Row> def;
    for (const auto& r : rows)
      if (r[0].is_var()) def.emplace_back(r.begin() + 1, r.end());
    auto w = witness(def, width - 1);
    if (!w) return std::nullopt;
    Row out;
    out.push_back(missing(sigma, family));
    out.insert(out.end(), w->begin(), w->end());
    return out;
  }

 private:
  bool is_boolean(const Head& h) const { return !h.is_int && (h.name == "true" || h.name == "false") && h.arity == 0; }
  bool in_universe(const Head& h) const {
    return std::any_of(universe_.begin(), universe_.end(), [&](const Head& u) {
      return !h.is_int && u.name == h.name && u.arity == h.arity;
    });
  }

  std::vector<Head> closed_family(const std::set<Head>& sigma) const {
    if (sigma.empty()) return {};
    if (std::all_of(sigma.begin(), sigma.end(), [&](const Head& h) { return in_universe(h); }))
      return universe_;
    if (std::all_of(sigma.begin(), sigma.end(), [&](const Head& h) { return is_boolean(h); }))
      return {{"false", 0, false, 0}, {"true", 0, false, 0}};
    return {};
  }

  Term missing(const std::set<Head>& sigma, const std::vector<Head>& family) const {
    for (const auto& h : family) {
      if (sigma.count(h)) continue;
      return Term::app(h.name, std::vector<Term>(h.arity, wildcard()));
    }
    return wildcard();
  }

  static std::vector<Row> specialize(const std::vector<Row>& rows, const Head& c) {
    std::vector<Row> out;
    for (const auto& r : rows) {
      Row nr;
      if (r[0].is_var()) {
        nr.assign(c.arity, wildcard());
      } else if (!(head_of(r[0]) < c) && !(c < head_of(r[0]))) {
        nr = r[0].args;
      } else {
        continue;
      }
      nr.insert(nr.end(), r.begin() + 1, r.end());
      out.push_back(std::move(nr));
    }
    return out;
  }

  std::vector<Head> universe_;
};

}  // namespace

std::optional<std::vector<Term>> uncovered_pattern(const Procedure& proc, const Program& p) {
  if (proc.kind == Procedure::Kind::Flat) return std::nullopt;
  std::vector<Row> rows;
  for (const auto& r : proc.rules) rows.push_back(r.lhs.args);
  return Coverage(p).witness(rows, proc.arity);
}

std::vector<Diagnostic> check_exhaustive(const Program& p) {
  std::vector<Diagnostic> out;
  for (const auto& proc : p.procedures) {
    auto w = uncovered_pattern(proc, p);
    if (!w) continue;
    out.push_back({Diagnostic::Severity::Warning, kNonexhaustive, p.file, proc.pos,
                   "no rule of " + proc.name + " matches " + to_string(Term::app(proc.name, *w))});
  }
  return out;
}

std::vector<Diagnostic> check_program(const Program& p, BindingMode mode) {
  std::vector<Diagnostic> out = check_partition(p);
  for (auto&& part : {check_left_linear(p), check_orthogonal(p), check_bindings(p, mode),
                      check_exhaustive(p)})
    out.insert(out.end(), part.begin(), part.end());
  std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.pos, a.code, a.message) < std::tie(b.pos, b.code, b.message);
  });
  return out;
}

bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(),
                     [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

std::string format_diagnostic(const Diagnostic& d) {
  return std::string(d.severity == Diagnostic::Severity::Error ? "error" : "warning") + " " + d.code +
         " " + d.file + ":" + std::to_string(d.pos.line) + ":" + std::to_string(d.pos.column) + " " +
         d.message;
}

}  // namespace rewlang
