#include "eliminate.h"

#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "desugar.h"

namespace rewlang {

struct EliminationGraph::Node {
  ATerm::Kind kind = ATerm::Kind::App;
  std::string name;  // symbol, variable, or assignment target
  BigInt value;
  // Assignment id; for a variable the id of the assignment binding it, or 0
  // when free. Substitution goes by id, so rebinding a name cannot capture.
  std::uint32_t binder = 0;
  std::vector<Ptr> kids;
};

namespace {

using Node = EliminationGraph::Node;
using Ptr = EliminationGraph::Ptr;

Ptr make(ATerm::Kind kind, std::string name, BigInt value, std::vector<Ptr> kids,
         std::uint32_t binder = 0) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->name = std::move(name);
  n->value = std::move(value);
  n->kids = std::move(kids);
  n->binder = binder;
  return n;
}

Ptr remake(const Ptr& n, std::vector<Ptr> kids) {
  return make(n->kind, n->name, n->value, std::move(kids), n->binder);
}

class Builder {
 public:
  Ptr build(const ATerm& a) {
    using K = ATerm::Kind;
    switch (a.kind) {
      case K::Var: {
        auto it = scope_.find(a.name);
        return make(K::Var, a.name, 0, {}, it == scope_.end() || it->second.empty() ? 0 : it->second.back());
      }
      case K::Int: return make(K::Int, "", a.value, {});
      case K::App:
      case K::If: {
        std::vector<Ptr> kids;
        for (const auto& k : a.kids) kids.push_back(build(k));
        return make(a.kind, a.name, 0, std::move(kids));
      }
      case K::Assign: {
        if (a.tuple_target) throw std::logic_error("tuple assignment must be expanded first");
        const std::string& x = a.targets[0];
        std::uint32_t id = ++next_;
        Ptr rhs = build(a.kids[0]);
        scope_[x].push_back(id);
        Ptr rest = build(a.kids[1]);
        scope_[x].pop_back();
        return make(K::Assign, x, 0, {std::move(rhs), std::move(rest)}, id);
      }
      default:
        throw std::logic_error("elimination needs a loop-free aterm without statement conditionals");
    }
  }

 private:
  std::map<std::string, std::vector<std::uint32_t>> scope_;
  std::uint32_t next_ = 0;
};

// n with every occurrence bound by `binder` replaced by t. Unchanged
// subgraphs keep their identity; shared nodes are rewritten once.
Ptr substitute(const Ptr& n, std::uint32_t binder, const Ptr& t, std::map<const Node*, Ptr>& memo) {
  if (n->kind == ATerm::Kind::Var) return n->binder == binder ? t : n;
  if (n->kids.empty()) return n;
  if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
  std::vector<Ptr> kids = n->kids;
  bool changed = false;
  for (auto& k : kids) {
    Ptr r = substitute(k, binder, t, memo);
    changed |= r != k;
    k = std::move(r);
  }
  Ptr out = changed ? remake(n, std::move(kids)) : n;
  memo.emplace(n.get(), out);
  return out;
}

Ptr eliminate_node(const Ptr& assign) {
  std::map<const Node*, Ptr> memo;
  return substitute(assign->kids[1], assign->binder, assign->kids[0], memo);
}

void collect_assignments(const Ptr& n, std::vector<const Node*>& out) {
  if (n->kind == ATerm::Kind::Assign) out.push_back(n.get());
  for (const auto& k : n->kids) collect_assignments(k, out);
}

// Rebuilds the path to target with target replaced by its elimination.
Ptr replace_node(const Ptr& n, const Node* target, bool& done) {
  if (done) return n;
  if (n.get() == target) {
    done = true;
    return eliminate_node(n);
  }
  std::vector<Ptr> kids = n->kids;
  bool changed = false;
  for (auto& k : kids) {
    Ptr r = replace_node(k, target, done);
    changed |= r != k;
    k = std::move(r);
    if (done) break;
  }
  return changed ? remake(n, std::move(kids)) : n;
}

// Innermost-first elimination of the whole graph. Subgraphs without
// assignments come back unchanged, so sharing survives.
Ptr eliminate_all(const Ptr& n, std::map<const Node*, Ptr>& memo) {
  if (n->kids.empty()) return n;
  if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
  std::vector<Ptr> kids;
  kids.reserve(n->kids.size());
  bool changed = false;
  for (const auto& k : n->kids) {
    kids.push_back(eliminate_all(k, memo));
    changed |= kids.back() != k;
  }
  Ptr out;
  if (n->kind == ATerm::Kind::Assign) {
    std::map<const Node*, Ptr> sub;
    out = substitute(kids[1], n->binder, kids[0], sub);
  } else {
    out = changed ? remake(n, std::move(kids)) : n;
  }
  memo.emplace(n.get(), out);
  return out;
}

Term to_term(const Ptr& n) {
  switch (n->kind) {
    case ATerm::Kind::Var: return Term::var(n->name);
    case ATerm::Kind::Int: return Term::integer(n->value);
    case ATerm::Kind::App:
    case ATerm::Kind::If: {
      std::vector<Term> args;
      for (const auto& k : n->kids) args.push_back(to_term(k));
      return Term::app(n->kind == ATerm::Kind::If ? std::string(kIfName) : n->name, std::move(args));
    }
    default:
      throw std::logic_error("term requested before all assignments were eliminated");
  }
}

class Labeler {
 public:
  std::string print(const Ptr& n) {
    std::string body;
    switch (n->kind) {
      case ATerm::Kind::Var: body = n->name; break;
      case ATerm::Kind::Int: body = n->value.str(); break;
      default: {
        body = n->kind == ATerm::Kind::If ? std::string(kIfName)
               : n->kind == ATerm::Kind::Assign ? n->name + "<-"
                                                 : n->name;
        if (!n->kids.empty()) {
          body += "(";
          for (std::size_t i = 0; i < n->kids.size(); ++i) {
            if (i) body += ",";
            body += print(n->kids[i]);
          }
          body += ")";
        }
      }
    }
    return std::to_string(label(n)) + ":" + body;
  }

 private:
  std::uint32_t label(const Ptr& n) {
    std::string key;
    switch (n->kind) {
      case ATerm::Kind::Var: key = "v" + n->name; break;
      case ATerm::Kind::Int: key = "i" + n->value.str(); break;
      default:
        if (n->kids.empty() && n->kind == ATerm::Kind::App) key = "c" + n->name;
    }
    if (key.empty()) {
      auto [it, fresh] = by_node_.emplace(n.get(), next_);
      if (fresh) ++next_;
      return it->second;
    }
    auto [it, fresh] = by_key_.emplace(key, next_);
    if (fresh) ++next_;
    return it->second;
  }

  std::map<const Node*, std::uint32_t> by_node_;
  std::map<std::string, std::uint32_t> by_key_;
  std::uint32_t next_ = 1;
};

}  // namespace

EliminationGraph::EliminationGraph(const ATerm& a)
    : root_(Builder().build(distribute_if_seq(expand_tuple_assign(a)))) {}

std::size_t EliminationGraph::assignment_count() const {
  std::vector<const Node*> found;
  collect_assignments(root_, found);
  return found.size();
}

void EliminationGraph::eliminate_at(std::size_t k) {
  std::vector<const Node*> found;
  collect_assignments(root_, found);
  if (k >= found.size()) throw std::out_of_range("no such assignment");
  bool done = false;
  root_ = replace_node(root_, found[k], done);
}

void EliminationGraph::eliminate_innermost_first() {
  std::map<const Node*, Ptr> memo;
  root_ = eliminate_all(root_, memo);
}

void EliminationGraph::eliminate_random(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t n = assignment_count(); n > 0; n = assignment_count())
    eliminate_at(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
}

Term EliminationGraph::term() const { return to_term(root_); }

std::string EliminationGraph::decorated() const { return Labeler().print(root_); }

Eliminated eliminate_assignments(const ATerm& a) {
  EliminationGraph g(a);
  g.eliminate_innermost_first();
  return {g.term(), g.decorated()};
}

}  // namespace rewlang
