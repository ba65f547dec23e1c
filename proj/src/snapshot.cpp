#include "snapshot.h"

#include <functional>
#include <set>
#include <tuple>
#include <unordered_set>

namespace rewlang {

Snapshot::Snapshot(std::shared_ptr<SymbolTable> symbols, std::uint32_t origin)
    : symbols_(std::move(symbols)), origin_(origin == 0 ? 1 : origin) {}

Label Snapshot::add(SymbolId sym, std::vector<Label> kids, BigInt value) {
  Label l{next_label()};
  Node n;
  n.sym = sym;
  n.value = std::move(value);
  n.kids = std::move(kids);
  nodes_.push_back(std::move(n));
  return l;
}

Label Snapshot::constant(SymbolId sym) {
  auto key = std::pair<SymbolId, BigInt>{sym, 0};
  if (auto it = constants_.find(key); it != constants_.end()) return it->second;
  Label l = add(sym, {});
  raw(l).normal = symbols_->is_constructor(sym);
  constants_.emplace(std::move(key), l);
  return l;
}

Label Snapshot::integer(const BigInt& value) {
  auto key = std::pair<SymbolId, BigInt>{symbols_->int_sym(), value};
  if (auto it = constants_.find(key); it != constants_.end()) return it->second;
  Label l = add(symbols_->int_sym(), {}, value);
  raw(l).normal = true;
  constants_.emplace(std::move(key), l);
  return l;
}

Label Snapshot::find(Label l) const {
  while (raw(l).forward.valid()) l = raw(l).forward;
  return l;
}

Label Snapshot::resolve(Label l) {
  Label target = find(l);
  while (l != target) {
    Label next = raw(l).forward;
    raw(l).forward = target;
    l = next;
  }
  return target;
}

Label Snapshot::kid(Label l, std::size_t i) {
  Node& n = raw(resolve(l));
  Label k = n.kids.at(i);
  if (raw(k).forward.valid()) {
    k = resolve(k);
    raw(resolve(l)).kids[i] = k;
  }
  return k;
}

bool Snapshot::is_constructor_constant(Label l) const {
  const Node& n = node(l);
  return n.kids.empty() && symbols_->is_constructor(n.sym);
}

void Snapshot::splice(Label beta, Label l) {
  Label b = resolve(beta);
  Label t = resolve(l);
  if (b == t) return;
  if (occurs_check_ && reaches(t, b)) throw OccursViolation(b, t);
  raw(b).forward = t;
}

void Snapshot::set_kid(Label parent, std::size_t i, Label child) {
  Label p = resolve(parent);
  Label c = resolve(child);
  if (occurs_check_ && reaches(c, p)) throw OccursViolation(p, c);
  Node& n = raw(p);
  n.kids.at(i) = c;
  if (!raw(c).normal) n.normal = false;
}

bool Snapshot::reaches(Label from, Label target) const {
  from = find(from);
  target = find(target);
  std::unordered_set<std::uint32_t> seen;
  std::vector<Label> stack{from};
  while (!stack.empty()) {
    Label cur = stack.back();
    stack.pop_back();
    if (cur == target) return true;
    if (!seen.insert(cur.id).second) continue;
    for (Label k : raw(cur).kids) stack.push_back(find(k));
  }
  return false;
}

std::vector<Label> Snapshot::reachable(Label from) const {
  std::vector<Label> out;
  std::unordered_set<std::uint32_t> seen;
  std::vector<Label> stack{find(from)};
  while (!stack.empty()) {
    Label cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur.id).second) continue;
    out.push_back(cur);
    const auto& kids = raw(cur).kids;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(find(*it));
  }
  return out;
}

Label decorate(const Term& t, Snapshot& snap, DecoratePolicy policy) {
  using Key = std::tuple<SymbolId, BigInt, std::vector<Label>>;
  std::map<Key, Label> shared;
  std::function<Label(const Term&)> go = [&](const Term& s) -> Label {
    if (s.is_var()) throw std::invalid_argument("decorate: term is not ground");
    SymbolId sym;
    if (s.is_int()) {
      if (policy == DecoratePolicy::ShareIdentical) return snap.integer(s.value);
      sym = snap.symbols().int_sym();
    } else {
      auto id = snap.symbols().resolve(s.name, s.args.size());
      if (!id) throw Error("unknown-symbol", "unknown symbol " + s.name + "/" + std::to_string(s.args.size()));
      sym = *id;
      if (s.args.empty() && snap.symbols().is_constructor(sym) && policy == DecoratePolicy::ShareIdentical)
        return snap.constant(sym);
    }
    std::vector<Label> kids;
    kids.reserve(s.args.size());
    for (const auto& a : s.args) kids.push_back(go(a));
    if (policy == DecoratePolicy::AllFresh) {
      Label l = snap.add(sym, std::move(kids), s.value);
      if (s.is_int()) snap.mutable_node(l).normal = true;
      return l;
    }
    Key key{sym, s.value, kids};
    if (auto it = shared.find(key); it != shared.end()) return it->second;
    Label l = snap.add(sym, std::move(kids), s.value);
    shared.emplace(std::move(key), l);
    return l;
  };
  return go(t);
}

Term strip(Label l, const Snapshot& snap) {
  std::set<std::uint32_t> on_path;
  std::function<Term(Label)> go = [&](Label cur) -> Term {
    cur = snap.find(cur);
    if (!on_path.insert(cur.id).second) throw CycleDetected(cur);
    const Node& n = snap.node(cur);
    const SymbolInfo& info = snap.symbols()[n.sym];
    Term out;
    if (n.sym == snap.symbols().int_sym()) {
      out = Term::integer(n.value);
    } else {
      std::vector<Term> args;
      args.reserve(n.kids.size());
      for (Label k : n.kids) args.push_back(go(k));
      out = Term::app(info.name, std::move(args));
    }
    on_path.erase(cur.id);
    return out;
  };
  return go(l);
}

std::optional<Substitution> match(const Term& pattern, Label l, const Snapshot& snap) {
  Substitution theta;
  std::function<bool(const Term&, Label)> go = [&](const Term& p, Label cur) -> bool {
    cur = snap.find(cur);
    if (p.is_var()) {
      auto [it, fresh] = theta.emplace(p.name, cur);
      return fresh || it->second == cur || strip(it->second, snap) == strip(cur, snap);
    }
    const Node& n = snap.node(cur);
    if (p.is_int()) return n.sym == snap.symbols().int_sym() && n.value == p.value;
    auto sym = snap.symbols().find(p.name, p.args.size());
    if (!sym || *sym != n.sym) return false;
    for (std::size_t i = 0; i < p.args.size(); ++i)
      if (!go(p.args[i], n.kids[i])) return false;
    return true;
  };
  if (!go(pattern, l)) return std::nullopt;
  return theta;
}

Label instantiate(const Term& rhs, const Substitution& theta, Snapshot& snap) {
  switch (rhs.kind) {
    case Term::Kind::Var: {
      auto it = theta.find(rhs.name);
      if (it == theta.end()) throw std::invalid_argument("instantiate: unbound variable " + rhs.name);
      return snap.resolve(it->second);
    }
    case Term::Kind::Int:
      return snap.integer(rhs.value);
    case Term::Kind::App:
      break;
  }
  auto sym = snap.symbols().resolve(rhs.name, rhs.args.size());
  if (!sym) throw Error("unknown-symbol", "unknown symbol " + rhs.name);
  if (rhs.args.empty() && snap.symbols().is_constructor(*sym)) return snap.constant(*sym);
  std::vector<Label> kids;
  kids.reserve(rhs.args.size());
  for (const auto& a : rhs.args) kids.push_back(instantiate(a, theta, snap));
  return snap.add(*sym, std::move(kids));
}

Label copy_class(Label l, Snapshot& snap) {
  std::map<std::uint32_t, Label> copied;
  std::set<std::uint32_t> on_path;
  std::function<Label(Label)> go = [&](Label cur) -> Label {
    cur = snap.resolve(cur);
    if (auto it = copied.find(cur.id); it != copied.end()) return it->second;
    if (!on_path.insert(cur.id).second) throw CycleDetected(cur);
    std::vector<Label> kids = snap.node(cur).kids;
    for (auto& k : kids) k = go(k);
    const Node& n = snap.node(cur);
    SymbolId sym = n.sym;
    BigInt value = n.value;
    bool normal = n.normal;
    Label fresh = snap.add(sym, std::move(kids), std::move(value));
    snap.mutable_node(fresh).normal = normal;
    on_path.erase(cur.id);
    copied.emplace(cur.id, fresh);
    return fresh;
  };
  return go(l);
}

std::string decorated_string(Label l, const Snapshot& snap) {
  l = snap.find(l);
  const Node& n = snap.node(l);
  std::string out = std::to_string(l.id) + ":";
  if (n.sym == snap.symbols().int_sym()) return out + n.value.str();
  const auto& name = snap.symbols()[n.sym].name;
  bool tuple = name == kTupleName;
  out += tuple ? "<" : name;
  if (!n.kids.empty()) {
    if (!tuple) out += "(";
    for (std::size_t i = 0; i < n.kids.size(); ++i) {
      if (i) out += ",";
      out += decorated_string(n.kids[i], snap);
    }
    out += tuple ? ">" : ")";
  }
  return out;
}

const char* to_string(StoreViolation::Kind k) {
  switch (k) {
    case StoreViolation::Kind::Root: return "root";
    case StoreViolation::Kind::Closedness: return "closedness";
    case StoreViolation::Kind::Forwarding: return "forwarding";
    case StoreViolation::Kind::Arity: return "arity";
    case StoreViolation::Kind::Cycle: return "cycle";
    case StoreViolation::Kind::NormalFlag: return "normal-flag";
  }
  return "?";
}

std::optional<StoreViolation> check_store(const Snapshot& snap, bool require_acyclic) {
  using K = StoreViolation::Kind;
  auto violation = [](K k, Label l, std::string msg) {
    return StoreViolation{k, l, std::move(msg)};
  };
  const std::size_t n = snap.class_count();
  for (std::size_t i = 0; i < n; ++i) {
    Label l{snap.origin() + static_cast<std::uint32_t>(i)};
    const Node& node = snap.raw(l);
    if (node.forward.valid()) {
      if (!snap.contains(node.forward) || node.forward == l)
        return violation(K::Forwarding, l, "label " + std::to_string(l.id) + " forwards to an invalid label");
      continue;
    }
    for (Label k : node.kids)
      if (!snap.contains(k))
        return violation(K::Closedness, l,
                         "label " + std::to_string(l.id) + " refers to missing label " + std::to_string(k.id));
  }
  // Forwarding chains must terminate.
  for (std::size_t i = 0; i < n; ++i) {
    Label l{snap.origin() + static_cast<std::uint32_t>(i)};
    std::size_t steps = 0;
    for (Label cur = l; snap.raw(cur).forward.valid(); cur = snap.raw(cur).forward)
      if (++steps > n) return violation(K::Forwarding, l, "forwarding loop at label " + std::to_string(l.id));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Label l{snap.origin() + static_cast<std::uint32_t>(i)};
    const Node& node = snap.raw(l);
    if (node.forward.valid()) continue;
    const SymbolInfo& info = snap.symbols()[node.sym];
    if (info.arity != node.kids.size())
      return violation(K::Arity, l,
                       "label " + std::to_string(l.id) + " has " + std::to_string(node.kids.size()) +
                           " children but " + info.name + " has arity " + std::to_string(info.arity));
    if (node.normal) {
      if (!snap.symbols().is_constructor(node.sym))
        return violation(K::NormalFlag, l, "non-constructor label " + std::to_string(l.id) + " marked normal");
      for (Label k : node.kids)
        if (!snap.node(k).normal)
          return violation(K::NormalFlag, l,
                           "normal label " + std::to_string(l.id) + " has a non-normal child");
    }
  }
  Label root = snap.root();
  if (root.valid() && !snap.contains(root)) return violation(K::Root, root, "root label is not in the store");
  if (require_acyclic && root.valid()) {
    // Iterative DFS with colors over the reachable graph.
    std::map<std::uint32_t, int> color;
    std::vector<std::pair<Label, std::size_t>> stack{{root, 0}};
    color[root.id] = 1;
    while (!stack.empty()) {
      auto& [cur, next] = stack.back();
      const Node& node = snap.node(cur);
      if (next == node.kids.size()) {
        color[cur.id] = 2;
        stack.pop_back();
        continue;
      }
      Label k = snap.find(node.kids[next++]);
      int c = color[k.id];
      if (c == 1) return violation(K::Cycle, k, "cycle through label " + std::to_string(k.id));
      if (c == 0) {
        color[k.id] = 1;
        stack.emplace_back(k, 0);
      }
    }
  }
  return std::nullopt;
}

}  // namespace rewlang
