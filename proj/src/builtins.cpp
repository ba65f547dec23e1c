#include "builtins.h"

#include <optional>

namespace rewlang {

namespace {

void require_constructor(const Snapshot& snap, Label l, const char* op) {
  const Node& n = snap.node(l);
  if (!snap.symbols().is_constructor(n.sym))
    throw RuntimeError(std::string(op) + ": argument is not a constructor term (" +
                       snap.symbols()[n.sym].name + ")");
}

std::optional<BigInt> int_value(const Snapshot& snap, Label l) {
  const Node& n = snap.node(l);
  if (n.sym != snap.symbols().int_sym()) return std::nullopt;
  return n.value;
}

std::optional<bool> bool_value(const Snapshot& snap, Label l) {
  const Node& n = snap.node(l);
  if (n.sym == snap.symbols().true_sym()) return true;
  if (n.sym == snap.symbols().false_sym()) return false;
  return std::nullopt;
}

Label error_constant(Snapshot& snap) { return snap.constant(snap.symbols().error_sym()); }

// 1-based index into x's children, or nullopt when out of range.
std::optional<std::size_t> child_index(const Snapshot& snap, Label i, Label x) {
  auto v = int_value(snap, i);
  if (!v || *v < 1 || *v > BigInt(snap.arity(x))) return std::nullopt;
  return static_cast<std::size_t>(*v) - 1;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace

const std::vector<BuiltinEntry>& builtin_table() {
  static const std::vector<BuiltinEntry> table = [] {
    std::vector<BuiltinEntry> out;
    for (const char* n : {"top", "eq", "arg", "replace", "d_replace", "copy", "sum", "sub", "mul",
                          "div", "lt", "le", "gt", "ge", "and", "or", "not"}) {
      auto [b, arity] = *lookup_builtin(n);
      out.push_back({n, arity, b, is_destructive(b)});
    }
    return out;
  }();
  return table;
}

bool is_destructive(Builtin b) { return b == Builtin::DReplace; }

Label builtin_top(Snapshot& snap, Label x) {
  require_constructor(snap, x, "top");
  SymbolId sym = snap.node(x).sym;
  if (sym == snap.symbols().int_sym()) return snap.resolve(x);
  return snap.constant(snap.symbols().top_constant(sym));
}

bool structurally_equal(const Snapshot& snap, Label a, Label b) {
  std::vector<std::pair<Label, Label>> stack{{a, b}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    x = snap.find(x);
    y = snap.find(y);
    if (x == y) continue;
    const Node& nx = snap.node(x);
    const Node& ny = snap.node(y);
    if (nx.sym != ny.sym || nx.kids.size() != ny.kids.size() || nx.value != ny.value) return false;
    for (std::size_t i = 0; i < nx.kids.size(); ++i) stack.emplace_back(nx.kids[i], ny.kids[i]);
  }
  return true;
}

Label builtin_eq(Snapshot& snap, Label a, Label b) {
  require_constructor(snap, a, "eq");
  require_constructor(snap, b, "eq");
  return snap.boolean(structurally_equal(snap, a, b));
}

Label builtin_arg(Snapshot& snap, Label i, Label x) {
  require_constructor(snap, x, "arg");
  auto idx = child_index(snap, i, x);
  if (!idx) return error_constant(snap);
  return snap.kid(x, *idx);
}

Label builtin_replace(Snapshot& snap, Label i, Label y, Label x) {
  require_constructor(snap, x, "replace");
  require_constructor(snap, y, "replace");
  auto idx = child_index(snap, i, x);
  if (!idx) return error_constant(snap);
  const Node& n = snap.node(x);
  std::vector<Label> kids = n.kids;
  SymbolId sym = n.sym;
  for (auto& k : kids) k = snap.resolve(k);
  kids[*idx] = snap.resolve(y);
  Label fresh = snap.add(sym, std::move(kids));
  snap.mutable_node(fresh).normal = snap.node(y).normal;
  return fresh;
}

Label builtin_d_replace(Snapshot& snap, Label i, Label y, Label x) {
  require_constructor(snap, x, "d_replace");
  require_constructor(snap, y, "d_replace");
  auto idx = child_index(snap, i, x);
  if (!idx) return error_constant(snap);
  snap.set_kid(x, *idx, y);
  return snap.resolve(x);
}

Label builtin_copy(Snapshot& snap, Label x) {
  require_constructor(snap, x, "copy");
  return copy_class(x, snap);
}

Label builtin_proj(Snapshot& snap, std::size_t k, Label x) {
  require_constructor(snap, x, "projection");
  const Node& n = snap.node(x);
  if (!snap.symbols().is_tuple(n.sym))
    throw RuntimeError("pi_" + std::to_string(k) + " applied to a non-tuple");
  if (k == 0 || k > n.kids.size())
    throw RuntimeError("pi_" + std::to_string(k) + " applied to a tuple of width " +
                       std::to_string(n.kids.size()));
  return snap.kid(x, k - 1);
}

Label compiled_apply(Snapshot& snap, Builtin b, std::span<const Label> args) {
  switch (b) {
    case Builtin::Sum:
    case Builtin::Sub:
    case Builtin::Mul:
    case Builtin::Div:
    case Builtin::Lt:
    case Builtin::Le:
    case Builtin::Gt:
    case Builtin::Ge: {
      auto x = int_value(snap, args[0]);
      auto y = int_value(snap, args[1]);
      if (!x || !y) return error_constant(snap);
      switch (b) {
        case Builtin::Sum: return snap.integer(*x + *y);
        case Builtin::Sub: return snap.integer(*x - *y);
        case Builtin::Mul: return snap.integer(*x * *y);
        case Builtin::Div:
          if (*y == 0) return error_constant(snap);
          return snap.integer(floor_div(*x, *y));
        case Builtin::Lt: return snap.boolean(*x < *y);
        case Builtin::Le: return snap.boolean(*x <= *y);
        case Builtin::Gt: return snap.boolean(*x > *y);
        default: return snap.boolean(*x >= *y);
      }
    }
    case Builtin::And:
    case Builtin::Or: {
      auto x = bool_value(snap, args[0]);
      auto y = bool_value(snap, args[1]);
      if (!x || !y) return error_constant(snap);
      return snap.boolean(b == Builtin::And ? (*x && *y) : (*x || *y));
    }
    case Builtin::Not: {
      auto x = bool_value(snap, args[0]);
      if (!x) return error_constant(snap);
      return snap.boolean(!*x);
    }
    default:
      throw std::logic_error("compiled_apply: not a compiled procedure");
  }
}

Label apply_builtin(Snapshot& snap, SymbolId sym, std::span<const Label> args) {
  const SymbolInfo& info = snap.symbols()[sym];
  switch (info.builtin) {
    case Builtin::Top: return builtin_top(snap, args[0]);
    case Builtin::Eq: return builtin_eq(snap, args[0], args[1]);
    case Builtin::Arg: return builtin_arg(snap, args[0], args[1]);
    case Builtin::Replace: return builtin_replace(snap, args[0], args[1], args[2]);
    case Builtin::DReplace: return builtin_d_replace(snap, args[0], args[1], args[2]);
    case Builtin::Copy: return builtin_copy(snap, args[0]);
    case Builtin::Proj: return builtin_proj(snap, info.index, args[0]);
    case Builtin::None: throw std::logic_error("apply_builtin: " + info.name + " is not a builtin");
    default: return compiled_apply(snap, info.builtin, args);
  }
}

}  // namespace rewlang
