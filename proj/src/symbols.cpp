#include "symbols.h"

#include <array>
#include <charconv>

namespace rewlang {

namespace {

struct BuiltinEntry {
  std::string_view name;
  Builtin builtin;
  std::size_t arity;
};

constexpr std::array<BuiltinEntry, 17> kBuiltins = {{
    {"top", Builtin::Top, 1},
    {"eq", Builtin::Eq, 2},
    {"arg", Builtin::Arg, 2},
    {"replace", Builtin::Replace, 3},
    {"d_replace", Builtin::DReplace, 3},
    {"copy", Builtin::Copy, 1},
    {"sum", Builtin::Sum, 2},
    {"sub", Builtin::Sub, 2},
    {"mul", Builtin::Mul, 2},
    {"div", Builtin::Div, 2},
    {"lt", Builtin::Lt, 2},
    {"le", Builtin::Le, 2},
    {"gt", Builtin::Gt, 2},
    {"ge", Builtin::Ge, 2},
    {"and", Builtin::And, 2},
    {"or", Builtin::Or, 2},
    {"not", Builtin::Not, 1},
}};

constexpr std::array<std::string_view, 5> kPredeclared = {"true", "false", "error", "none", "if"};

}  // namespace

const char* to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::Constructor: return "constructor";
    case SymbolKind::Defined: return "defined";
    case SymbolKind::Compiled: return "compiled";
    case SymbolKind::Cond: return "conditional";
  }
  return "?";
}

std::optional<std::pair<Builtin, std::size_t>> lookup_builtin(std::string_view name) {
  for (const auto& e : kBuiltins)
    if (e.name == name) return std::pair{e.builtin, e.arity};
  return std::nullopt;
}

std::optional<std::size_t> projection_index(std::string_view name) {
  if (name.size() < 4 || name.substr(0, 3) != "pi_") return std::nullopt;
  std::size_t k = 0;
  auto digits = name.substr(3);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || k == 0 || digits[0] == '0')
    return std::nullopt;
  return k;
}

bool is_reserved_name(std::string_view name) {
  if (lookup_builtin(name) || projection_index(name)) return true;
  for (auto p : kPredeclared)
    if (p == name) return true;
  return name.substr(0, 2) == "c_";
}

SymbolTable::SymbolTable() {
  int_sym_ = add({std::string(kIntName), 0, SymbolKind::Constructor});
  if_sym_ = add({std::string(kIfName), 3, SymbolKind::Cond});
  true_sym_ = add({"true", 0, SymbolKind::Constructor});
  false_sym_ = add({"false", 0, SymbolKind::Constructor});
  error_sym_ = add({"error", 0, SymbolKind::Constructor});
  none_sym_ = add({"none", 0, SymbolKind::Constructor});
  for (const auto& e : kBuiltins) {
    SymbolInfo info{std::string(e.name), e.arity, SymbolKind::Compiled, e.builtin};
    add(std::move(info));
  }
  kinds_[std::string(kTupleName)] = SymbolKind::Constructor;
}

SymbolId SymbolTable::add(SymbolInfo info) {
  auto id = static_cast<SymbolId>(symbols_.size());
  index_[{info.name, info.arity}] = id;
  kinds_.emplace(info.name, info.kind);
  symbols_.push_back(std::move(info));
  return id;
}

std::optional<SymbolId> SymbolTable::declare_constructor(const std::string& name, std::size_t arity) {
  if (auto k = kind_of_name(name); k && *k != SymbolKind::Constructor) return std::nullopt;
  if (find(name, arity) || is_variadic(name)) return std::nullopt;
  auto id = add({name, arity, SymbolKind::Constructor});
  user_constructors_.push_back(id);
  return id;
}

bool SymbolTable::declare_variadic(const std::string& name) {
  if (kinds_.count(name) != 0) return false;
  kinds_[name] = SymbolKind::Constructor;
  variadic_.insert(name);
  return true;
}

std::optional<SymbolId> SymbolTable::declare_defined(const std::string& name, std::size_t arity) {
  if (kinds_.count(name) != 0) return std::nullopt;
  return add({name, arity, SymbolKind::Defined});
}

std::optional<SymbolId> SymbolTable::find(std::string_view name, std::size_t arity) const {
  auto it = index_.find(std::pair<std::string, std::size_t>{std::string(name), arity});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<SymbolId> SymbolTable::resolve(std::string_view name, std::size_t arity) {
  if (auto id = find(name, arity)) return id;
  if (name == kTupleName && arity > 0) return tuple(arity);
  if (is_variadic(name)) {
    SymbolInfo info{std::string(name), arity, SymbolKind::Constructor};
    info.index = arity;
    return add(std::move(info));
  }
  if (auto k = projection_index(name); k && arity == 1) {
    SymbolInfo info{std::string(name), 1, SymbolKind::Compiled, Builtin::Proj};
    info.index = *k;
    return add(std::move(info));
  }
  if (arity == 0 && name.size() > 2 && name.substr(0, 2) == "c_") {
    auto base = name.substr(2);
    if (base.substr(0, 5) == "tuple") {
      std::size_t width = 0;
      auto digits = base.substr(5);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), width);
      if (ec == std::errc{} && ptr == digits.data() + digits.size() && width > 0)
        return top_constant(tuple(width));
      return std::nullopt;
    }
    if (kind_of_name(base) == SymbolKind::Constructor) {
      // Any arity of the constructor gives the same c_f.
      for (SymbolId id = 0; id < symbols_.size(); ++id)
        if (symbols_[id].name == base && symbols_[id].arity > 0) return top_constant(id);
      if (is_variadic(base)) return top_constant(*resolve(base, 1));
    }
  }
  return std::nullopt;
}

std::optional<SymbolKind> SymbolTable::kind_of_name(std::string_view name) const {
  auto it = kinds_.find(name);
  if (it == kinds_.end()) {
    if (projection_index(name)) return SymbolKind::Compiled;
    return std::nullopt;
  }
  return it->second;
}

bool SymbolTable::is_constant_name(std::string_view name) const {
  if (auto id = find(name, 0)) return symbols_[*id].kind == SymbolKind::Constructor;
  return false;
}

SymbolId SymbolTable::tuple(std::size_t arity) {
  if (auto id = find(kTupleName, arity)) return *id;
  SymbolInfo info{std::string(kTupleName), arity, SymbolKind::Constructor};
  info.index = arity;
  return add(std::move(info));
}

SymbolId SymbolTable::top_constant(SymbolId ctor) {
  const auto& info = symbols_.at(ctor);
  if (info.arity == 0) return ctor;
  std::string name = info.name == kTupleName ? "c_tuple" + std::to_string(info.arity)
                                             : "c_" + info.name;
  if (auto id = find(name, 0)) return *id;
  SymbolInfo c{name, 0, SymbolKind::Constructor};
  c.is_top_constant = true;
  return add(std::move(c));
}

}  // namespace rewlang
