#ifndef REWLANG_SYMBOLS_H
#define REWLANG_SYMBOLS_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rewlang {

using SymbolId = std::uint32_t;

enum class SymbolKind { Constructor, Defined, Compiled, Cond };

enum class Builtin {
  None,
  Top,
  Eq,
  Arg,
  Replace,
  DReplace,
  Copy,
  Proj,
  Sum,
  Sub,
  Mul,
  Div,
  Lt,
  Le,
  Gt,
  Ge,
  And,
  Or,
  Not,
};

struct SymbolInfo {
  std::string name;
  std::size_t arity = 0;
  SymbolKind kind = SymbolKind::Constructor;
  Builtin builtin = Builtin::None;
  // Projection index for pi_k, tuple width for tuple symbols.
  std::size_t index = 0;
  // Constructor constant c_f produced by top() for this constructor.
  bool is_top_constant = false;
};

inline constexpr std::string_view kTupleName = "<>";
inline constexpr std::string_view kIntName = "#int";
inline constexpr std::string_view kIfName = "if";

const char* to_string(SymbolKind kind);

/// Reserved builtin names and their fixed arity. pi_k is handled separately.
std::optional<std::pair<Builtin, std::size_t>> lookup_builtin(std::string_view name);
bool is_reserved_name(std::string_view name);
/// Parses "pi_<k>" with k >= 1.
std::optional<std::size_t> projection_index(std::string_view name);

/// Interned (name, arity) symbols. A name has exactly one kind; constructors
/// declared variadic ("A/*") and tuples accept any arity and are interned on
/// demand, as are pi_k projections and the c_f constants produced by top().
class SymbolTable {
 public:
  SymbolTable();

  SymbolId int_sym() const { return int_sym_; }
  SymbolId if_sym() const { return if_sym_; }
  SymbolId true_sym() const { return true_sym_; }
  SymbolId false_sym() const { return false_sym_; }
  SymbolId error_sym() const { return error_sym_; }
  SymbolId none_sym() const { return none_sym_; }

  const SymbolInfo& operator[](SymbolId id) const { return symbols_.at(id); }
  std::size_t size() const { return symbols_.size(); }

  /// Declares a constructor; returns nullopt if the name already has a
  /// different kind or the same (name, arity) already exists.
  std::optional<SymbolId> declare_constructor(const std::string& name, std::size_t arity);
  bool declare_variadic(const std::string& name);
  std::optional<SymbolId> declare_defined(const std::string& name, std::size_t arity);

  std::optional<SymbolId> find(std::string_view name, std::size_t arity) const;
  /// Like find, but interns tuples, variadic constructors, projections, and
  /// c_f constants on demand.
  std::optional<SymbolId> resolve(std::string_view name, std::size_t arity);

  std::optional<SymbolKind> kind_of_name(std::string_view name) const;
  bool is_variadic(std::string_view name) const { return variadic_.count(std::string(name)) != 0; }
  /// True when a bare identifier with this name denotes a constant.
  bool is_constant_name(std::string_view name) const;

  SymbolId tuple(std::size_t arity);
  /// The c_f constant for constructor f (f itself for constants).
  SymbolId top_constant(SymbolId ctor);

  bool is_constructor(SymbolId id) const { return symbols_.at(id).kind == SymbolKind::Constructor; }
  bool is_tuple(SymbolId id) const { return symbols_.at(id).name == kTupleName; }

  /// Constructors the user declared (excluding predeclared constants, ints,
  /// tuples and c_f constants), in declaration order.
  const std::vector<SymbolId>& user_constructors() const { return user_constructors_; }

 private:
  SymbolId add(SymbolInfo info);

  std::vector<SymbolInfo> symbols_;
  std::map<std::pair<std::string, std::size_t>, SymbolId, std::less<>> index_;
  std::map<std::string, SymbolKind, std::less<>> kinds_;
  std::set<std::string> variadic_;
  std::vector<SymbolId> user_constructors_;
  SymbolId int_sym_ = 0;
  SymbolId if_sym_ = 0;
  SymbolId true_sym_ = 0;
  SymbolId false_sym_ = 0;
  SymbolId error_sym_ = 0;
  SymbolId none_sym_ = 0;
};

}  // namespace rewlang

#endif
