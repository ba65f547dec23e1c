#ifndef REWLANG_SNAPSHOT_H
#define REWLANG_SNAPSHOT_H

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symbols.h"
#include "term.h"

namespace rewlang {

/// Equivalence-class label. Zero is never issued.
struct Label {
  std::uint32_t id = 0;
  bool valid() const { return id != 0; }
  friend auto operator<=>(Label, Label) = default;
};

class CycleDetected : public Error {
 public:
  explicit CycleDetected(Label l)
      : Error("cycle", "cyclic term graph at label " + std::to_string(l.id)) {}
};

class OccursViolation : public Error {
 public:
  OccursViolation(Label target, Label into)
      : Error("occurs", "replacing label " + std::to_string(target.id) + " by label " +
                            std::to_string(into.id) + " would create a cycle") {}
};

/// One equivalence class: a symbol applied to child classes. A spliced class
/// keeps its node but forwards to its replacement.
struct Node {
  SymbolId sym = 0;
  BigInt value;
  std::vector<Label> kids;
  Label forward;
  bool normal = false;
};

/// The global decorated term being reduced. Labels are issued from a
/// monotonically increasing counter starting at `origin`; splicing a class
/// redirects every slot that refers to it.
class Snapshot {
 public:
  explicit Snapshot(std::shared_ptr<SymbolTable> symbols, std::uint32_t origin = 1);

  SymbolTable& symbols() { return *symbols_; }
  const SymbolTable& symbols() const { return *symbols_; }
  const std::shared_ptr<SymbolTable>& symbol_table() const { return symbols_; }

  /// Fresh class for sym applied to kids.
  Label add(SymbolId sym, std::vector<Label> kids, BigInt value = 0);
  /// Shared class for a constructor constant (integers included).
  Label constant(SymbolId sym);
  Label integer(const BigInt& value);
  Label boolean(bool b) { return constant(b ? symbols_->true_sym() : symbols_->false_sym()); }

  bool contains(Label l) const { return l.id >= origin_ && l.id - origin_ < nodes_.size(); }
  /// Follows forwarding without modifying the store.
  Label find(Label l) const;
  /// Follows forwarding and compresses the path.
  Label resolve(Label l);
  const Node& node(Label l) const { return raw(find(l)); }
  Node& mutable_node(Label l) { return raw(resolve(l)); }
  std::size_t arity(Label l) const { return node(l).kids.size(); }
  /// Child i of l, resolved; the slot is updated in place.
  Label kid(Label l, std::size_t i);
  Label kid(Label l, std::size_t i) const { return find(node(l).kids.at(i)); }
  bool is_constructor_constant(Label l) const;
  bool is_symbol(Label l, SymbolId sym) const { return node(l).sym == sym; }

  Label root() const { return find(root_); }
  void set_root(Label l) { root_ = l; }

  /// T|(beta <- l): every slot holding beta now holds l.
  void splice(Label beta, Label l);
  /// Destructive update of one child slot of an existing class.
  void set_kid(Label parent, std::size_t i, Label child);

  /// True when target is reachable from `from` (both resolved).
  bool reaches(Label from, Label target) const;
  std::vector<Label> reachable(Label from) const;

  bool occurs_check() const { return occurs_check_; }
  void set_occurs_check(bool on) { occurs_check_ = on; }

  std::uint32_t origin() const { return origin_; }
  std::uint32_t next_label() const { return origin_ + static_cast<std::uint32_t>(nodes_.size()); }
  std::size_t class_count() const { return nodes_.size(); }
  /// Unresolved access for diagnostics; l must be contained.
  const Node& raw(Label l) const { return nodes_[l.id - origin_]; }

  // Test hooks that bypass all invariants.
  void debug_set_kid(Label parent, std::size_t i, Label child) { raw(parent).kids.at(i) = child; }
  void debug_set_forward(Label from, Label to) { raw(from).forward = to; }

 private:
  Node& raw(Label l) { return nodes_[l.id - origin_]; }

  std::shared_ptr<SymbolTable> symbols_;
  std::uint32_t origin_;
  std::vector<Node> nodes_;
  std::map<std::pair<SymbolId, BigInt>, Label> constants_;
  Label root_;
  bool occurs_check_ = false;
};

enum class DecoratePolicy { ShareIdentical, AllFresh };

using Substitution = std::map<std::string, Label>;

/// Adds the ground term t to snap and returns its label.
Label decorate(const Term& t, Snapshot& snap, DecoratePolicy policy = DecoratePolicy::ShareIdentical);
/// Plain term of a class; throws CycleDetected on cyclic graphs.
Term strip(Label l, const Snapshot& snap);
/// Matches a left-linear pattern against a class.
std::optional<Substitution> match(const Term& pattern, Label l, const Snapshot& snap);
/// Class of rhs under theta. Variables share their bound class, constructor
/// constants use the global shared labels, everything else is fresh.
Label instantiate(const Term& rhs, const Substitution& theta, Snapshot& snap);
/// Structurally identical class with entirely fresh labels.
Label copy_class(Label l, Snapshot& snap);
/// Term with labels, e.g. `4:f(2:g(1:c),2:g(1:c))`.
std::string decorated_string(Label l, const Snapshot& snap);

struct StoreViolation {
  enum class Kind { Root, Closedness, Forwarding, Arity, Cycle, NormalFlag };
  Kind kind;
  Label label;
  std::string message;
};

const char* to_string(StoreViolation::Kind k);

/// Verifies closedness, forwarding sanity, symbol arity, normal-flag
/// soundness and, when require_acyclic, acyclicity of the reachable graph.
std::optional<StoreViolation> check_store(const Snapshot& snap, bool require_acyclic = true);

}  // namespace rewlang

#endif
