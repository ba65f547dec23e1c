#ifndef REWLANG_BUILTINS_H
#define REWLANG_BUILTINS_H

#include <span>
#include <string>
#include <vector>

#include "snapshot.h"
#include "symbols.h"

namespace rewlang {

/// Evaluation failure that halts the run (exit code 2 at the CLI).
class RuntimeError : public Error {
 public:
  explicit RuntimeError(const std::string& message) : Error("runtime", message) {}
};

struct BuiltinEntry {
  std::string name;
  std::size_t arity;
  Builtin builtin;
  bool destructive;
};

/// The fixed builtin procedures; pi_k projections are interned on demand and
/// are not listed. d_replace is the only destructive entry.
const std::vector<BuiltinEntry>& builtin_table();
bool is_destructive(Builtin b);

/// All arguments are labels of normal forms (constructor terms). Results are
/// labels in snap; domain errors (index out of range, wrong operand kind,
/// division by zero) yield the shared `error` constant.
Label builtin_top(Snapshot& snap, Label x);
Label builtin_eq(Snapshot& snap, Label a, Label b);
Label builtin_arg(Snapshot& snap, Label i, Label x);
Label builtin_replace(Snapshot& snap, Label i, Label y, Label x);
/// Mutates x's class in place and returns it; all holders observe the change.
Label builtin_d_replace(Snapshot& snap, Label i, Label y, Label x);
Label builtin_copy(Snapshot& snap, Label x);
/// pi_k on a tuple of width >= k; anything else is a RuntimeError.
Label builtin_proj(Snapshot& snap, std::size_t k, Label x);
Label compiled_apply(Snapshot& snap, Builtin b, std::span<const Label> args);

/// Dispatches any builtin or compiled symbol.
Label apply_builtin(Snapshot& snap, SymbolId sym, std::span<const Label> args);

bool structurally_equal(const Snapshot& snap, Label a, Label b);

}  // namespace rewlang

#endif
