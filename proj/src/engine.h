#ifndef REWLANG_ENGINE_H
#define REWLANG_ENGINE_H

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "ast.h"
#include "builtins.h"
#include "desugar.h"
#include "snapshot.h"
#include "trace.h"

namespace rewlang {

class LimitError : public Error {
 public:
  explicit LimitError(const std::string& message) : Error("limit", message) {}
};

/// The `error` constant became the value of the query.
class ErrorConstantReached : public Error {
 public:
  ErrorConstantReached() : Error("error-constant", "evaluation produced the error constant") {}
};

class StoreError : public Error {
 public:
  explicit StoreError(const std::string& message) : Error("store", message) {}
};

/// Sibling evaluation order. Only LeftFirst is the language's strategy; the
/// others exist to exhibit order dependence and to test confluence.
enum class EvalOrder { LeftFirst, RightFirst, Random };

struct EvalOptions {
  std::uint64_t max_steps = 1'000'000;
  std::size_t max_depth = 10'000;
  bool occurs_check = false;
  bool per_step_check = false;
  EvalOrder order = EvalOrder::LeftFirst;
  std::uint64_t seed = 0;
  std::uint32_t label_origin = 1;
  bool trace = false;
};

struct RunResult {
  Term normal_form;
  std::vector<TraceEvent> trace;
  std::uint64_t steps = 0;
};

/// A program prepared for evaluation: loops lowered, tuple assignments
/// expanded, statement conditionals distributed, bodies compiled.
class Engine {
 public:
  explicit Engine(const Program& p);
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const Program& prepared() const { return prepared_.program; }
  const std::shared_ptr<const SymbolTable>& symbols() const { return symbols_; }
  bool uses_destructive() const { return uses_destructive_; }

  RunResult run(const Term& query, const EvalOptions& opts = {}) const;

  struct Compiled;
  const Compiled& compiled() const { return *compiled_; }

 private:
  LoweredProgram prepared_;
  std::shared_ptr<const SymbolTable> symbols_;
  std::unique_ptr<Compiled> compiled_;
  bool uses_destructive_ = false;
};

/// One evaluation over one snapshot.
class Session {
 public:
  Session(const Engine& engine, EvalOptions opts);
  ~Session();

  Snapshot& snapshot() { return snap_; }
  const Snapshot& snapshot() const { return snap_; }

  /// Adds a ground term to the snapshot and makes it the root.
  Label load(const Term& t);
  /// Normal form of the class l; the snapshot is updated in place.
  Label evaluate(Label l);
  /// Evaluates the root; throws ErrorConstantReached if it is `error`.
  Term run();

  const std::vector<TraceEvent>& trace() const { return trace_; }
  std::uint64_t steps() const { return steps_; }

 private:
  struct Activation;

  Label eval_label(Label l);
  Label eval_code(Activation& act, std::uint32_t idx);
  Label apply(Label l, std::vector<Label> args, SymbolId sym);
  Label call(Label l, SymbolId sym);
  bool choose_branch(Label cond_value, Label site, Label then_label, Label else_label);
  void step();
  std::vector<std::size_t> order(std::size_t n);
  void check_args(const std::vector<Label>& args, SymbolId sym);
  void record(const char* kind, const std::string& rule, Label subject, const std::string& before,
              Label after);
  std::string show(Label l) const;

  const Engine& engine_;
  EvalOptions opts_;
  Snapshot snap_;
  std::vector<TraceEvent> trace_;
  std::uint64_t steps_ = 0;
  std::size_t depth_ = 0;
  std::mt19937_64 rng_;
};

/// Convenience wrapper: prepare, load, evaluate, strip.
RunResult run_query(const Program& p, const Term& query, const EvalOptions& opts = {});

/// Runs f on a thread with a large stack; exceptions are rethrown here.
void with_large_stack(const std::function<void()>& f, std::size_t bytes = std::size_t{1} << 30);

}  // namespace rewlang

#endif
