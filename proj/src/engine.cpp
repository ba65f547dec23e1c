#include "engine.h"

#include <pthread.h>

#include <algorithm>
#include <exception>
#include <functional>
#include <map>
#include <numeric>

#include "printer.h"

namespace rewlang {

namespace {

struct CodeNode {
  enum class Op : unsigned char { Var, Int, Const, App, If, Assign };
  Op op = Op::App;
  SymbolId sym = 0;
  BigInt value;
  std::uint32_t slot = 0;
  bool has_assign = false;
  std::vector<std::uint32_t> kids;
};

struct CompiledRule {
  std::string name;
  Term lhs;
  // Slot of each pattern variable, by name.
  std::vector<std::pair<std::string, std::uint32_t>> pattern_slots;
  std::vector<std::string> slot_names;
  std::vector<CodeNode> code;
  std::uint32_t root = 0;
};

struct CompiledProc {
  std::string name;
  bool flat = false;
  std::vector<CompiledRule> rules;
};

class Compiler {
 public:
  explicit Compiler(SymbolTable& table) : table_(table) {}

  CompiledRule rule(const std::string& name, const Term& lhs, const std::vector<std::string>& formals,
                    const ATerm& body) {
    CompiledRule r;
    r.name = name;
    r.lhs = lhs;
    slots_.clear();
    rule_ = &r;
    for (const auto& x : formals) r.pattern_slots.emplace_back(x, slot(x));
    r.root = compile(body);
    r.slot_names.resize(slots_.size());
    for (const auto& [n, s] : slots_) r.slot_names[s] = n;
    return r;
  }

  bool saw_destructive = false;

 private:
  std::uint32_t slot(const std::string& name) {
    auto [it, fresh] = slots_.emplace(name, static_cast<std::uint32_t>(slots_.size()));
    return it->second;
  }

  std::uint32_t compile(const ATerm& a) {
    using K = ATerm::Kind;
    CodeNode n;
    switch (a.kind) {
      case K::Var:
        n.op = CodeNode::Op::Var;
        n.slot = slot(a.name);
        break;
      case K::Int:
        n.op = CodeNode::Op::Int;
        n.value = a.value;
        break;
      case K::App: {
        auto sym = table_.resolve(a.name, a.kids.size());
        if (!sym) throw Error("unknown-symbol", "unknown symbol " + a.name + "/" + std::to_string(a.kids.size()));
        n.sym = *sym;
        if (table_[*sym].builtin == Builtin::DReplace) saw_destructive = true;
        n.op = a.kids.empty() && table_.is_constructor(*sym) ? CodeNode::Op::Const : CodeNode::Op::App;
        break;
      }
      case K::If:
        n.op = CodeNode::Op::If;
        n.sym = table_.if_sym();
        break;
      case K::Assign:
        if (a.tuple_target) throw std::logic_error("tuple assignment reached the compiler");
        n.op = CodeNode::Op::Assign;
        n.has_assign = true;
        break;
      default:
        throw std::logic_error("statement form reached the compiler");
    }
    for (const auto& k : a.kids) {
      std::uint32_t idx = compile(k);
      n.has_assign |= rule_->code[idx].has_assign;
      n.kids.push_back(idx);
    }
    // Assignment target is bound after its right-hand side is compiled.
    if (a.kind == K::Assign) n.slot = slot(a.targets[0]);
    rule_->code.push_back(std::move(n));
    return static_cast<std::uint32_t>(rule_->code.size() - 1);
  }

  SymbolTable& table_;
  CompiledRule* rule_ = nullptr;
  std::map<std::string, std::uint32_t> slots_;
};

}  // namespace

struct Engine::Compiled {
  std::map<SymbolId, CompiledProc> procs;
};

Engine::Engine(const Program& p) : prepared_(prepare_program(p)), compiled_(std::make_unique<Compiled>()) {
  auto table = std::make_shared<SymbolTable>(make_symbol_table(prepared_.program));
  Compiler compiler(*table);
  for (const auto& proc : prepared_.program.procedures) {
    auto sym = table->find(proc.name, proc.arity);
    if (!sym || (*table)[*sym].kind != SymbolKind::Defined)
      throw Error("check", "procedure " + proc.name + " is not a defined symbol");
    CompiledProc cp;
    cp.name = proc.name;
    cp.flat = proc.kind == Procedure::Kind::Flat;
    if (cp.flat) {
      std::vector<Term> params;
      for (const auto& x : proc.params) params.push_back(Term::var(x));
      cp.rules.push_back(compiler.rule(proc.name, Term::app(proc.name, std::move(params)), proc.params, proc.body));
    } else {
      for (std::size_t i = 0; i < proc.rules.size(); ++i) {
        const Rule& r = proc.rules[i];
        std::vector<std::string> vars;
        collect_vars(r.lhs, vars);
        cp.rules.push_back(compiler.rule(proc.name + "#" + std::to_string(i + 1), r.lhs, vars, r.rhs));
      }
    }
    compiled_->procs.emplace(*sym, std::move(cp));
  }
  uses_destructive_ = compiler.saw_destructive;
  symbols_ = std::move(table);
}

Engine::~Engine() = default;

RunResult Engine::run(const Term& query, const EvalOptions& opts) const {
  Session s(*this, opts);
  s.load(query);
  RunResult out;
  out.normal_form = s.run();
  out.trace = s.trace();
  out.steps = s.steps();
  return out;
}

struct Session::Activation {
  const CompiledRule* rule = nullptr;
  std::vector<Label> labels;
};

Session::Session(const Engine& engine, EvalOptions opts)
    : engine_(engine),
      opts_(opts),
      snap_(std::make_shared<SymbolTable>(*engine.symbols()), opts.label_origin),
      rng_(opts.seed) {
  if (opts_.order == EvalOrder::Random && engine.uses_destructive())
    throw Error("arg", "randomized evaluation order refuses programs that use d_replace");
  snap_.set_occurs_check(opts_.occurs_check);
}

Session::~Session() = default;

Label Session::load(const Term& t) {
  Label l = decorate(t, snap_);
  snap_.set_root(l);
  return l;
}

Term Session::run() {
  Label r = evaluate(snap_.root());
  snap_.set_root(r);
  if (snap_.node(r).sym == snap_.symbols().error_sym()) throw ErrorConstantReached();
  return strip(r, snap_);
}

Label Session::evaluate(Label l) { return eval_label(l); }

void Session::step() {
  if (steps_ >= opts_.max_steps)
    throw LimitError("step limit of " + std::to_string(opts_.max_steps) + " exceeded");
  ++steps_;
}

std::vector<std::size_t> Session::order(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (opts_.order == EvalOrder::RightFirst) std::reverse(idx.begin(), idx.end());
  if (opts_.order == EvalOrder::Random) std::shuffle(idx.begin(), idx.end(), rng_);
  return idx;
}

std::string Session::show(Label l) const {
  try {
    return to_string(strip(l, snap_));
  } catch (const CycleDetected&) {
    return "<cyclic>";
  }
}

void Session::record(const char* kind, const std::string& rule, Label subject, const std::string& before,
                     Label after) {
  if (opts_.trace) trace_.push_back({steps_, kind, rule, subject.id, before, show(after)});
  if (opts_.per_step_check) {
    if (auto v = check_store(snap_, true))
      throw StoreError(std::string(to_string(v->kind)) + ": " + v->message);
  }
}

void Session::check_args(const std::vector<Label>& args, SymbolId sym) {
  for (Label a : args)
    if (snap_.node(a).sym == snap_.symbols().error_sym())
      throw RuntimeError("the error constant reached an argument of " + snap_.symbols()[sym].name);
}

Label Session::eval_label(Label l) {
  l = snap_.resolve(l);
  if (snap_.node(l).normal) return l;
  SymbolId sym = snap_.node(l).sym;
  const SymbolInfo& info = snap_.symbols()[sym];
  std::vector<Label> kids = snap_.node(l).kids;

  if (info.kind == SymbolKind::Cond) {
    Label c = eval_label(kids[0]);
    return eval_label(choose_branch(c, l, kids[1], kids[2]) ? kids[1] : kids[2]);
  }
  for (std::size_t i : order(kids.size())) eval_label(kids[i]);
  l = snap_.resolve(l);
  if (info.kind == SymbolKind::Constructor) {
    snap_.mutable_node(l).normal = true;
    return l;
  }
  std::vector<Label> args(kids.size());
  for (std::size_t i = 0; i < args.size(); ++i) args[i] = snap_.kid(l, i);
  return apply(l, std::move(args), sym);
}

bool Session::choose_branch(Label cond_value, Label site, Label then_label, Label else_label) {
  SymbolId c = snap_.node(cond_value).sym;
  bool took_then = c == snap_.symbols().true_sym();
  if (!took_then && c != snap_.symbols().false_sym()) {
    throw RuntimeError("condition evaluated to " + show(cond_value) + ", not true or false");
  }
  Label chosen = took_then ? then_label : else_label;
  step();
  std::string before = opts_.trace ? show(site) : std::string();
  snap_.splice(site, chosen);
  record("cond", "if", site, before, chosen);
  return took_then;
}

Label Session::apply(Label l, std::vector<Label> args, SymbolId sym) {
  const SymbolInfo& info = snap_.symbols()[sym];
  check_args(args, sym);
  if (info.kind == SymbolKind::Defined) return call(l, sym);
  std::string before = opts_.trace ? show(l) : std::string();
  std::string name = info.name;
  bool destructive = info.builtin == Builtin::DReplace;
  step();
  Label result = snap_.resolve(apply_builtin(snap_, sym, args));
  snap_.splice(l, result);
  record(destructive ? "destructive" : "builtin", name, l, before, result);
  return result;
}

Label Session::call(Label l, SymbolId sym) {
  const auto& procs = engine_.compiled().procs;
  auto it = procs.find(sym);
  if (it == procs.end()) throw RuntimeError("no procedure for " + snap_.symbols()[sym].name);
  const CompiledProc& proc = it->second;
  if (depth_ >= opts_.max_depth)
    throw LimitError("depth limit of " + std::to_string(opts_.max_depth) + " exceeded");

  for (const auto& rule : proc.rules) {
    std::vector<Label> env(rule.slot_names.size());
    if (proc.flat) {
      for (std::size_t i = 0; i < rule.pattern_slots.size(); ++i)
        env[rule.pattern_slots[i].second] = snap_.kid(l, i);
    } else {
      auto theta = match(rule.lhs, l, snap_);
      if (!theta) continue;
      for (const auto& [name, slot] : rule.pattern_slots) env[slot] = snap_.resolve(theta->at(name));
    }
    step();
    Activation act{&rule, std::vector<Label>(rule.code.size())};
    std::function<Label(std::uint32_t, std::vector<Label>&)> build = [&](std::uint32_t idx,
                                                                         std::vector<Label>& vars) -> Label {
      const CodeNode& c = rule.code[idx];
      Label out;
      switch (c.op) {
        case CodeNode::Op::Var:
          out = vars[c.slot];
          if (!out.valid()) throw RuntimeError("variable " + rule.slot_names[c.slot] + " is not bound");
          break;
        case CodeNode::Op::Int: out = snap_.integer(c.value); break;
        case CodeNode::Op::Const: out = snap_.constant(c.sym); break;
        case CodeNode::Op::Assign: {
          vars[c.slot] = build(c.kids[0], vars);
          out = build(c.kids[1], vars);
          break;
        }
        default: {
          std::vector<Label> kids;
          kids.reserve(c.kids.size());
          for (std::uint32_t k : c.kids) {
            // Bindings made inside one argument or branch stay there.
            if (rule.code[k].has_assign) {
              std::vector<Label> local = vars;
              kids.push_back(build(k, local));
            } else {
              kids.push_back(build(k, vars));
            }
          }
          out = snap_.add(c.sym, std::move(kids));
        }
      }
      act.labels[idx] = out;
      return out;
    };
    Label image = build(rule.root, env);
    std::string before = opts_.trace ? show(l) : std::string();
    snap_.splice(l, image);
    record(proc.flat ? "call" : "rewrite", rule.name, l, before, image);
    ++depth_;
    Label result = eval_code(act, rule.root);
    --depth_;
    return result;
  }

  step();
  std::string before = opts_.trace ? show(l) : std::string();
  Label err = snap_.constant(snap_.symbols().error_sym());
  snap_.splice(l, err);
  record("splice", proc.name + ": no rule matches", l, before, err);
  return err;
}

Label Session::eval_code(Activation& act, std::uint32_t idx) {
  const CodeNode& c = act.rule->code[idx];
  switch (c.op) {
    case CodeNode::Op::Var:
      return eval_label(act.labels[idx]);
    case CodeNode::Op::Int:
    case CodeNode::Op::Const:
      return snap_.resolve(act.labels[idx]);
    case CodeNode::Op::Assign:
      eval_code(act, c.kids[0]);
      return eval_code(act, c.kids[1]);
    case CodeNode::Op::If: {
      Label v = eval_code(act, c.kids[0]);
      Label site = snap_.resolve(act.labels[idx]);
      bool took_then = choose_branch(v, site, act.labels[c.kids[1]], act.labels[c.kids[2]]);
      return eval_code(act, took_then ? c.kids[1] : c.kids[2]);
    }
    case CodeNode::Op::App:
      break;
  }
  for (std::size_t i : order(c.kids.size())) eval_code(act, c.kids[i]);
  Label l = snap_.resolve(act.labels[idx]);
  if (snap_.node(l).normal) return l;
  const SymbolInfo& info = snap_.symbols()[c.sym];
  if (info.kind == SymbolKind::Constructor) {
    snap_.mutable_node(l).normal = true;
    return l;
  }
  std::vector<Label> args(c.kids.size());
  for (std::size_t i = 0; i < args.size(); ++i) args[i] = snap_.kid(l, i);
  return apply(l, std::move(args), c.sym);
}

RunResult run_query(const Program& p, const Term& query, const EvalOptions& opts) {
  Engine engine(p);
  return engine.run(query, opts);
}

namespace {

struct ThreadJob {
  const std::function<void()>* f;
  std::exception_ptr error;
};

void* thread_main(void* arg) {
  auto* job = static_cast<ThreadJob*>(arg);
  try {
    (*job->f)();
  } catch (...) {
    job->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void with_large_stack(const std::function<void()>& f, std::size_t bytes) {
  ThreadJob job{&f, nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, thread_main, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    f();
    return;
  }
  pthread_join(thread, nullptr);
  if (job.error) std::rethrow_exception(job.error);
}

}  // namespace rewlang
