#include "desugar.h"

#include <stdexcept>

#include "eliminate.h"

namespace rewlang {

std::string NameSupply::fresh(const std::string& base) {
  if (!used(base)) {
    used_.insert(base);
    return base;
  }
  return numbered(base);
}

std::string NameSupply::numbered(const std::string& base) {
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + std::to_string(k);
    if (!used(candidate)) {
      used_.insert(candidate);
      return candidate;
    }
  }
}

void collect_names(const ATerm& a, std::set<std::string>& out) {
  if (a.kind == ATerm::Kind::Var || a.kind == ATerm::Kind::For) out.insert(a.name);
  out.insert(a.targets.begin(), a.targets.end());
  for (const auto& k : a.kids) collect_names(k, out);
}

std::set<std::string> names_in(const Procedure& p) {
  std::set<std::string> out(p.params.begin(), p.params.end());
  collect_names(p.body, out);
  for (const auto& r : p.rules) {
    auto vs = vars_of(r.lhs);
    out.insert(vs.begin(), vs.end());
    collect_names(r.rhs, out);
  }
  return out;
}

std::vector<Rule> RewriteSystem::rules() const {
  std::vector<Rule> out;
  for (const auto& p : program.procedures) out.insert(out.end(), p.rules.begin(), p.rules.end());
  return out;
}

namespace {

ATerm var_list_call(const std::string& name, std::vector<ATerm> lead, const std::set<std::string>& vars,
                    SourcePos pos) {
  for (const auto& v : vars) lead.push_back(ATerm::var(v, pos));
  return ATerm::app(name, std::move(lead), pos);
}

const char* loop_word(ATerm::Kind k) {
  switch (k) {
    case ATerm::Kind::For: return "for";
    case ATerm::Kind::While: return "while";
    default: return "until";
  }
}

class LoopLowerer {
 public:
  explicit LoopLowerer(const Program& p) {
    for (const auto& proc : p.procedures) proc_names_.reserve(proc.name);
  }

  // Lowers proc and returns it followed by the procedures generated for it.
  std::vector<Procedure> run(Procedure proc, std::map<std::string, std::string>& origins) {
    generated_.clear();
    origins_ = &origins;
    lower_procedure(proc);
    std::vector<Procedure> out{std::move(proc)};
    for (auto& g : generated_) out.push_back(std::move(g));
    return out;
  }

 private:
  void lower_procedure(Procedure& proc) {
    owner_ = proc.name;
    if (proc.kind == Procedure::Kind::Flat) {
      proc.body = lower(proc.body);
    } else {
      for (auto& r : proc.rules) r.rhs = lower(r.rhs);
    }
  }

  ATerm lower(const ATerm& a) {
    using K = ATerm::Kind;
    if (a.is_loop()) return lower_loop(a);
    if (a.kind == K::StmtIf && (has_loop(a.kids[1]) || has_loop(a.kids[2]))) {
      ATerm c = ATerm::cond(a.kids[0], fill_hole(a.kids[1], a.kids[3]), fill_hole(a.kids[2], a.kids[3]), a.pos);
      return lower(c);
    }
    ATerm out = a;
    for (auto& k : out.kids) k = lower(k);
    return out;
  }

  static bool has_loop(const ATerm& a) {
    return a.contains(ATerm::Kind::For) || a.contains(ATerm::Kind::While) ||
           a.contains(ATerm::Kind::Until);
  }

  std::string new_name(const char* word) {
    std::string name;
    do name = std::string("p_") + word + "_" + std::to_string(++counter_);
    while (proc_names_.used(name));
    proc_names_.reserve(name);
    return name;
  }

  ATerm lower_loop(const ATerm& a) {
    using K = ATerm::Kind;
    std::string name = new_name(loop_word(a.kind));
    std::string site = std::string(loop_word(a.kind)) + " loop at " + std::to_string(a.pos.line) + ":" +
                       std::to_string(a.pos.column) + " in " + owner_;
    Procedure gen;
    gen.kind = Procedure::Kind::Flat;
    gen.name = name;
    gen.pos = a.pos;
    gen.origin = site;
    ATerm call;

    if (a.kind == K::For) {
      const std::string& counter = a.name;
      const ATerm& body = a.kids[2];
      const ATerm& rest = a.kids[3];
      auto live = free_vars(body);
      auto rest_vars = free_vars(rest);
      live.insert(rest_vars.begin(), rest_vars.end());
      live.erase(counter);

      std::set<std::string> local = live;
      collect_names(body, local);
      collect_names(rest, local);
      local.insert(counter);
      NameSupply names(local);
      bool counter_reassigned = assigned_vars(body).count(counter) != 0;
      std::string index = counter_reassigned ? names.fresh(counter + "0") : counter;
      std::string bound = names.fresh("n");

      ATerm next = ATerm::app("sum", {ATerm::var(index, a.pos), ATerm::integer(1, a.pos)}, a.pos);
      ATerm recur = var_list_call(name, {next, ATerm::var(bound, a.pos)}, live, a.pos);
      ATerm test = ATerm::app("le", {ATerm::var(index, a.pos), ATerm::var(bound, a.pos)}, a.pos);
      ATerm loop = ATerm::cond(test, fill_hole(body, recur), rest, a.pos);
      if (counter_reassigned) loop = ATerm::assign(counter, ATerm::var(index, a.pos), loop, a.pos);

      gen.params = {index, bound};
      gen.params.insert(gen.params.end(), live.begin(), live.end());
      gen.body = std::move(loop);
      call = var_list_call(name, {lower(a.kids[0]), lower(a.kids[1])}, live, a.pos);
    } else {
      auto live = free_vars(a);
      ATerm recur = var_list_call(name, {}, live, a.pos);
      if (a.kind == K::While) {
        gen.body = ATerm::cond(a.kids[0], fill_hole(a.kids[1], recur), a.kids[2], a.pos);
      } else {
        gen.body = fill_hole(a.kids[0], ATerm::cond(a.kids[1], a.kids[2], recur, a.pos));
      }
      gen.params.assign(live.begin(), live.end());
      call = recur;
    }
    gen.arity = gen.params.size();

    // Outer loops get the lower numbers: reserve the slot before lowering
    // the generated body.
    std::size_t slot = generated_.size();
    generated_.emplace_back();
    (*origins_)[name] = site;
    std::string saved_owner = owner_;
    lower_procedure(gen);
    owner_ = saved_owner;
    generated_[slot] = std::move(gen);
    return call;
  }

  NameSupply proc_names_;
  std::vector<Procedure> generated_;
  std::map<std::string, std::string>* origins_ = nullptr;
  std::string owner_;
  int counter_ = 0;
};

ATerm expand_tuples(const ATerm& a, NameSupply& names) {
  ATerm out = a;
  for (auto& k : out.kids) k = expand_tuples(k, names);
  if (out.kind != ATerm::Kind::Assign || !out.tuple_target) return out;
  std::string tmp = names.numbered("tup");
  SourcePos pos = out.pos;
  ATerm chain = std::move(out.kids[1]);
  for (std::size_t i = out.targets.size(); i-- > 0;) {
    ATerm proj = ATerm::app("pi_" + std::to_string(i + 1), {ATerm::var(tmp, pos)}, pos);
    chain = ATerm::assign(out.targets[i], std::move(proj), std::move(chain), pos);
  }
  return ATerm::assign(tmp, std::move(out.kids[0]), std::move(chain), pos);
}

std::string strip_digits(const std::string& name) {
  std::size_t end = name.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(name[end - 1]))) --end;
  return end == 0 ? name : name.substr(0, end);
}

ATerm rename(const ATerm& a, std::map<std::string, std::string> env, std::set<std::string> bound,
             NameSupply& names) {
  using K = ATerm::Kind;
  switch (a.kind) {
    case K::Var: {
      auto it = env.find(a.name);
      return it == env.end() ? a : ATerm::var(it->second, a.pos);
    }
    case K::StmtIf:
      return rename(distribute_if_seq(a), std::move(env), std::move(bound), names);
    case K::For:
    case K::While:
    case K::Until:
      throw std::logic_error("rename_multi_assign: loops must be lowered first");
    case K::Assign: {
      ATerm out = a;
      out.kids[0] = rename(a.kids[0], env, bound, names);
      for (auto& x : out.targets) {
        std::string source = x;
        if (bound.count(source)) x = names.numbered(strip_digits(source));
        env[source] = x;
        bound.insert(source);
      }
      out.kids[1] = rename(a.kids[1], std::move(env), std::move(bound), names);
      return out;
    }
    default: {
      ATerm out = a;
      for (auto& k : out.kids) k = rename(k, env, bound, names);
      return out;
    }
  }
}

std::set<std::string> names_of(const ATerm& a) {
  std::set<std::string> out;
  collect_names(a, out);
  return out;
}

template <typename F>
void for_each_body(Program& p, F f) {
  for (auto& proc : p.procedures) {
    NameSupply names(names_in(proc));
    if (proc.kind == Procedure::Kind::Flat) {
      proc.body = f(proc.body, std::set<std::string>(proc.params.begin(), proc.params.end()), names);
    } else {
      for (auto& r : proc.rules) r.rhs = f(r.rhs, vars_of(r.lhs), names);
    }
  }
}

}  // namespace

LoweredProgram lower_loops(const Program& p) {
  LoweredProgram out;
  out.program.file = p.file;
  out.program.constructors = p.constructors;
  LoopLowerer lowerer(p);
  for (const auto& proc : p.procedures) {
    auto procs = lowerer.run(proc, out.origins);
    for (auto& q : procs) out.program.procedures.push_back(std::move(q));
  }
  return out;
}

ATerm expand_tuple_assign(const ATerm& a, NameSupply& names) { return expand_tuples(a, names); }

ATerm expand_tuple_assign(const ATerm& a) {
  NameSupply names(names_of(a));
  return expand_tuples(a, names);
}

ATerm distribute_if_seq(const ATerm& a) {
  if (a.kind == ATerm::Kind::StmtIf) {
    const ATerm& rest = a.kids[3];
    return ATerm::cond(distribute_if_seq(a.kids[0]), distribute_if_seq(fill_hole(a.kids[1], rest)),
                       distribute_if_seq(fill_hole(a.kids[2], rest)), a.pos);
  }
  ATerm out = a;
  for (auto& k : out.kids) k = distribute_if_seq(k);
  return out;
}

ATerm rename_multi_assign(const ATerm& a, const std::set<std::string>& bound, NameSupply& names) {
  return rename(a, {}, bound, names);
}

ATerm rename_multi_assign(const ATerm& a, const std::set<std::string>& bound) {
  std::set<std::string> used = names_of(a);
  used.insert(bound.begin(), bound.end());
  NameSupply names(used);
  return rename(a, {}, bound, names);
}

LoweredProgram prepare_program(const Program& p) {
  LoweredProgram out = lower_loops(p);
  for_each_body(out.program, [](const ATerm& body, const std::set<std::string>&, NameSupply& names) {
    return distribute_if_seq(expand_tuple_assign(body, names));
  });
  return out;
}

RewriteSystem flatten_program(const Program& p) {
  LoweredProgram lowered = prepare_program(p);
  RewriteSystem out;
  out.program.file = p.file;
  out.program.constructors = p.constructors;
  for (auto& proc : lowered.program.procedures) {
    NameSupply names(names_in(proc));
    Procedure r;
    r.kind = Procedure::Kind::Rewrite;
    r.name = proc.name;
    r.arity = proc.arity;
    r.innermost = proc.innermost;
    r.pos = proc.pos;
    r.origin = proc.origin;
    auto flatten = [&](const ATerm& body, const std::set<std::string>& formals) {
      ATerm renamed = rename_multi_assign(body, formals, names);
      return ATerm::from_term(eliminate_assignments(renamed).term);
    };
    if (proc.kind == Procedure::Kind::Flat) {
      std::vector<Term> params;
      for (const auto& x : proc.params) params.push_back(Term::var(x));
      Rule rule;
      rule.lhs = Term::app(proc.name, std::move(params));
      rule.rhs = flatten(proc.body, {proc.params.begin(), proc.params.end()});
      rule.pos = proc.pos;
      r.rules.push_back(std::move(rule));
    } else {
      for (const auto& rule : proc.rules) {
        Rule nr = rule;
        nr.rhs = flatten(rule.rhs, vars_of(rule.lhs));
        r.rules.push_back(std::move(nr));
      }
    }
    out.program.procedures.push_back(std::move(r));
  }
  return out;
}

}  // namespace rewlang
