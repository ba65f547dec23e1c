#include <rewlang/rewlang.h>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>

#include "checks.h"
#include "desugar.h"
#include "engine.h"
#include "parser.h"
#include "printer.h"

struct rw_program {
  rewlang::Program program;
  mutable std::once_flag engine_once;
  mutable std::unique_ptr<rewlang::Engine> engine;
  mutable std::string engine_error;
};

struct rw_result {
  std::string term;
  std::string trace;
  std::uint64_t steps = 0;
};

namespace {

thread_local std::string last_error;

rw_status fail(rw_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rw_status status_for(const rewlang::Error& e) {
  const std::string& c = e.code();
  if (c == "parse") return RW_ERR_PARSE;
  if (c == "limit") return RW_ERR_LIMIT;
  if (c == "error-constant") return RW_ERR_ERROR_CONST;
  if (c == "store") return RW_ERR_STORE;
  if (c == "arg") return RW_ERR_ARG;
  if (c == "check") return RW_ERR_CHECK;
  return RW_ERR_RUNTIME;
}

rewlang::BindingMode mode(int strict_single) {
  return strict_single ? rewlang::BindingMode::Single : rewlang::BindingMode::Multi;
}

}  // namespace

extern "C" {

void rw_run_options_init(rw_run_options* opts) {
  if (!opts) return;
  rewlang::EvalOptions d;
  opts->max_steps = d.max_steps;
  opts->max_depth = d.max_depth;
  opts->occurs_check = 0;
  opts->strict_single = 0;
  opts->order = RW_ORDER_LEFT_FIRST;
  opts->seed = 0;
  opts->label_origin = 1;
  opts->trace = 0;
  opts->per_step_check = 0;
}

const char* rw_last_error(void) { return last_error.c_str(); }

const char* rw_status_name(rw_status s) {
  switch (s) {
    case RW_OK: return "ok";
    case RW_ERR_PARSE: return "parse";
    case RW_ERR_CHECK: return "check";
    case RW_ERR_RUNTIME: return "runtime";
    case RW_ERR_LIMIT: return "limit";
    case RW_ERR_IO: return "io";
    case RW_ERR_ARG: return "argument";
    case RW_ERR_ERROR_CONST: return "error-constant";
    case RW_ERR_STORE: return "store";
    case RW_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* rw_version(void) { return "0.1.0"; }

rw_status rw_program_parse(const char* source, const char* file_name, rw_program** out) {
  if (!source || !out) return fail(RW_ERR_ARG, "null argument");
  *out = nullptr;
  try {
    auto prog = std::make_unique<rw_program>();
    rewlang::with_large_stack(
        [&] { prog->program = rewlang::parse_program(source, file_name ? file_name : "<input>"); });
    *out = prog.release();
    return RW_OK;
  } catch (const rewlang::ParseError& e) {
    return fail(RW_ERR_PARSE, std::string(file_name ? file_name : "<input>") + ":" + e.what());
  } catch (const std::exception& e) {
    return fail(RW_ERR_INTERNAL, e.what());
  }
}

rw_status rw_program_load(const char* path, rw_program** out) {
  if (!path || !out) return fail(RW_ERR_ARG, "null argument");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(RW_ERR_IO, std::string("cannot read ") + path);
  std::ostringstream text;
  text << in.rdbuf();
  return rw_program_parse(text.str().c_str(), path, out);
}

void rw_program_free(rw_program* prog) { delete prog; }

rw_status rw_program_check(const rw_program* prog, int strict_single, char** diagnostics, int* error_count) {
  if (!prog) return fail(RW_ERR_ARG, "null program");
  try {
    auto ds = rewlang::check_program(prog->program, mode(strict_single));
    std::string text;
    int errors = 0;
    for (const auto& d : ds) {
      text += rewlang::format_diagnostic(d) + "\n";
      if (d.severity == rewlang::Diagnostic::Severity::Error) ++errors;
    }
    if (diagnostics) *diagnostics = dup(text);
    if (error_count) *error_count = errors;
    return errors ? fail(RW_ERR_CHECK, "program has " + std::to_string(errors) + " error(s)") : RW_OK;
  } catch (const std::exception& e) {
    return fail(RW_ERR_INTERNAL, e.what());
  }
}

rw_status rw_program_desugar(const rw_program* prog, char** lowered, char** rewrite_system) {
  if (!prog) return fail(RW_ERR_ARG, "null program");
  try {
    if (lowered) *lowered = dup(rewlang::to_string(rewlang::lower_loops(prog->program).program));
    if (rewrite_system) *rewrite_system = dup(rewlang::to_string(rewlang::flatten_program(prog->program).program));
    return RW_OK;
  } catch (const rewlang::Error& e) {
    return fail(status_for(e), e.what());
  } catch (const std::exception& e) {
    return fail(RW_ERR_INTERNAL, e.what());
  }
}

rw_status rw_run(const rw_program* prog, const char* query, const rw_run_options* opts, rw_result** out) {
  if (!prog || !query) return fail(RW_ERR_ARG, "null argument");
  if (out) *out = nullptr;
  rw_run_options o;
  rw_run_options_init(&o);
  if (opts) o = *opts;

  int errors = 0;
  rw_status st = rw_program_check(prog, o.strict_single, nullptr, &errors);
  if (st != RW_OK) return st;

  std::call_once(prog->engine_once, [prog] {
    try {
      prog->engine = std::make_unique<rewlang::Engine>(prog->program);
    } catch (const std::exception& e) {
      prog->engine_error = e.what();
    }
  });
  if (!prog->engine) return fail(RW_ERR_INTERNAL, prog->engine_error);

  rewlang::EvalOptions eo;
  eo.max_steps = o.max_steps;
  eo.max_depth = static_cast<std::size_t>(o.max_depth);
  eo.occurs_check = o.occurs_check != 0;
  eo.per_step_check = o.per_step_check != 0;
  eo.order = o.order == RW_ORDER_RIGHT_FIRST ? rewlang::EvalOrder::RightFirst
             : o.order == RW_ORDER_RANDOM    ? rewlang::EvalOrder::Random
                                             : rewlang::EvalOrder::LeftFirst;
  eo.seed = o.seed;
  eo.label_origin = o.label_origin;
  eo.trace = o.trace != 0;

  auto result = std::make_unique<rw_result>();
  rw_status status = RW_OK;
  std::string message;
  try {
    // Deeply nested queries recurse in the parser and in Term's destructor,
    // so the query lives entirely on the large stack.
    rewlang::with_large_stack([&] {
      rewlang::Term q;
      try {
        q = rewlang::parse_query(query, prog->program);
      } catch (const rewlang::ParseError& e) {
        status = RW_ERR_PARSE;
        message = std::string("query:") + e.what();
        return;
      }
      std::unique_ptr<rewlang::Session> session;
      try {
        session = std::make_unique<rewlang::Session>(*prog->engine, eo);
        session->load(q);
        result->term = rewlang::to_string(session->run());
      } catch (const rewlang::Error& e) {
        status = status_for(e);
        message = e.what();
        if (status == RW_ERR_ERROR_CONST) result->term = "error";
      }
      if (session) {
        result->trace = rewlang::to_json_lines(session->trace());
        result->steps = session->steps();
      }
    });
  } catch (const std::exception& e) {
    return fail(RW_ERR_INTERNAL, e.what());
  }
  if (status == RW_ERR_ARG || status == RW_ERR_PARSE) return fail(status, message);
  if (out) *out = result.release();
  return status == RW_OK ? RW_OK : fail(status, message);
}

const char* rw_result_term(const rw_result* r) { return r ? r->term.c_str() : ""; }
const char* rw_result_trace(const rw_result* r) { return r ? r->trace.c_str() : ""; }
uint64_t rw_result_steps(const rw_result* r) { return r ? r->steps : 0; }
void rw_result_free(rw_result* r) { delete r; }
void rw_string_free(char* s) { std::free(s); }

}  // extern "C"
