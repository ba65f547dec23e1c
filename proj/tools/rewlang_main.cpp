// rewlang command-line driver: check, desugar, run.
#include <rewlang/rewlang.h>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

namespace {

enum Exit { kOk = 0, kInput = 1, kRuntime = 2, kLimit = 3 };

int exit_code(rw_status s) {
  switch (s) {
    case RW_OK: return kOk;
    case RW_ERR_LIMIT: return kLimit;
    case RW_ERR_RUNTIME:
    case RW_ERR_ERROR_CONST:
    case RW_ERR_STORE:
    case RW_ERR_INTERNAL: return kRuntime;
    default: return kInput;
  }
}

struct ProgramHandle {
  rw_program* p = nullptr;
  ~ProgramHandle() { rw_program_free(p); }
};

bool load(const std::string& path, ProgramHandle& h) {
  if (rw_program_load(path.c_str(), &h.p) != RW_OK) {
    std::cerr << rw_last_error() << "\n";
    return false;
  }
  return true;
}

// Prints diagnostics to `out`; returns false when there are errors.
bool check(const rw_program* p, bool strict, std::ostream& out) {
  char* diags = nullptr;
  int errors = 0;
  rw_status s = rw_program_check(p, strict, &diags, &errors);
  if (diags) out << diags;
  rw_string_free(diags);
  if (s != RW_OK && s != RW_ERR_CHECK) std::cerr << rw_last_error() << "\n";
  return s == RW_OK;
}

std::uint32_t label_origin_from_env() {
  const char* seed = std::getenv("REWLANG_SEED");
  if (!seed || !*seed) return 1;
  char* end = nullptr;
  unsigned long v = std::strtoul(seed, &end, 10);
  if (*end != '\0' || v == 0 || v > UINT32_MAX / 2) {
    std::cerr << "ignoring invalid REWLANG_SEED '" << seed << "'\n";
    return 1;
  }
  return static_cast<std::uint32_t>(v);
}

// Checks before desugaring or running; diagnostics go to stderr only when
// they block.
bool check_quietly(const rw_program* p, bool strict) {
  std::ostringstream diags;
  if (check(p, strict, diags)) return true;
  std::cerr << diags.str();
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rewlang: constructor-based term rewriting with assignments and loops"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rw_version()));

  std::string file;
  bool strict = false;

  auto* check_cmd = app.add_subcommand("check", "Static checks; diagnostics on stdout");
  check_cmd->add_option("file", file, "Program file")->required();
  check_cmd->add_flag("--strict-single-assignment", strict, "Single-assignment binding rules");

  bool lowered_only = false, rules_only = false;
  auto* desugar_cmd = app.add_subcommand("desugar", "Print the loop-free program and its rewrite system");
  desugar_cmd->add_option("file", file, "Program file")->required();
  desugar_cmd->add_flag("--strict-single-assignment", strict, "Single-assignment binding rules");
  auto* lo = desugar_cmd->add_flag("--lowered-only", lowered_only, "Only the loop-free program");
  desugar_cmd->add_flag("--rules-only", rules_only, "Only the rewrite system")->excludes(lo);

  rw_run_options opts;
  rw_run_options_init(&opts);
  std::string query, trace_path, order = "left";
  bool occurs = false, per_step = false;
  auto* run_cmd = app.add_subcommand("run", "Evaluate a query; the normal form goes to stdout");
  run_cmd->add_option("file", file, "Program file")->required();
  run_cmd->add_option("--query,-q", query, "Ground query term")->required();
  run_cmd->add_option("--trace", trace_path, "Write JSON-lines trace to this file");
  run_cmd->add_option("--max-steps", opts.max_steps, "Step limit")->capture_default_str();
  run_cmd->add_option("--max-depth", opts.max_depth, "Procedure nesting limit")->capture_default_str();
  run_cmd->add_flag("--occurs-check", occurs, "Reject destructive updates that create cycles");
  run_cmd->add_flag("--strict-single-assignment", strict, "Single-assignment binding rules");
  run_cmd->add_option("--order", order, "Sibling order (testing only)")
      ->check(CLI::IsMember({"left", "right", "random"}))
      ->group("Testing");
  run_cmd->add_option("--seed", opts.seed, "Seed for --order random")->group("Testing");
  run_cmd->add_flag("--per-step-check", per_step, "Verify the term store after every step")->group("Testing");

  CLI11_PARSE(app, argc, argv);

  ProgramHandle prog;
  if (!load(file, prog)) return kInput;

  if (*check_cmd) return check(prog.p, strict, std::cout) ? kOk : kInput;

  if (*desugar_cmd) {
    if (!check_quietly(prog.p, strict)) return kInput;
    char* lowered = nullptr;
    char* rules = nullptr;
    rw_status s = rw_program_desugar(prog.p, &lowered, &rules);
    if (s == RW_OK) {
      if (!rules_only) std::cout << lowered;
      if (!lowered_only && !rules_only) std::cout << "\n# rewrite system\n\n";
      if (!lowered_only) std::cout << rules;
    } else {
      std::cerr << rw_last_error() << "\n";
    }
    rw_string_free(lowered);
    rw_string_free(rules);
    return exit_code(s);
  }

  if (!check_quietly(prog.p, strict)) return kInput;
  opts.occurs_check = occurs;
  opts.strict_single = strict;
  opts.per_step_check = per_step;
  opts.trace = !trace_path.empty();
  opts.order = order == "right" ? RW_ORDER_RIGHT_FIRST : order == "random" ? RW_ORDER_RANDOM : RW_ORDER_LEFT_FIRST;
  opts.label_origin = label_origin_from_env();

  rw_result* result = nullptr;
  rw_status s = rw_run(prog.p, query.c_str(), &opts, &result);
  if (result && !trace_path.empty()) {
    std::ofstream out(trace_path, std::ios::binary);
    out << rw_result_trace(result);
    if (!out) std::cerr << "cannot write trace to " << trace_path << "\n";
  }
  if (result && (s == RW_OK || s == RW_ERR_ERROR_CONST)) std::cout << rw_result_term(result) << "\n";
  if (s != RW_OK) std::cerr << rw_status_name(s) << ": " << rw_last_error() << "\n";
  rw_result_free(result);
  return exit_code(s);
}
