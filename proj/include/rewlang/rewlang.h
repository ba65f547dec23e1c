/* rewlang: a term-rewriting language with assignments, loops and
 * destructive updates. C interface to the core library. */
#ifndef REWLANG_REWLANG_H
#define REWLANG_REWLANG_H

#include <stdint.h>

#if defined(REWLANG_BUILDING)
#define RW_API __attribute__((visibility("default")))
#else
#define RW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rw_program rw_program;
typedef struct rw_result rw_result;

typedef enum rw_status {
  RW_OK = 0,
  RW_ERR_PARSE = 1,
  RW_ERR_CHECK = 2,
  RW_ERR_RUNTIME = 3,
  RW_ERR_LIMIT = 4,
  RW_ERR_IO = 5,
  RW_ERR_ARG = 6,
  RW_ERR_ERROR_CONST = 7, /* the query evaluated to the `error` constant */
  RW_ERR_STORE = 8,       /* per-step store check failed */
  RW_ERR_INTERNAL = 9
} rw_status;

typedef enum rw_order {
  RW_ORDER_LEFT_FIRST = 0,
  RW_ORDER_RIGHT_FIRST = 1,
  RW_ORDER_RANDOM = 2 /* refuses programs that use d_replace */
} rw_order;

typedef struct rw_run_options {
  uint64_t max_steps;
  uint64_t max_depth;
  int occurs_check;
  int strict_single; /* single-assignment binding rules */
  int order;         /* rw_order */
  uint64_t seed;     /* for RW_ORDER_RANDOM */
  uint32_t label_origin;
  int trace;
  int per_step_check;
} rw_run_options;

RW_API void rw_run_options_init(rw_run_options* opts);

/* Message for the last failed call on this thread. */
RW_API const char* rw_last_error(void);
RW_API const char* rw_status_name(rw_status s);
RW_API const char* rw_version(void);

RW_API rw_status rw_program_parse(const char* source, const char* file_name, rw_program** out);
RW_API rw_status rw_program_load(const char* path, rw_program** out);
RW_API void rw_program_free(rw_program* prog);

/* Diagnostics, one per line; *error_count counts errors (not warnings).
 * Returns RW_ERR_CHECK when there are errors. */
RW_API rw_status rw_program_check(const rw_program* prog, int strict_single, char** diagnostics,
                                  int* error_count);

/* The loop-free program and the rewrite system, both re-parseable. */
RW_API rw_status rw_program_desugar(const rw_program* prog, char** lowered, char** rewrite_system);

/* Checks the program, then evaluates the query. On RW_OK, RW_ERR_RUNTIME,
 * RW_ERR_LIMIT, RW_ERR_ERROR_CONST and RW_ERR_STORE a result carrying the
 * trace recorded so far is stored in *out. */
RW_API rw_status rw_run(const rw_program* prog, const char* query, const rw_run_options* opts,
                        rw_result** out);

RW_API const char* rw_result_term(const rw_result* r);
/* Newline-delimited JSON trace events (empty unless tracing was requested). */
RW_API const char* rw_result_trace(const rw_result* r);
RW_API uint64_t rw_result_steps(const rw_result* r);
RW_API void rw_result_free(rw_result* r);

RW_API void rw_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
