/* Copyright 2026 The lpcode Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef LPCODE_LPCODE_H_
#define LPCODE_LPCODE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LPC_API __declspec(dllexport)
#else
#define LPC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lpc_program lpc_program;
typedef struct lpc_store lpc_store;
typedef struct lpc_result lpc_result;

typedef enum lpc_status {
  LPC_OK = 0,
  LPC_FAILURE = 1,
  LPC_WF_VIOLATION = 2,
  LPC_LIMIT_EXHAUSTED = 3,
  LPC_MOVE_UNDERFLOW = 4,
  LPC_EXTRA_MOVES = 5,
  LPC_UNKNOWN_LOCATION = 6,
  LPC_UNSUPPORTED = 7,
  LPC_PARSE_ERROR = 8,
  LPC_IO_ERROR = 9,
  LPC_INVALID_ARGUMENT = 10,
  LPC_STRUCTURE_ERROR = 11,
  LPC_REJECTED = 12,
  LPC_INTERNAL_ERROR = 13
} lpc_status;

typedef struct lpc_limits {
  size_t max_depth;
  size_t max_steps;
  size_t max_unfold;
} lpc_limits;

LPC_API lpc_limits lpc_limits_default(void);

// Message for the last error on the calling thread; never NULL.
LPC_API const char* lpc_last_error(void);

LPC_API lpc_status lpc_program_parse(const char* text, size_t len, lpc_program** out);
LPC_API lpc_status lpc_program_load(const char* path, lpc_program** out);
LPC_API void lpc_program_free(lpc_program* program);

// Diagnostics, one per line, written to *report (free with lpc_string_free).
// Returns LPC_OK when there is no error diagnostic, LPC_WF_VIOLATION otherwise.
LPC_API lpc_status lpc_check(const lpc_program* program, const lpc_limits* limits,
                             char** report);

LPC_API lpc_store* lpc_store_new(void);
LPC_API void lpc_store_free(lpc_store* store);
// Bindings and loop residuals as a program listing.
LPC_API char* lpc_store_render(const lpc_store* store, const lpc_program* program);

// Asks for the next move for `var`; returns 0 and fills *move (a decimal
// numeral) on success, nonzero when no move is available.
typedef int (*lpc_move_fn)(void* user, const char* var, char* move, size_t cap);

// Executes `query` (e.g. "/query") against `store`, which must only ever be
// used with the same program. Moves come from `moves` (decimal numerals) or,
// when `interactive` is set, from the callback. A result is produced whenever
// the query is found; the return value is its status.
LPC_API lpc_status lpc_run(const lpc_program* program, lpc_store* store, const char* query,
                           const char* const* moves, size_t n_moves, lpc_move_fn interactive,
                           void* user, const lpc_limits* limits, lpc_result** out);

LPC_API lpc_status lpc_result_status(const lpc_result* result);
// Rendered evolved formula, or NULL unless the run succeeded.
LPC_API const char* lpc_result_binding(const lpc_result* result);
LPC_API const char* lpc_result_message(const lpc_result* result);
// Trace document rooted at the query, or NULL unless the run succeeded.
LPC_API const char* lpc_result_trace(const lpc_result* result);
LPC_API size_t lpc_result_prover_calls(const lpc_result* result);
LPC_API void lpc_result_free(lpc_result* result);

// LPC_OK on accept, LPC_REJECTED (reason in *reason), LPC_PARSE_ERROR.
LPC_API lpc_status lpc_verify_trace(const lpc_program* program, const char* trace,
                                    size_t len, char** reason);

LPC_API void lpc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif  // LPCODE_LPCODE_H_
