/* mcform -- exact Maurer-Cartan / Koszul computations, C API.
 *
 * The library core is C++; this header is the supported binary surface.
 * All objects are opaque handles, all functions return status codes:
 *
 *   MCFORM_OK          0   success
 *   MCFORM_EMATH       1   the mathematics said no (not a coboundary,
 *                          not stabilized, not associative, ...)
 *   MCFORM_EINPUT      2   malformed input or bad usage
 *
 * Strings returned through handles stay owned by the handle and live
 * until the handle is freed.  Reports are canonical JSON: byte-identical
 * for identical inputs.
 */
#ifndef MCFORM_H
#define MCFORM_H

#ifdef __cplusplus
extern "C" {
#endif

#define MCFORM_OK 0
#define MCFORM_EMATH 1
#define MCFORM_EINPUT 2

typedef struct mcform_problem mcform_problem;
typedef struct mcform_result mcform_result;

typedef struct mcform_options {
  int trunc;                /* 0: use the problem file's truncation order */
  int window;               /* 0: automatic stabilisation window margin */
  int genus;                /* 0: infer from the group order */
  const char* replay_json;  /* NULL, or a prior normal-form report to replay */
  const char* builtin;      /* NULL, or builtin algebra name */
  int builtin_param;
  const char* element;      /* NULL, or eigensplit element, e.g. "h" */
} mcform_options;

/* Fills opts with defaults (all zero / NULL). */
void mcform_options_init(mcform_options* opts);

/* Parses a problem file.  On failure returns MCFORM_EINPUT and, when
 * errmsg is non-NULL, stores a malloc'd diagnostic the caller frees with
 * mcform_string_free. */
int mcform_problem_parse(const char* text, mcform_problem** out, char** errmsg);
void mcform_problem_free(mcform_problem* p);

/* Runs one command (mc-check | hh | invariant-hh | twisted-hh | jacobian |
 * exactness | classify-cubic | normal-form | qh-split | semidirect-check).
 * `problem` may be NULL for commands operating on builtins.  A result
 * handle is produced even on failure, carrying the diagnostic report.
 * The return value is the exit taxonomy above. */
int mcform_run(const char* command, const mcform_problem* problem,
               const mcform_options* opts, mcform_result** out);

/* The canonical JSON report (valid until the result is freed). */
const char* mcform_result_report(const mcform_result* r);
/* The error message, or "" when the run succeeded. */
const char* mcform_result_error(const mcform_result* r);
void mcform_result_free(mcform_result* r);

void mcform_string_free(char* s);
const char* mcform_version(void);

#ifdef __cplusplus
}
#endif

#endif /* MCFORM_H */
