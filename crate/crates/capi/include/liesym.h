#ifndef LIESYM_H
#define LIESYM_H

/* This header is generated by cbindgen from liesym-capi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes mirroring the CLI exit-code contract.
typedef enum LiesymStatus {
  LIESYM_STATUS_OK = 0,
  LIESYM_STATUS_DOMAIN_ERROR = 2,
  LIESYM_STATUS_INPUT_ERROR = 3,
} LiesymStatus;

// Opaque algebra handle.
typedef struct LiesymAlgebra LiesymAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string.
const char *liesym_version(void);

// Message describing the most recent failure on this thread.
const char *liesym_last_error(void);

// Frees a string returned by this library.
//
// # Safety
// `s` must have been returned by a liesym call (or be NULL).
void liesym_string_free(char *s);

// Parses an algebra file (JSON) into a handle; NULL on failure.
//
// # Safety
// `json` must be a valid NUL-terminated string.
struct LiesymAlgebra *liesym_algebra_from_json(const char *json);

// Loads a catalog entry (e.g. "n23", "h1", "abelian:3") into a handle;
// NULL on failure.
//
// # Safety
// `name` must be a valid NUL-terminated string.
struct LiesymAlgebra *liesym_algebra_from_catalog(const char *name);

// # Safety
// `alg` must come from a liesym constructor (or be NULL).
void liesym_algebra_free(struct LiesymAlgebra *alg);

// Dimension of the algebra; −1 on NULL.
//
// # Safety
// `alg` must be a valid handle or NULL.
int32_t liesym_algebra_dim(const struct LiesymAlgebra *alg);

// Serializes the algebra back to its JSON file format.
//
// # Safety
// `alg` must be a valid handle; `out_json` a valid pointer.
enum LiesymStatus liesym_algebra_to_json(const struct LiesymAlgebra *alg, char **out_json);

// Structural report: central series, growth degree, optional weighted
// basis ("X1:1,X2:1,...") and grading ("1,1,2,...").
//
// # Safety
// `alg` must be a valid handle; string arguments NULL or NUL-terminated;
// `out_json` a valid pointer.
enum LiesymStatus liesym_analyze(const struct LiesymAlgebra *alg,
                                 const char *weights,
                                 const char *grading,
                                 char **out_json);

// Validates a commuting system given as newline-separated operator
// expressions; optional grading and derivation (catalog:NAME).
//
// # Safety
// As for [`liesym_analyze`]; `ops` must be NUL-terminated.
enum LiesymStatus liesym_check_system(const struct LiesymAlgebra *alg,
                                      const char *ops,
                                      const char *grading,
                                      const char *derivation,
                                      char **out_json);

// Contracts the algebra along a weighted basis ("EXPR:WEIGHT,...", or the
// catalog entry's basis when NULL).
//
// # Safety
// As for [`liesym_analyze`].
enum LiesymStatus liesym_contract(const struct LiesymAlgebra *alg,
                                  const char *weights,
                                  char **out_json);

// Runs any CLI command from a JSON argv array (without the program name),
// e.g. ["spectrum","plancherel","--op","-(X1^2)","--f","exp(-lambda)"].
// The report is returned instead of printed; `--out`/`--points` files are
// still written.
//
// # Safety
// `argv_json` must be NUL-terminated; `out_json` a valid pointer.
enum LiesymStatus liesym_run(const char *argv_json, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIESYM_H */
