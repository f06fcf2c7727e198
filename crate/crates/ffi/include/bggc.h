#ifndef BGGC_H
#define BGGC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every exported call.
typedef enum BggcStatus {
  BGGC_STATUS_OK = 0,
  BGGC_STATUS_NULL_POINTER = 1,
  BGGC_STATUS_INVALID_ARGUMENT = 2,
  BGGC_STATUS_UNKNOWN_NAME = 3,
  BGGC_STATUS_DEGREE_TOO_SMALL = 4,
  BGGC_STATUS_NO_VALID_J = 5,
  BGGC_STATUS_ANTICOMMUTATIVITY_VIOLATION = 6,
  BGGC_STATUS_VALIDATION_FAILED = 7,
  BGGC_STATUS_INDEX_OUT_OF_RANGE = 8,
  BGGC_STATUS_VERIFICATION_FAILED = 9,
  BGGC_STATUS_PANIC = 10,
} BggcStatus;

// Opaque handle to a validated diagram and its output complex.
typedef struct BggcDiagram BggcDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds and validates a named diagram at degree cap `degree`.
//
// # Safety
// `name` must be a nul-terminated string and `out` a valid pointer.
enum BggcStatus bggc_named_diagram(const char *name, int64_t degree, struct BggcDiagram **out);

// Builds and validates rows `J`, `J+1` of the `Alt^{i,J}`-valued de Rham
// diagram in dimension `n`.
//
// # Safety
// `out` must be a valid pointer.
enum BggcStatus bggc_altij_diagram(size_t n, size_t j, int64_t degree, struct BggcDiagram **out);

// Releases a diagram. Null is ignored.
//
// # Safety
// `d` must come from this library and not be used afterwards.
void bggc_diagram_free(struct BggcDiagram *d);

// The index `J` at which the two rows are joined.
//
// # Safety
// `d` must be a live handle and `out` a valid pointer.
enum BggcStatus bggc_diagram_j(const struct BggcDiagram *d, size_t *out);

// Number of spaces in the output complex.
//
// # Safety
// `d` must be a live handle and `out` a valid pointer.
enum BggcStatus bggc_output_len(const struct BggcDiagram *d, size_t *out);

// Dimension of output space `index` and of its cohomology.
//
// # Safety
// `d` must be a live handle; `dim` and `cohomology` valid pointers.
enum BggcStatus bggc_output_dims(const struct BggcDiagram *d,
                                 size_t index,
                                 size_t *dim,
                                 size_t *cohomology);

// Output operator `index` in the bases of its spaces, as JSON with `"p/q"`
// entries. Free the string with `bggc_string_free`.
//
// # Safety
// `d` must be a live handle and `out` a valid pointer.
enum BggcStatus bggc_operator_json(const struct BggcDiagram *d, size_t index, char **out);

// Runs a verification suite over every valid named diagram and writes the
// JSON report. Returns `VerificationFailed` if any case fails; the report
// is written either way.
//
// # Safety
// `suite` must be a nul-terminated string and `out` a valid pointer.
enum BggcStatus bggc_verify_json(const char *suite, int64_t degree, size_t max_dim, char **out);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void bggc_string_free(char *s);

// Copy of the calling thread's last error message, or null if none. Free
// it with `bggc_string_free`.
char *bggc_last_error(void);

// Static description of a status code.
const char *bggc_status_name(enum BggcStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BGGC_H */
