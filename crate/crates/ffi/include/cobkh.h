#ifndef COBKH_H
#define COBKH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CobkhCoefficients {
  COBKH_COEFFICIENTS_Z = 0,
  COBKH_COEFFICIENTS_F2 = 1,
} CobkhCoefficients;

typedef enum CobkhStatus {
  COBKH_STATUS_OK = 0,
  COBKH_STATUS_NULL_ARGUMENT = 1,
  COBKH_STATUS_INVALID_UTF8 = 2,
  COBKH_STATUS_PARSE = 3,
  COBKH_STATUS_UNKNOWN_BUILTIN = 4,
  COBKH_STATUS_OPEN_TANGLE = 5,
  COBKH_STATUS_UNKNOWN_CHECK = 6,
  COBKH_STATUS_CHECKS_FAILED = 7,
  COBKH_STATUS_OUT_OF_RANGE = 8,
  COBKH_STATUS_INTERNAL = 9,
} CobkhStatus;

/**
 * A Khovanov complex over the dotted cobordism category.
 */
typedef struct CobkhComplex CobkhComplex;

/**
 * A parsed (possibly singular) tangle diagram.
 */
typedef struct CobkhDiagram CobkhDiagram;

/**
 * A bigraded homology table, groups sorted by `(h, q)`.
 */
typedef struct CobkhHomology CobkhHomology;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into this library from the same thread.
 */
const char *cobkh_last_error(void);

/**
 * Library version, statically allocated.
 */
const char *cobkh_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void cobkh_string_free(char *s);

/**
 * Parses a diagram in the JSON exchange format.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum CobkhStatus cobkh_diagram_from_json(const char *json, struct CobkhDiagram **out);

/**
 * One of the builtin diagrams, by name.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum CobkhStatus cobkh_diagram_builtin(const char *name, struct CobkhDiagram **out);

/**
 * # Safety
 * `d` must be a valid handle; `boundary` and `crossings` must be writable.
 */
enum CobkhStatus cobkh_diagram_info(const struct CobkhDiagram *d,
                                    uint32_t *boundary,
                                    size_t *crossings);

/**
 * # Safety
 * `d` must be null or a handle from this library, freed once.
 */
void cobkh_diagram_free(struct CobkhDiagram *d);

/**
 * The Khovanov complex of a diagram; with `simplify`, delooped and with
 * every isomorphism cancelled.
 *
 * # Safety
 * `d` must be a valid handle; `out` must be writable.
 */
enum CobkhStatus cobkh_complex_new(const struct CobkhDiagram *d,
                                   bool simplify_first,
                                   struct CobkhComplex **out);

/**
 * Lowest and highest homological degree; both 0 for the zero complex.
 *
 * # Safety
 * `c` must be a valid handle; `lo` and `hi` must be writable.
 */
enum CobkhStatus cobkh_complex_degrees(const struct CobkhComplex *c, int32_t *lo, int32_t *hi);

/**
 * Number of summands in homological degree `n`.
 *
 * # Safety
 * `c` must be a valid handle; `out` must be writable.
 */
enum CobkhStatus cobkh_complex_rank(const struct CobkhComplex *c, int32_t n, size_t *out);

/**
 * The complex as JSON; free the string with [`cobkh_string_free`].
 *
 * # Safety
 * `c` must be a valid handle; `out` must be writable.
 */
enum CobkhStatus cobkh_complex_to_json(const struct CobkhComplex *c, char **out);

/**
 * # Safety
 * `c` must be null or a handle from this library, freed once.
 */
void cobkh_complex_free(struct CobkhComplex *c);

/**
 * Khovanov homology of a closed diagram.
 *
 * # Safety
 * `d` must be a valid handle; `out` must be writable.
 */
enum CobkhStatus cobkh_homology(const struct CobkhDiagram *d,
                                enum CobkhCoefficients coeff,
                                bool simplify_first,
                                struct CobkhHomology **out);

/**
 * Number of nonzero groups.
 *
 * # Safety
 * `h` must be a valid handle; `out` must be writable.
 */
enum CobkhStatus cobkh_homology_len(const struct CobkhHomology *h, size_t *out);

/**
 * The `i`-th nonzero group: bidegree, free rank and number of torsion
 * summands. Torsion orders come from [`cobkh_homology_torsion`].
 *
 * # Safety
 * `h` must be a valid handle; all outputs must be writable.
 */
enum CobkhStatus cobkh_homology_group(const struct CobkhHomology *h,
                                      size_t i,
                                      int32_t *hdeg,
                                      int32_t *qdeg,
                                      size_t *rank,
                                      size_t *torsion_len);

/**
 * Order of the `j`-th torsion summand of the `i`-th group.
 *
 * # Safety
 * `h` must be a valid handle; `out` must be writable.
 */
enum CobkhStatus cobkh_homology_torsion(const struct CobkhHomology *h,
                                        size_t i,
                                        size_t j,
                                        uint64_t *out);

/**
 * `[{h, q, rank, torsion}]`; free the string with [`cobkh_string_free`].
 *
 * # Safety
 * `h` must be a valid handle; `out` must be writable.
 */
enum CobkhStatus cobkh_homology_to_json(const struct CobkhHomology *h, char **out);

/**
 * # Safety
 * `h` must be null or a handle from this library, freed once.
 */
void cobkh_homology_free(struct CobkhHomology *h);

/**
 * Runs the checks matching `filter` (a name or glob; null for all) and
 * writes the JSON report. Returns `COBKH_STATUS_CHECKS_FAILED` when any
 * check fails; the report is written either way.
 *
 * # Safety
 * `filter` must be null or a nul-terminated string; `report` must be
 * writable.
 */
enum CobkhStatus cobkh_verify(const char *filter, char **report);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* COBKH_H */
