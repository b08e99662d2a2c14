#ifndef CGT_H
#define CGT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define CGT_OK 0

#define CGT_ERR_USAGE 2

#define CGT_ERR_BUDGET 3

#define CGT_ERR_INTERNAL 4

#define CGT_ERR_NULL_POINTER 5

#define CGT_ERR_PANIC 6

/*
 A value does not fit the output type; use the string variant.
 */
#define CGT_ERR_OVERFLOW 7

#define CGT_MODE_DETERMINISTIC 0

#define CGT_MODE_RANDOMIZED 1

#define CGT_COMPLETENESS_EXACT 0

#define CGT_COMPLETENESS_EXACT_G 1

#define CGT_COMPLETENESS_LOWER_BOUND 2

/*
 A computed component group.
 */
typedef struct CgtDelta CgtDelta;

/*
 A catalog group.
 */
typedef struct CgtGroup CgtGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static string.
 */
const char *cgt_version(void);

/*
 Message for the last failed call on this thread; empty after success.
 Valid until the next call on this thread.
 */
const char *cgt_last_error(void);

/*
 # Safety
 `s` is null or was returned by this library and not yet freed.
 */
void cgt_string_free(char *s);

/*
 Builds a group from a spec such as `"Sp(6,2)"`.

 # Safety
 `spec` is a NUL-terminated string; `out` is writable.
 */
int32_t cgt_group_new(const char *spec, CgtGroup **out);

/*
 # Safety
 `g` is null or a handle from `cgt_group_new` not yet freed.
 */
void cgt_group_free(CgtGroup *g);

/*
 # Safety
 `g` is a live group handle; `out` is writable.
 */
int32_t cgt_group_order(const CgtGroup *g, uint64_t *out);

/*
 The order in decimal, for orders beyond 64 bits.

 # Safety
 `g` is a live group handle; `out` is writable.
 */
int32_t cgt_group_order_string(const CgtGroup *g, char **out);

/*
 Number of points acted on.

 # Safety
 `g` is a live group handle; `out` is writable.
 */
int32_t cgt_group_degree(const CgtGroup *g, uint64_t *out);

/*
 Component group of the involution class `label`. `samples` is used in
 randomized mode only.

 # Safety
 `g` is a live group handle; `label` is a NUL-terminated string; `out`
 is writable.
 */
int32_t cgt_delta_compute(const CgtGroup *g,
                          const char *label,
                          int32_t mode,
                          uint64_t samples,
                          uint64_t seed,
                          CgtDelta **out);

/*
 # Safety
 `d` is a live result handle; `out` is writable.
 */
int32_t cgt_delta_order(const CgtDelta *d, uint64_t *out);

/*
 Writes 1 if the component group is elementary abelian, else 0.

 # Safety
 `d` is a live result handle; `out` is writable.
 */
int32_t cgt_delta_is_elementary_abelian(const CgtDelta *d, int32_t *out);

/*
 Writes one of the `CGT_COMPLETENESS_*` values.

 # Safety
 `d` is a live result handle; `out` is writable.
 */
int32_t cgt_delta_completeness(const CgtDelta *d, int32_t *out);

/*
 # Safety
 `d` is null or a handle from `cgt_delta_compute` not yet freed.
 */
void cgt_delta_free(CgtDelta *d);

/*
 Order of the terminal component group of the class `label`.

 # Safety
 `g` is a live group handle; `label` is a NUL-terminated string; `out`
 is writable.
 */
int32_t cgt_delta_infinity_order(const CgtGroup *g,
                                 const char *label,
                                 int32_t mode,
                                 uint64_t samples,
                                 uint64_t seed,
                                 uint64_t *out);

/*
 The class graph in DOT format.

 # Safety
 `g` is a live group handle; `out` is writable.
 */
int32_t cgt_class_graph_dot(const CgtGroup *g,
                            int32_t mode,
                            uint64_t samples,
                            uint64_t seed,
                            char **out);

/*
 Decides binarity of the action on cosets of a TI-subgroup named as in
 the command line (`root:long`, `sylow:2`, ...). Writes 1 for binary and
 0 otherwise; a subgroup that is not TI is a usage error.

 # Safety
 `g` is a live group handle; `subgroup` is a NUL-terminated string;
 `out` is writable.
 */
int32_t cgt_binary_ti(const CgtGroup *g, const char *subgroup, int32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CGT_H */
