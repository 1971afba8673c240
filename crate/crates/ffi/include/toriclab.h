#ifndef TORICLAB_H
#define TORICLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum TlStatus {
  TL_STATUS_OK = 0,
  TL_STATUS_NULL_POINTER = 1,
  TL_STATUS_INVALID_UTF8 = 2,
  TL_STATUS_PARSE = 3,
  /*
   Input parsed but failed validation or certification.
   */
  TL_STATUS_INVALID = 4,
  TL_STATUS_OUT_OF_RANGE = 5,
  /*
   An integer result does not fit in 64 bits.
   */
  TL_STATUS_OVERFLOW = 6,
  TL_STATUS_PANIC = 7,
} TlStatus;

/*
 Opaque handle to a certified unimodular complete fan.
 */
typedef struct TlFan TlFan;

/*
 Opaque handle to a simple 3-polytope.
 */
typedef struct TlPolytope TlPolytope;

/*
 Wall `{i1, i2}` with apexes `i` (positive side) and `i'`, and
 `λ(i) + λ(i') = a1 λ(i1) + a2 λ(i2)`.
 */
typedef struct TlWall {
  size_t i1;
  size_t i2;
  size_t apex;
  size_t apex_opposite;
  int64_t a1;
  int64_t a2;
  int64_t curvature;
  /*
   1 convex, 0 flat, -1 concave.
   */
  int32_t convexity;
} TlWall;

/*
 Obstruction witness: a wall of positive curvature, extremal in the effective cone,
 and a vertex of the dual polytope's face of the given degree.
 */
typedef struct TlWitness {
  size_t i1;
  size_t i2;
  int64_t a1;
  int64_t a2;
  int64_t curvature;
  size_t vertex;
  size_t degree;
} TlWitness;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *tl_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void tl_string_free(char *s);

/*
 Seed used by the command line tool when `TORICLAB_SEED` is unset.
 */
uint64_t tl_default_seed(void);

/*
 Parses a POLY3 document.

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TlStatus tl_polytope_parse(const char *text, struct TlPolytope **out);

/*
 # Safety
 `p` must come from [`tl_polytope_parse`] and not have been freed. Null is ignored.
 */
void tl_polytope_free(struct TlPolytope *p);

/*
 Writes `(vertices, edges, facets)` to `out[0..3]`.

 # Safety
 `p` must be a live handle and `out` must point to three `size_t`.
 */
enum TlStatus tl_polytope_f_vector(const struct TlPolytope *p, size_t *out);

/*
 # Safety
 `p` must be a live handle and `out` valid.
 */
enum TlStatus tl_polytope_is_fullerene(const struct TlPolytope *p, bool *out);

/*
 Proper 4-coloring of the facets, written as 0..=3 (colors a..d) to `out[0..len]`.
 `len` must equal the number of facets.

 # Safety
 `p` must be a live handle and `out` must point to `len` bytes.
 */
enum TlStatus tl_polytope_four_color(const struct TlPolytope *p, uint8_t *out, size_t len);

/*
 Parses a FAN3 document and certifies it as unimodular and complete; `seed` drives
 the completeness sampler.

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TlStatus tl_fan_parse(const char *text, uint64_t seed, struct TlFan **out);

/*
 # Safety
 `f` must come from [`tl_fan_parse`] and not have been freed. Null is ignored.
 */
void tl_fan_free(struct TlFan *f);

/*
 Number of rays, or 0 for null.

 # Safety
 `f` must be null or a live handle.
 */
size_t tl_fan_ray_count(const struct TlFan *f);

/*
 Number of walls, or 0 for null.

 # Safety
 `f` must be null or a live handle.
 */
size_t tl_fan_wall_count(const struct TlFan *f);

/*
 Wall number `index`, in lexicographic order of `(i1, i2)`.

 # Safety
 `f` must be a live handle and `out` valid.
 */
enum TlStatus tl_fan_wall(const struct TlFan *f, size_t index, struct TlWall *out);

/*
 Sum of the wall curvatures.

 # Safety
 `f` must be a live handle and `out` valid.
 */
enum TlStatus tl_fan_gauss_bonnet(const struct TlFan *f, int64_t *out);

/*
 The Chern number `c1 c2` from the intersection table.

 # Safety
 `f` must be a live handle and `out` valid.
 */
enum TlStatus tl_fan_chern_c1c2(const struct TlFan *f, int64_t *out);

/*
 Volume at the support parameters `support` (comma- or space-separated rationals),
 or at the fan's own support line when `support` is null. Written as `p/q` or an
 integer.

 # Safety
 `f` must be a live handle, `support` null or a NUL-terminated string, `out` valid.
 */
enum TlStatus tl_fan_volume(const struct TlFan *f, const char *support, char **out);

/*
 The obstruction witness of the fan.

 # Safety
 `f` must be a live handle and `out` valid.
 */
enum TlStatus tl_fan_witness(const struct TlFan *f, struct TlWitness *out);

/*
 JSON report of a POLY3 document, identical to `toriclab polytope report --json`.
 The report is written even when the status is `Parse` or `Invalid`.

 # Safety
 `text` must be a NUL-terminated string and `out` valid.
 */
enum TlStatus tl_polytope_report_json(const char *text, char **out);

/*
 JSON report of a FAN3 document, identical to `toriclab fan report --json`. The report
 is written even when the status is `Parse` or `Invalid`.

 # Safety
 `text` must be a NUL-terminated string and `out` valid.
 */
enum TlStatus tl_fan_report_json(const char *text, uint64_t seed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORICLAB_H */
