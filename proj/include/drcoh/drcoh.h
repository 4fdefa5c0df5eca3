#ifndef DRCOH_DRCOH_H
#define DRCOH_DRCOH_H

/* C interface to the de Rham cohomology engine.
 *
 * Every entry point returns a drcoh_status. On failure the result handle is
 * left untouched and drcoh_last_error() describes the problem (the message
 * is thread-local and valid until the next call on the same thread).
 *
 * Variable lists are comma separated ("x,y,z"). Polynomials use the
 * grammar of integers or fractions, declared names, + - * ^ and
 * parentheses. */

#include <stddef.h>

#if defined(__GNUC__)
#define DRCOH_API __attribute__((visibility("default")))
#else
#define DRCOH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum drcoh_status {
  DRCOH_OK = 0,
  DRCOH_ERR_PARSE = 1,    /* malformed input; the message carries the position */
  DRCOH_ERR_MATH = 2,     /* input outside the supported cases */
  DRCOH_ERR_LIMIT = 3,    /* a resource cap was hit; the message names the stage */
  DRCOH_ERR_ARG = 4,      /* null pointer or invalid option */
  DRCOH_ERR_IO = 5,       /* workspace or table files */
  DRCOH_ERR_INTERNAL = 6
} drcoh_status;

typedef struct drcoh_options drcoh_options;
typedef struct drcoh_result drcoh_result;

DRCOH_API const char* drcoh_last_error(void);
DRCOH_API const char* drcoh_status_name(drcoh_status s);

DRCOH_API drcoh_options* drcoh_options_new(void);
DRCOH_API void drcoh_options_free(drcoh_options* o);
DRCOH_API drcoh_status drcoh_options_set_max_gb_steps(drcoh_options* o, long steps);
DRCOH_API drcoh_status drcoh_options_set_max_level(drcoh_options* o, int level);
DRCOH_API drcoh_status drcoh_options_set_parallel(drcoh_options* o, int enabled);
/* Directory for cached chart tables; NULL or "" disables the cache. */
DRCOH_API drcoh_status drcoh_options_set_workspace(drcoh_options* o, const char* dir);
/* Directory receiving one chart table per piece of the main cover. */
DRCOH_API drcoh_status drcoh_options_set_table_dir(drcoh_options* o, const char* dir);

/* Complement of Var(polys) in affine n-space (n = number of vars). */
DRCOH_API drcoh_status drcoh_affine(const drcoh_options* o, const char* vars, const char* const* polys, size_t npolys,
                          drcoh_result** out);
/* Complement of Var(polys) in projective space; vars are the n+1
 * homogeneous coordinates and the polys are homogeneous. */
DRCOH_API drcoh_status drcoh_open(const drcoh_options* o, const char* vars, const char* const* polys, size_t npolys,
                        drcoh_result** out);
/* The closed set Var(polys) in projective space. */
DRCOH_API drcoh_status drcoh_closed(const drcoh_options* o, const char* vars, const char* const* polys, size_t npolys,
                          drcoh_result** out);
/* Compactly supported cohomology of Var(polys) in affine space. */
DRCOH_API drcoh_status drcoh_compact(const drcoh_options* o, const char* vars, const char* const* polys, size_t npolys,
                           drcoh_result** out);
/* Var(f) minus Var(f, g) in projective space. Var(f) must be smooth; the
 * caller certifies this with smooth_certified != 0. */
DRCOH_API drcoh_status drcoh_locally_closed(const drcoh_options* o, const char* vars, const char* f, const char* g,
                                  int smooth_certified, drcoh_result** out);
/* Open set as in drcoh_open plus the multiplication table. */
DRCOH_API drcoh_status drcoh_cup(const drcoh_options* o, const char* vars, const char* const* polys, size_t npolys,
                       drcoh_result** out);
/* Smooth complete toric surface given by rays "a,b;c,d;..." in
 * counterclockwise order, minus the divisor of a Laurent polynomial in the
 * two torus variables with one twist per ray ("0,0,0,1"). ray_names,
 * torus_vars, laurent and twist may be NULL (no divisor). */
DRCOH_API drcoh_status drcoh_toric(const drcoh_options* o, const char* rays, const char* ray_names, const char* torus_vars,
                         const char* laurent, const char* twist, drcoh_result** out);

DRCOH_API void drcoh_result_free(drcoh_result* r);
/* Reported dimensions, degree 0 upwards. */
DRCOH_API size_t drcoh_result_degree_count(const drcoh_result* r);
DRCOH_API size_t drcoh_result_dim(const drcoh_result* r, size_t degree);
/* Plain-text report; owned by the result. */
DRCOH_API const char* drcoh_result_report(const drcoh_result* r);
/* Number of chart tables written to the table directory. */
DRCOH_API size_t drcoh_result_tables_written(const drcoh_result* r);

#ifdef __cplusplus
}
#endif

#endif
