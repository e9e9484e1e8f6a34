#ifndef TFG_TFG_H
#define TFG_TFG_H

/*
 * C interface to the odometer full-group toolkit.
 *
 * Every value lives behind an opaque handle owned by the caller and released
 * with the matching *_free function. Functions return a tfg_status; on
 * failure the out-parameters are untouched and tfg_last_error() describes
 * the problem (per thread). Strings returned through char** are allocated
 * by the library and released with tfg_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(TFG_BUILDING_LIBRARY)
#define TFG_API __attribute__((visibility("default")))
#else
#define TFG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tfg_status {
  TFG_OK = 0,
  TFG_ERR_PARSE = 1,
  TFG_ERR_REPRESENTATION = 2,
  TFG_ERR_DEPTH = 3,
  TFG_ERR_PRECONDITION = 4,
  TFG_ERR_INVARIANCE = 5,
  TFG_ERR_NOT_SPATIALLY_CONSISTENT = 6,
  TFG_ERR_ORACLE_INCONSISTENCY = 7,
  TFG_ERR_RESOLUTION = 8,
  TFG_ERR_INVALID_ARGUMENT = 9,
  TFG_ERR_INTERNAL = 10
} tfg_status;

typedef enum tfg_format {
  TFG_FORMAT_TEXT = 0,
  TFG_FORMAT_JSON_LINES = 1
} tfg_format;

typedef struct tfg_clopen tfg_clopen;
typedef struct tfg_point tfg_point;
typedef struct tfg_element tfg_element;
typedef struct tfg_oracle tfg_oracle;
typedef struct tfg_boolean_map tfg_boolean_map;
typedef struct tfg_rng tfg_rng;

/* Errors and strings */
TFG_API const char* tfg_last_error(void);
/* 1-based line of the last parse error, 0 if none. */
TFG_API size_t tfg_last_error_line(void);
TFG_API const char* tfg_status_name(int status);
TFG_API void tfg_string_free(char* s);

/* Seeded generator; a seed fixes every object drawn from it. */
TFG_API int tfg_rng_create(uint64_t seed, tfg_rng** out);
TFG_API void tfg_rng_free(tfg_rng* rng);

/* Clopen sets. default_base <= 0 means the text must carry a base line. */
TFG_API int tfg_clopen_parse(const char* text, int default_base, tfg_clopen** out);
TFG_API int tfg_clopen_format(const tfg_clopen* a, int format, char** out);
TFG_API void tfg_clopen_free(tfg_clopen* a);
TFG_API int tfg_clopen_base(const tfg_clopen* a);
TFG_API int tfg_clopen_full(int base, tfg_clopen** out);
TFG_API int tfg_clopen_union(const tfg_clopen* a, const tfg_clopen* b, tfg_clopen** out);
TFG_API int tfg_clopen_intersection(const tfg_clopen* a, const tfg_clopen* b,
                                    tfg_clopen** out);
TFG_API int tfg_clopen_difference(const tfg_clopen* a, const tfg_clopen* b,
                                  tfg_clopen** out);
TFG_API int tfg_clopen_complement(const tfg_clopen* a, tfg_clopen** out);
TFG_API int tfg_clopen_is_subset(const tfg_clopen* a, const tfg_clopen* b, int* out);
TFG_API int tfg_clopen_equal(const tfg_clopen* a, const tfg_clopen* b, int* out);
/* Depth-k words inside a, one per line. */
TFG_API int tfg_clopen_refine(const tfg_clopen* a, size_t k, char** out);
/* Invariant measure as "<num>/<den>". */
TFG_API int tfg_clopen_measure(const tfg_clopen* a, int format, char** out);
TFG_API int tfg_clopen_random(int base, size_t max_depth, tfg_rng* rng, tfg_clopen** out);

/* Points and the odometer */
TFG_API int tfg_point_parse(const char* text, int default_base, tfg_point** out);
TFG_API int tfg_point_format(const tfg_point* x, int format, char** out);
TFG_API void tfg_point_free(tfg_point* x);
TFG_API int tfg_point_apply_power(const tfg_point* x, int64_t n, tfg_point** out);
TFG_API int tfg_point_rational(const tfg_point* x, int format, char** out);
/* *found is 1 and *n the offset when y = x + n; *found is 0 otherwise. */
TFG_API int tfg_same_orbit(const tfg_point* x, const tfg_point* y, int* found,
                           int64_t* n);
/* Word (digit string, LSB first) moved by sigma^n. */
TFG_API int tfg_cylinder_image(int base, const char* word, int64_t n, char** out);
TFG_API int tfg_point_random(int base, size_t max_preperiod, size_t max_period,
                             tfg_rng* rng, tfg_point** out);

/* Full-group elements */
TFG_API int tfg_element_parse(const char* text, int default_base, tfg_element** out);
TFG_API int tfg_element_format(const tfg_element* g, int format, char** out);
TFG_API void tfg_element_free(tfg_element* g);
TFG_API int tfg_element_base(const tfg_element* g);
TFG_API int tfg_element_shift(int base, int64_t n, tfg_element** out);
TFG_API int tfg_element_equal(const tfg_element* g, const tfg_element* h, int* out);
/* x -> g(h(x)) */
TFG_API int tfg_element_compose(const tfg_element* g, const tfg_element* h,
                                tfg_element** out);
TFG_API int tfg_element_invert(const tfg_element* g, tfg_element** out);
TFG_API int tfg_element_apply(const tfg_element* g, const tfg_point* x, tfg_point** out);
TFG_API int tfg_element_support(const tfg_element* g, tfg_clopen** out);
TFG_API int tfg_element_image(const tfg_element* g, const tfg_clopen* a, tfg_clopen** out);
TFG_API int tfg_element_is_involution(const tfg_element* g, int* out);
/* *order is 0 when no power up to limit is the identity. */
TFG_API int tfg_element_order_upto(const tfg_element* g, int limit, int* order);
TFG_API int tfg_element_restrict(const tfg_element* g, const tfg_clopen* v,
                                 tfg_element** out);
TFG_API int tfg_make_involution(const tfg_clopen* a, tfg_element** out);
/* Sections [pi0], [pi1], ... */
TFG_API int tfg_involutions_covering(const tfg_clopen* a, size_t depth, int format,
                                     char** out);
/* Expression text; *evaluated (optional) receives its value. */
TFG_API int tfg_express_supports(const tfg_clopen* a, int format, char** out,
                                 tfg_clopen** evaluated);
TFG_API int tfg_element_random(int base, size_t max_depth, tfg_rng* rng,
                               tfg_element** out);
TFG_API int tfg_involution_random(int base, size_t max_depth, tfg_rng* rng,
                                  tfg_element** out);

/* Commutants and the clopen-ness criterion */
TFG_API int tfg_in_gamma(const tfg_element* g, const tfg_clopen* v, int* out);
/* *witness is set (and must be freed) only when *in_commutant is 0. */
TFG_API int tfg_commutant_check(const tfg_element* g, const tfg_clopen* v, int format,
                                int* in_commutant, char** witness);
/* Factors are set only for members; either pointer may be NULL. */
TFG_API int tfg_in_r(const tfg_element* g, const tfg_clopen* v, int* member,
                     tfg_element** inside, tfg_element** outside);
TFG_API int tfg_criterion_decompose(const tfg_element* pi, const tfg_clopen* v,
                                    int format, char** out, tfg_element** h);
/* Conditions (i) and (ii) on every pair swap of depth <= max_depth. */
TFG_API int tfg_criterion_check(const tfg_element* h, const tfg_clopen* v,
                                size_t max_depth, int* holds);

/* Isomorphism oracles */
typedef int (*tfg_element_fn)(void* user, const tfg_element* in, tfg_element** out);

/* Reads an oracle description; `inner` files are resolved in `directory`. */
TFG_API int tfg_oracle_parse(const char* text, const char* directory, int default_base,
                             tfg_oracle** out);
/* Wraps caller functions; a nonzero return marks the call as failed. The
   user pointer must outlive the oracle. */
TFG_API int tfg_oracle_from_callbacks(int domain_base, int codomain_base,
                                      tfg_element_fn apply, tfg_element_fn inverse_apply,
                                      void* user, tfg_oracle** out);
TFG_API void tfg_oracle_free(tfg_oracle* o);
TFG_API int tfg_oracle_apply(const tfg_oracle* o, const tfg_element* g,
                             tfg_element** out);

/* Reconstruction */
TFG_API int tfg_lambda(const tfg_oracle* o, const tfg_clopen* v, size_t depth,
                       tfg_clopen** out);
TFG_API int tfg_reconstruct(const tfg_oracle* o, size_t depth, tfg_boolean_map** out);
TFG_API int tfg_boolean_map_parse(const char* text, int default_base,
                                  tfg_boolean_map** out);
TFG_API int tfg_boolean_map_format(const tfg_boolean_map* m, int format, char** out);
TFG_API void tfg_boolean_map_free(tfg_boolean_map* m);
TFG_API size_t tfg_boolean_map_depth(const tfg_boolean_map* m);

/* Checks report *ok and, when *ok is 0, a reason in *detail (may be NULL). */
TFG_API int tfg_verify_wpi(const tfg_oracle* o, const tfg_element* pi, size_t samples,
                           uint64_t seed, int* ok, char** detail);
TFG_API int tfg_verify_conjugacy(const tfg_oracle* o, const tfg_boolean_map* m,
                                 const tfg_element* const* tests, size_t count, int* ok,
                                 char** detail);
TFG_API int tfg_verify_orbit_equivalence(const tfg_oracle* o, const tfg_boolean_map* m,
                                         const tfg_point* const* points,
                                         const tfg_element* const* elements,
                                         size_t count, int* ok, char** detail);

#ifdef __cplusplus
}
#endif

#endif
