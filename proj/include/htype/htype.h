/* Copyright 2026 The htype Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the htype library. Objects are opaque handles created and destroyed
 * through this API. Every fallible call returns an htype_status; on failure the message
 * is available from htype_last_error_message() on the same thread. Strings returned
 * through char** are owned by the caller and released with htype_string_free(). */

#ifndef HTYPE_HTYPE_H
#define HTYPE_HTYPE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HTYPE_BUILDING)
#    define HTYPE_API __declspec(dllexport)
#  else
#    define HTYPE_API __declspec(dllimport)
#  endif
#else
#  define HTYPE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum htype_status {
  HTYPE_OK = 0,
  HTYPE_ERR_PRECONDITION = 2, /* input outside an operation's domain */
  HTYPE_ERR_VIOLATION = 3,    /* an inequality failed beyond its error bars */
  HTYPE_ERR_NUMERIC = 4,      /* non-finite sample, divergent tail, failed normalization */
  HTYPE_ERR_ARGUMENT = 5,     /* null pointer or bad handle */
  HTYPE_ERR_IO = 6,
  HTYPE_ERR_INTERNAL = 7
} htype_status;

typedef enum htype_method {
  HTYPE_METHOD_TENSOR_GRID = 0,
  HTYPE_METHOD_POLAR_GRID = 1,
  HTYPE_METHOD_MONTE_CARLO = 2
} htype_method;

typedef struct htype_spec {
  int method;              /* htype_method */
  long samples;
  int radial_nodes;
  int nodes;
  double truncation_radius;
  uint64_t seed;
  double target_rel_tol;
  int threads;             /* 0: all hardware threads */
  double outer_exponent;   /* 0: chosen from the field decay */
} htype_spec;

typedef struct htype_group htype_group;
typedef struct htype_field htype_field;
typedef struct htype_suite htype_suite;
typedef struct htype_search htype_search;

HTYPE_API const char* htype_version(void);
HTYPE_API const char* htype_last_error_message(void);
HTYPE_API const char* htype_status_name(htype_status status);
HTYPE_API void htype_string_free(char* s);
HTYPE_API void htype_spec_default(htype_spec* spec);

/* Groups. Coordinates of a point are (z_1..z_2n, w_1..w_m). */
HTYPE_API htype_status htype_group_create(int n, int m, htype_group** out);
HTYPE_API void htype_group_destroy(htype_group* g);
HTYPE_API htype_status htype_group_dims(const htype_group* g, int* n, int* m, int* Q);
/* Worst residual over skew-symmetry, orthogonality and anticommutation. */
HTYPE_API htype_status htype_group_residual(const htype_group* g, double* worst);
/* Generator k in 0..m-1, written row-major as 2n x 2n doubles. */
HTYPE_API htype_status htype_group_generator(const htype_group* g, int k, double* out);
HTYPE_API htype_status htype_group_multiply(const htype_group* g, const double* a, const double* b,
                                            double* out);
HTYPE_API htype_status htype_group_norm(const htype_group* g, const double* a, double* out);

/* Constants as CSV with columns name,value,context_range. */
HTYPE_API htype_status htype_constants_csv(int n, int m, double s, char** out);

/* Fields. kind and params:
 *   "U"        extremal function, no params
 *   "phi"      params[0] = rho
 *   "omega"    params[0] = j in 1..2n+m+1
 *   "cylinder" params[0] = rho, params[1] = b
 *   "feps"     params[0] = eps (unnormalized)
 *   "bump"     params[0] = width, params[1..] = center coordinates (optional)
 *   "jacobian" Cayley Jacobian, no params */
HTYPE_API htype_status htype_field_create(const htype_group* g, const char* kind, double s,
                                          const double* params, int nparams, htype_field** out);
HTYPE_API void htype_field_destroy(htype_field* f);
HTYPE_API htype_status htype_field_eval(const htype_field* f, const double* point, double* out);
HTYPE_API htype_status htype_field_name(const htype_field* f, char** out);

HTYPE_API htype_status htype_integrate(const htype_field* f, const htype_spec* spec, double* value,
                                       double* error);
HTYPE_API htype_status htype_dirichlet_form(const htype_field* f, double s, const htype_spec* spec,
                                            double* value, double* error);

/* Verification suites: "sobolev", "hardy", "hls", "logsob", "trace". */
HTYPE_API htype_status htype_suite_run(const htype_group* g, double s, const char* name,
                                       const htype_spec* spec, htype_suite** out);
HTYPE_API void htype_suite_destroy(htype_suite* r);
HTYPE_API htype_status htype_suite_rows(const htype_suite* r, int* count);
HTYPE_API htype_status htype_suite_violation(const htype_suite* r, int* violation);
/* CSV of several suites with a single header. */
HTYPE_API htype_status htype_suites_csv(const htype_suite* const* results, int count, char** out);
/* Writes report.json and one .dat file per suite into dir; returns the JSON text. */
HTYPE_API htype_status htype_report_write(const htype_suite* const* results, int count, int n, int m,
                                          double s, const htype_spec* spec, const char* dir,
                                          char** json_out);

/* Sharpness search. family: "a", "b", "c" or "rescale". p <= 0 minimizes the Sobolev
 * quotient, otherwise the weighted quotient with exponent p. */
HTYPE_API htype_status htype_search_run(const htype_group* g, double s, const char* family, double p,
                                        int budget, uint64_t search_seed, const htype_spec* spec,
                                        htype_search** out);
HTYPE_API void htype_search_destroy(htype_search* r);
HTYPE_API htype_status htype_search_best(const htype_search* r, double* value, double* error,
                                         double* sharp, int* violation);
HTYPE_API htype_status htype_search_theta(const htype_search* r, double* out, int capacity, int* dim);
HTYPE_API htype_status htype_search_csv(const htype_search* r, char** out);
HTYPE_API htype_status htype_search_json(const htype_search* r, char** out);

#ifdef __cplusplus
}
#endif

#endif /* HTYPE_HTYPE_H */
