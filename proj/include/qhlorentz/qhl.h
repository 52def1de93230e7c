/* qhlorentz -- exact symbolic engine for the 3D Lorentz metric family
 *   g = dx^2 + dh dz + C z^2 dh^2 + D z dx dh
 * (matrix convention [[1, Dz, 0], [Dz, Cz^2, 1], [0, 1, 0]]): curvature,
 * Killing-field solving over polynomial-exponential ansatz spaces, and Lie
 * algebra classification, all over exact rationals.
 *
 * C API: opaque handles plus status codes. Every function returning a
 * qhl_status leaves a human-readable message in qhl_last_error() on failure.
 * Strings returned through char** are heap-allocated; release them with
 * qhl_string_free(). Handles are released with their matching *_free().
 */

#ifndef QHLORENTZ_QHL_H
#define QHLORENTZ_QHL_H

#include <stddef.h>

#ifdef _WIN32
#define QHL_API __declspec(dllexport)
#else
#define QHL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qhl_status {
  QHL_OK = 0,
  QHL_ERR_PARSE = 1,
  QHL_ERR_DIVISION_BY_ZERO = 2,
  QHL_ERR_UNKNOWN_VARIABLE = 3,
  QHL_ERR_EVALUATION_POLE = 4,
  QHL_ERR_NONLINEAR_SYSTEM = 5,
  QHL_ERR_SINGULAR_METRIC = 6,
  QHL_ERR_FLAT_METRIC = 7,
  QHL_ERR_UNSUPPORTED = 8,
  QHL_ERR_NOT_AN_ALGEBRA = 9,
  QHL_ERR_WRONG_CASE = 10,
  QHL_ERR_PDE_MISMATCH = 11,
  QHL_ERR_IRRATIONAL_DENSITY = 12,
  QHL_ERR_INVALID_ARGUMENT = 13,
  QHL_ERR_VERIFY_FAILED = 14,
  QHL_ERR_INTERNAL = 15
} qhl_status;

typedef struct qhl_ring qhl_ring;   /* symbol registry: coordinates x,h,z (+ C,D, generators) */
typedef struct qhl_expr qhl_expr;   /* exact polynomial / rational function */
typedef struct qhl_metric qhl_metric;

QHL_API const char* qhl_version(void);
QHL_API const char* qhl_status_name(qhl_status status);
/* Thread-local message describing the most recent failure. */
QHL_API const char* qhl_last_error(void);
QHL_API void qhl_string_free(char* s);

/* ----- symbol registries and expressions ------------------------------- */

/* Coordinates x,h,z; with_parameters != 0 also registers C and D. */
QHL_API qhl_status qhl_ring_create(int with_parameters, qhl_ring** out);
/* Adjoins the formal generator name = exp(rate * direction); rate is parsed
 * over the ring and must be a polynomial in the parameters. */
QHL_API qhl_status qhl_ring_add_exp_generator(qhl_ring* ring, const char* name,
                                              const char* direction, const char* rate,
                                              qhl_ring** out);
QHL_API void qhl_ring_free(qhl_ring* ring);

QHL_API qhl_status qhl_expr_parse(const qhl_ring* ring, const char* text, qhl_expr** out);
QHL_API qhl_status qhl_expr_print(const qhl_expr* e, char** out);
/* op: '+', '-', '*', '/' */
QHL_API qhl_status qhl_expr_arith(const qhl_expr* a, const qhl_expr* b, char op, qhl_expr** out);
QHL_API qhl_status qhl_expr_differentiate(const qhl_expr* e, const char* symbol, qhl_expr** out);
/* Simultaneous substitution of n (symbol, value-text) pairs. */
QHL_API qhl_status qhl_expr_substitute(const qhl_expr* e, const char* const* symbols,
                                       const char* const* values, size_t n, qhl_expr** out);
QHL_API int qhl_expr_is_zero(const qhl_expr* e);
QHL_API int qhl_expr_equal(const qhl_expr* a, const qhl_expr* b);
QHL_API void qhl_expr_free(qhl_expr* e);

/* ----- metrics ---------------------------------------------------------- */

/* C/D are exact rationals ("2", "-3/4") or "sym". adjoin_exp != 0 attaches
 * the generator E = exp(-D x) (invalid when D is exactly 0). */
QHL_API qhl_status qhl_metric_family(const char* c, const char* d, int adjoin_exp,
                                     qhl_metric** out);
QHL_API qhl_status qhl_metric_entry(const qhl_metric* g, int i, int j, char** out);
QHL_API void qhl_metric_free(qhl_metric* g);

/* ----- reports ----------------------------------------------------------
 * Each report renders as canonical JSON (as_json != 0) or plain text. The
 * C/D arguments accept exact rationals or "sym" as above. */

QHL_API qhl_status qhl_invert_report(const char* c, const char* d, int as_json, char** out);
QHL_API qhl_status qhl_christoffel_report(const char* c, const char* d, int as_json, char** out);
QHL_API qhl_status qhl_curvature_report(const char* c, const char* d, int as_json, char** out);
/* Killing solve over the ansatz (degree, optionally with E = exp(-D x)).
 * Symbolic parameters produce the generic basis plus the case tree. */
QHL_API qhl_status qhl_killing_report(const char* c, const char* d, int degree, int adjoin_exp,
                                      int as_json, char** out);
/* Structure constants, fingerprint and catalog name of the solved algebra. */
QHL_API qhl_status qhl_algebra_report(const char* c, const char* d, int degree, int adjoin_exp,
                                      int as_json, char** out);
/* Case report for the family at exact (C, D), or the case tree when "sym". */
QHL_API qhl_status qhl_classify_report(const char* c, const char* d, int as_json, char** out);
/* Full reference suite; returns QHL_OK when every item passes, else
 * QHL_ERR_VERIFY_FAILED with the report still written to *out. */
QHL_API qhl_status qhl_verify_paper(int as_json, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QHLORENTZ_QHL_H */
