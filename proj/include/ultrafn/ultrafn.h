/* C interface to the ultrafunction library.
 *
 * Every call returns a uf_status; on failure uf_last_error() describes the
 * problem (thread-local, valid until the next failing call on that thread).
 * Strings handed out through char** are owned by the caller and released
 * with uf_string_free. Value vectors are indexed by the context's point set
 * in ascending order; lengths are checked against uf_context_dimension. */
#ifndef ULTRAFN_H
#define ULTRAFN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define UF_API __declspec(dllexport)
#else
#define UF_API __attribute__((visibility("default")))
#endif

typedef struct uf_context uf_context;

typedef enum uf_status {
  UF_OK = 0,
  UF_ERR_CONFIG = 1,
  UF_ERR_DOMAIN = 2,
  UF_ERR_ILL_CONDITIONED = 3,
  UF_ERR_DEPENDENCY = 4,
  UF_ERR_SELECTION = 5,
  UF_ERR_NOT_DIFFERENTIABLE = 6,
  UF_ERR_REPRESENTATIVE = 7,
  UF_ERR_ORDER = 8,
  UF_ERR_CONTEXT_MISMATCH = 9,
  UF_ERR_LIFT = 10,
  UF_ERR_IO = 11,
  UF_ERR_INVALID_ARGUMENT = 12,
  UF_ERR_INTERNAL = 13
} uf_status;

UF_API const char* uf_last_error(void);
UF_API const char* uf_status_name(uf_status status);
UF_API void uf_string_free(char* s);

/* Builds a context from a run-config JSON document. */
UF_API uf_status uf_context_create(const char* config_json, uf_context** out);
/* Default run config: beta 4, degree 5, knots -3..3, degrees 2..5, anchor 0. */
UF_API uf_status uf_context_create_default(uf_context** out);
UF_API void uf_context_destroy(uf_context* ctx);

UF_API size_t uf_context_dimension(const uf_context* ctx);
UF_API double uf_context_beta(const uf_context* ctx);
/* Output directory named by the config; owned by the context. */
UF_API const char* uf_context_output_dir(const uf_context* ctx);
UF_API uf_status uf_context_points(const uf_context* ctx, double* out, size_t n);

UF_API uf_status uf_space_report(const uf_context* ctx, char** json_out);
UF_API uf_status uf_sigma_report(const uf_context* ctx, char** json_out);
/* Every sigma_a sampled on a uniform grid: columns x, sigma_a(x), ... */
UF_API uf_status uf_sigma_csv(const uf_context* ctx, size_t grid,
                              char** csv_out);
/* delta_q sampled on a uniform grid of [-beta, beta] as CSV. */
UF_API uf_status uf_delta_csv(const uf_context* ctx, double q, size_t grid,
                              char** csv_out);

/* Descriptor JSON: {"kind", "at", "order", "representative", "support", ...} */
UF_API uf_status uf_embed(const uf_context* ctx, const char* descriptor_json,
                          double* values, size_t n, double* leakage);
UF_API uf_status uf_embed_report(const uf_context* ctx,
                                 const char* descriptor_json, char** json_out);
UF_API uf_status uf_mul_report(const uf_context* ctx, const char* left_json,
                               const char* right_json, char** json_out);
/* Pairing against interior bump 0, 1 or 2. */
UF_API uf_status uf_pair(const uf_context* ctx, const char* descriptor_json,
                         size_t bump_index, double* value,
                         size_t* warning_count);
UF_API uf_status uf_pair_report(const uf_context* ctx,
                                const char* descriptor_json, size_t bump_index,
                                char** json_out);

/* Newline-separated suite names that `name` expands to ("all" gives the
 * configured list, or every suite when the config names none). */
UF_API uf_status uf_suite_plan(const uf_context* ctx, const char* name,
                               char** names_out);
UF_API uf_status uf_run_suite(const uf_context* ctx, const char* name,
                              uint64_t seed, char** json_out, int* passed);

/* Operations on value vectors of length n = uf_context_dimension. */
UF_API uf_status uf_derivative(const uf_context* ctx, const double* u,
                               double* out, size_t n, int times);
UF_API uf_status uf_multiply(const uf_context* ctx, const double* u,
                             const double* v, double* out, size_t n);
UF_API uf_status uf_scalar_product(const uf_context* ctx, const double* u,
                                   const double* v, size_t n, double* out);
UF_API uf_status uf_integral(const uf_context* ctx, const double* u, size_t n,
                             double* out);
UF_API uf_status uf_boundary_bracket(const uf_context* ctx, const double* u,
                                     const double* v, size_t n, double* out);
/* CSV of the point values, and of the extension sampled on a uniform grid. */
UF_API uf_status uf_values_csv(const uf_context* ctx, const double* u,
                               size_t n, char** csv_out);
UF_API uf_status uf_extension_csv(const uf_context* ctx, const double* u,
                                  size_t n, size_t grid, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif
