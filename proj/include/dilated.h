/* dilated: GCD-matrix spectra, dilated-series norms and convergence
 * criteria behind a plain C interface. Handles are opaque; every fallible
 * call returns a ds_status and writes through out-parameters. On failure
 * ds_last_error() carries a thread-local message describing the problem. */
#ifndef DILATED_H
#define DILATED_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ds_status {
    DS_OK = 0,
    DS_ERR_USAGE = 1,     /* bad arguments or violated preconditions */
    DS_ERR_DOMAIN = 2,    /* parameter outside the mathematical domain */
    DS_ERR_RANGE = 3,     /* beyond cache or table limits */
    DS_ERR_PARSE = 4,     /* malformed sequence or family spec */
    DS_ERR_PRECISION = 5, /* requested accuracy unattainable (grid too coarse) */
    DS_ERR_NUMERIC = 6,   /* numerical failure */
    DS_ERR_NOMEM = 7
} ds_status;

const char* ds_last_error(void);
const char* ds_version(void);

typedef struct ds_cache ds_cache;
typedef struct ds_indexset ds_indexset;
typedef struct ds_matrix ds_matrix;
typedef struct ds_eigen ds_eigen;
typedef struct ds_profile ds_profile;

/* arithmetic tables: sieve up to limit, immutable afterwards */
ds_status ds_cache_create(int64_t limit, ds_cache** out);
void ds_cache_destroy(ds_cache* cache);
int64_t ds_cache_limit(const ds_cache* cache);
ds_status ds_mobius(const ds_cache* cache, int64_t n, int* out);
ds_status ds_totient(const ds_cache* cache, int64_t n, int64_t* out);
/* two-call pattern: buf NULL queries the count */
ds_status ds_divisors(const ds_cache* cache, int64_t n, int64_t* buf, size_t cap, size_t* count);
ds_status ds_sigma_alpha(const ds_cache* cache, int64_t n, double alpha, double* out);
ds_status ds_jordan_totient(const ds_cache* cache, int64_t n, double eps, double* out);
ds_status ds_pillai_mean(const ds_cache* cache, int64_t n, double* out);
ds_status ds_erdos_hooley_delta(const ds_cache* cache, int64_t n, int64_t* out);
ds_status ds_zeta(double s, double* out);

/* index sets; spec grammar:
 *   range[m,n] | primes[m,n] | hadamard(q,count,start) |
 *   squarefree(p1,...,pr;limit) | list(a1,...,an) | closure(<spec>) */
ds_status ds_indexset_parse(const char* spec, const ds_cache* cache, ds_indexset** out);
ds_status ds_indexset_from_array(const int64_t* elems, size_t n, ds_indexset** out);
void ds_indexset_destroy(ds_indexset* set);
size_t ds_indexset_size(const ds_indexset* set);
ds_status ds_indexset_elements(const ds_indexset* set, int64_t* buf, size_t cap);
const char* ds_indexset_provenance(const ds_indexset* set);
/* newline-delimited integers */
ds_status ds_indexset_write(const ds_indexset* set, const char* path);
ds_status ds_factor_closure(const ds_indexset* set, const ds_cache* cache, ds_indexset** out);
ds_status ds_is_factor_closed(const ds_indexset* set, const ds_cache* cache, int* out);

/* theta complexity profile; buffers sized ds_indexset_size() */
ds_status ds_theta(const ds_indexset* set, double* values, double* sup);
ds_status ds_theta_bound_report(const ds_indexset* set, const ds_cache* cache, double* theta,
                                double* envelope, double* ratio);
/* family diagnostics; outputs that do not apply are set to NaN */
ds_status ds_example_family_check(const ds_indexset* set, double* sup_theta,
                                  double* max_theta_logk, double* proof_envelope,
                                  double* generator_mass);

/* GCD matrices and spectra */
ds_status ds_gcd_matrix(const ds_indexset* set, double s, ds_matrix** out);
ds_status ds_gcd_power_matrix(const ds_indexset* set, double s, ds_matrix** out);
void ds_matrix_destroy(ds_matrix* m);
size_t ds_matrix_dim(const ds_matrix* m);
double ds_matrix_get(const ds_matrix* m, size_t i, size_t j);
/* full square, row-major, 15 significant digits */
ds_status ds_matrix_write_csv(const ds_matrix* m, const char* path);
ds_status ds_quadratic_form(const ds_matrix* m, const double* y, size_t n, double* out);
ds_status ds_jordan_quadratic(const ds_indexset* set, double s, const double* y, size_t n,
                              const ds_cache* cache, double* out);
/* row-major n*n upper-triangular factor; cap must be >= n*n */
ds_status ds_jordan_factor(const ds_indexset* set, double s, const ds_cache* cache, double* buf,
                           size_t cap);

ds_status ds_eigen_compute(const ds_matrix* m, ds_eigen** out);
void ds_eigen_destroy(ds_eigen* e);
double ds_eigen_min(const ds_eigen* e);
double ds_eigen_max(const ds_eigen* e);
double ds_eigen_residual(const ds_eigen* e);
size_t ds_eigen_spectrum_size(const ds_eigen* e);
ds_status ds_eigen_spectrum(const ds_eigen* e, double* buf, size_t cap);
/* JSON array, ascending */
ds_status ds_eigen_write_json(const ds_eigen* e, const char* path);

/* spectrum of the n-by-n GCD matrix on {1..n} against the zeta bracket;
 * bounds[2] receives {lower, upper} (NaN when s <= 1, where nothing is
 * asserted); *pass reflects the asserted bounds only */
ds_status ds_eigen_bounds_audit(size_t n, double s, double* lambda_min, double* lambda_max,
                                double* bounds, int* asserted, int* pass);

ds_status ds_row_sum_bound(const ds_indexset* set, int64_t k, double s, const ds_cache* cache,
                           double* row_sum, double* bound, int* asserted);
ds_status ds_gal_ratio(const ds_indexset* set, double* gal_sum, double* value, int* enveloped);
ds_status ds_riesz_condition(const ds_indexset* set, double s, double* b_value, int* verdict);

/* profiles and norms */
ds_status ds_profile_power_law(double s, int64_t truncation, ds_profile** out);
ds_status ds_profile_explicit(const int64_t* freqs, const double* coeffs, size_t n,
                              ds_profile** out);
void ds_profile_destroy(ds_profile* p);
ds_status ds_inner_product_powerlaw(int64_t k, int64_t l, double s, double* out);
ds_status ds_norm_sq_powerlaw(const ds_indexset* set, const double* c, size_t n, double s,
                              double* out);
ds_status ds_norm_collisions(const ds_indexset* set, const double* c, size_t n,
                             const ds_profile* p, double* out);
ds_status ds_quadrature_gram(int64_t k, int64_t l, const ds_profile* p, size_t grid,
                             double* out);
ds_status ds_quadrature_norm_sq(const ds_indexset* set, const double* c, size_t n,
                                const ds_profile* p, size_t grid, double* out);
/* buf sized grid: samples of sum_k c_k f(k m/grid) */
ds_status ds_sample_partial_sum(const ds_indexset* set, const double* c, size_t n,
                                const ds_profile* p, size_t grid, double* buf);
ds_status ds_modulus_of_continuity(const ds_profile* p, double h, double* out);

/* band energies; query count with band_index NULL */
ds_status ds_block_energies(const ds_indexset* set, const double* c, size_t n,
                            const ds_profile* p, double band_ratio, int64_t* band_index,
                            double* band_energy, size_t cap, size_t* count, double* total,
                            double* sum_bands, int* upper_ok, int* lower_applicable,
                            int* lower_ok);
/* geometric square-function audit; query count with block_index NULL */
ds_status ds_square_audit(const ds_indexset* set, const double* c, size_t n,
                          const ds_profile* p, double mu, int64_t* block_index,
                          double* block_norm, size_t cap, size_t* count, double* sum_blocks,
                          double* c_norm_sq, double* c_emp, int* two_sided);
/* moduli laid out row-major over (sigma, t) */
ds_status ds_dirichlet_probe(const ds_profile* p, const double* sigmas, size_t n_sigma,
                             const double* ts, size_t n_t, double* moduli, double* min_mod,
                             double* max_mod);
ds_status ds_profile_regularity(const ds_profile* p, double band_ratio, double* value,
                                int* finite);

/* criteria; family is "power(a)" | "power_log(a,b)" | "list(v1,...)";
 * criterion is one of: rademacher_menshov, tandori, two_series,
 * dyadic_divisor, divisor_growth, divisor_pillai, divisor_count,
 * divisor_sigma, hooley. s feeds two_series/divisor_sigma/hooley, h feeds
 * tandori. *verdict: 0 converges, 1 diverges, 2 undecided; *tail_bound is
 * NaN when no proven tail is attached. */
ds_status ds_criterion(const char* criterion, const char* family, double s, double h,
                       int64_t window, const ds_cache* cache, double* partial_sum,
                       double* tail_bound, int* verdict);
/* deterministic comparison table over all criteria; free with
 * ds_string_destroy */
ds_status ds_criteria_table(const char* const* families, size_t n_families, double s, double h,
                            int64_t window, const ds_cache* cache, char** csv_out);
void ds_string_destroy(char* s);

#ifdef __cplusplus
}
#endif

#endif /* DILATED_H */
