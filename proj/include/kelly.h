/*
 * C API for the kelly library: log-optimal bet sizing over discrete return
 * distributions, support-set feasibility, wealth simulation and tick
 * ingestion.
 *
 * Conventions:
 *  - Every fallible call returns kelly_status; KELLY_OK is 0. On failure
 *    kelly_last_error() holds a one-line message for the calling thread.
 *  - Objects behind opaque handles are created through kelly_*_new-style
 *    constructors and released with the matching kelly_*_free. Handles are
 *    immutable after construction and may be shared across threads.
 *  - Points and return sequences are flat row-major double arrays; `dim`
 *    names the coordinate count per point.
 *  - Log growth is an extended real: -HUGE_VAL encodes minus infinity.
 */

#ifndef KELLY_H
#define KELLY_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kelly_status {
  KELLY_OK = 0,
  KELLY_ERR_DOMAIN = 1,    /* invalid argument or violated precondition */
  KELLY_ERR_DIMENSION = 2, /* mismatched dimensions */
  KELLY_ERR_PARSE = 3,     /* malformed input data */
  KELLY_ERR_BOUNDARY = 4,  /* gradient at or beyond the survival boundary */
  KELLY_ERR_SURVIVAL = 5,  /* negative wealth multiplier on a path */
  KELLY_ERR_INTERNAL = 6
} kelly_status;

/* Message for the most recent failure on this thread; empty string if none. */
const char* kelly_last_error(void);

/* Frees strings returned by the *_to_json functions. */
void kelly_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Distributions                                                      */
/* ------------------------------------------------------------------ */

typedef struct kelly_dist kelly_dist;

typedef enum kelly_model_kind {
  KELLY_MODEL_COIN = 0,         /* +1 w.p. p, -1 otherwise */
  KELLY_MODEL_TOY = 1,          /* +1 w.p. 1-epsilon, -x0 w.p. epsilon */
  KELLY_MODEL_NORMAL = 2,       /* N(mu, sigma); sampling / theory only */
  KELLY_MODEL_PATHOLOGICAL = 3  /* heavy-left-tail truncation, k_ref + n_terms */
} kelly_model_kind;

typedef struct kelly_model {
  kelly_model_kind kind;
  double p;       /* coin */
  double epsilon; /* toy */
  double x0;      /* toy */
  double mu;      /* normal */
  double sigma;   /* normal */
  double k_ref;   /* pathological */
  uint64_t n_terms; /* pathological */
} kelly_model;

/* Empirical distribution of `count` samples of dimension `dim`; duplicate
 * points merge on exact equality. */
kelly_status kelly_dist_from_samples(const double* samples, size_t count, size_t dim,
                                     kelly_dist** out);

/* Reads the sample CSV ('#'-prefixed rows skipped, d fields per row) and
 * builds the empirical distribution. sample_count_out may be NULL. */
kelly_status kelly_dist_from_samples_csv(const char* path, kelly_dist** out,
                                         size_t* sample_count_out);

/* Atom form of a discrete model; KELLY_MODEL_NORMAL is rejected as a
 * continuous model. */
kelly_status kelly_dist_from_model(const kelly_model* model, kelly_dist** out);

size_t kelly_dist_dim(const kelly_dist* dist);
size_t kelly_dist_size(const kelly_dist* dist);

/* Copies atom i into point_out[dim] and its probability into prob_out
 * (either may be NULL). */
kelly_status kelly_dist_atom(const kelly_dist* dist, size_t i, double* point_out,
                             double* prob_out);

/* Coordinate-wise support extremes over atoms with positive probability;
 * min_out and max_out each hold dim doubles. */
kelly_status kelly_dist_support_extremes(const kelly_dist* dist, double* min_out,
                                         double* max_out);

void kelly_dist_free(kelly_dist* dist);

/* m draws from N(mu, sigma) into out[m]; deterministic under the seed. */
kelly_status kelly_gaussian_samples(double mu, double sigma, size_t m, uint64_t seed,
                                    double* out);

/* ------------------------------------------------------------------ */
/* Growth objective                                                   */
/* ------------------------------------------------------------------ */

/* Expected log growth at fraction k[dim]; *out becomes -HUGE_VAL when any
 * positive-probability atom violates survival. */
kelly_status kelly_log_growth(const kelly_dist* dist, const double* k, size_t dim,
                              double* out);

/* Analytic gradient into grad_out[dim]; KELLY_ERR_BOUNDARY at or beyond the
 * survival boundary. */
kelly_status kelly_log_growth_gradient(const kelly_dist* dist, const double* k, size_t dim,
                                       double* grad_out);

/* Scalar survival interval intersected with the cap box. */
kelly_status kelly_feasible_interval(const kelly_dist* dist, double cap, double* lo_out,
                                     double* hi_out);

/* ------------------------------------------------------------------ */
/* Support sets and restricted-betting feasibility                    */
/* ------------------------------------------------------------------ */

typedef struct kelly_set kelly_set;

kelly_status kelly_set_interval(double lo, double hi, kelly_set** out);
kelly_status kelly_set_hypercube(const double* center, const double* half_widths, size_t dim,
                                 kelly_set** out);
kelly_status kelly_set_hypersphere(const double* center, size_t dim, double radius,
                                   kelly_set** out);
kelly_status kelly_set_atom_hull(const double* points, size_t count, size_t dim,
                                 kelly_set** out);

size_t kelly_set_dim(const kelly_set* set);
void kelly_set_free(kelly_set* set);

/* Support function h(y) = sup_x y'x over the set. */
kelly_status kelly_support_function(const kelly_set* set, const double* y, size_t dim,
                                    double* out);

/* *out = 1 iff h(-k) <= 1 (boundary points feasible). */
kelly_status kelly_set_feasible(const kelly_set* set, const double* k, size_t dim, int* out);

/* Scalar confinement [-1/x_max, -1/x_min] for x_min < 0 < x_max; pass
 * -HUGE_VAL / +HUGE_VAL for unbounded extremes, which collapse their side
 * to 0. */
kelly_status kelly_confinement_interval(double x_min, double x_max, double* lo_out,
                                        double* hi_out);

/* Planar boundary of {k : r||k|| - k'x0 <= 1} on a uniform angle grid:
 * theta_out[n_points] and k_out[2*n_points] (k1,k2 pairs); requires
 * r > ||x0||. Either output may be NULL. */
kelly_status kelly_sphere_boundary(const double* x0, double r, size_t n_points,
                                   double* theta_out, double* k_out);

/* ------------------------------------------------------------------ */
/* Optimizer                                                          */
/* ------------------------------------------------------------------ */

typedef struct kelly_config {
  double cap;              /* box bound |k_i| <= cap, default 1.0 */
  double tol_k;            /* fraction tolerance, default 1e-10 */
  double tol_g;            /* growth-improvement tolerance, default 1e-12 */
  uint64_t max_iterations; /* default 10000 */
} kelly_config;

void kelly_config_default(kelly_config* cfg);

typedef enum kelly_active_bound {
  KELLY_BOUND_INTERIOR = 0,
  KELLY_BOUND_CAP = 1,
  KELLY_BOUND_SURVIVAL = 2
} kelly_active_bound;

typedef struct kelly_result kelly_result;

/* Golden-section search on a one-dimensional distribution. cfg may be NULL
 * for defaults. */
kelly_status kelly_optimize_scalar(const kelly_dist* dist, const kelly_config* cfg,
                                   kelly_result** out);

/* Projected gradient ascent for any dimension. cfg may be NULL. */
kelly_status kelly_optimize_vector(const kelly_dist* dist, const kelly_config* cfg,
                                   kelly_result** out);

/* Optimal fraction under the theoretical model itself (normal returns force
 * fraction 0: unbounded support). cfg may be NULL. */
kelly_status kelly_theoretical(const kelly_model* model, const kelly_config* cfg,
                               kelly_result** out);

size_t kelly_result_dim(const kelly_result* result);
kelly_status kelly_result_k(const kelly_result* result, double* k_out);
double kelly_result_growth(const kelly_result* result); /* -HUGE_VAL = -inf */
uint64_t kelly_result_iterations(const kelly_result* result);
int kelly_result_converged(const kelly_result* result);
kelly_active_bound kelly_result_active_bound(const kelly_result* result);
const char* kelly_result_rationale(const kelly_result* result); /* "" if none */

/* JSON object {k_star, g_star, iterations, converged, active_bound[, rationale]};
 * free with kelly_string_free. */
char* kelly_result_to_json(const kelly_result* result);

void kelly_result_free(kelly_result* result);

/* Closed forms. */
kelly_status kelly_coin_fraction(double p, double* out);            /* 2p - 1 */
kelly_status kelly_empirical_coin_fraction(double p_hat, double* out); /* max(2p-1, 0) */
kelly_status kelly_toy_fraction(double epsilon, double x0, double* out);
kelly_status kelly_p_bad(double epsilon, uint64_t sample_budget, double* out);
kelly_status kelly_merton_fraction(double mu_hat, double sigma_hat, double* out);

/* ------------------------------------------------------------------ */
/* Simulation                                                         */
/* ------------------------------------------------------------------ */

/* Wealth recursion over steps returns of dimension dim. values_out holds
 * steps+1 doubles; ruined_out (may be NULL) reports absorption at zero.
 * A negative multiplier yields KELLY_ERR_SURVIVAL with the step index in
 * violation_step_out (may be NULL). */
kelly_status kelly_wealth_path(const double* returns, size_t steps, size_t dim,
                               const double* k, double v0, double* values_out,
                               int* ruined_out, size_t* violation_step_out);

typedef struct kelly_comparison {
  double k_theory;
  double k_empirical;
  uint64_t m;
  double realized_growth_theory;    /* -HUGE_VAL = ruined */
  double realized_growth_empirical; /* -HUGE_VAL = ruined */
  int bad_sample_seen;
} kelly_comparison;

/* Theory-vs-data experiment: m estimation draws, both fractions run over the
 * same n_future fresh draws. cfg may be NULL. */
kelly_status kelly_run_comparison(const kelly_model* model, size_t m, size_t n_future,
                                  uint64_t seed, const kelly_config* cfg,
                                  kelly_comparison* out);

char* kelly_comparison_to_json(const kelly_comparison* report);

/* Empirical optimal fraction per mu over a shared noise vector (common
 * random numbers); k_hat_out holds n_mu doubles. cfg may be NULL. */
kelly_status kelly_sweep_mu(const double* mu_grid, size_t n_mu, double sigma, size_t m,
                            uint64_t seed, const kelly_config* cfg, double* k_hat_out);

/* ------------------------------------------------------------------ */
/* Tick ingestion                                                     */
/* ------------------------------------------------------------------ */

typedef struct kelly_ticks kelly_ticks;

/* "timestamp,price" CSV with one header line; prices positive, timestamps
 * nondecreasing. */
kelly_status kelly_ticks_read_csv(const char* path, kelly_ticks** out);

/* Same format from an in-memory buffer. */
kelly_status kelly_ticks_parse_csv(const char* data, size_t len, kelly_ticks** out);

/* Geometric Brownian tick generator: m prices from s0 under per-tick
 * log-drift and volatility. */
kelly_status kelly_ticks_gbm(double s0, double mu_tick, double sigma_tick, size_t m,
                             uint64_t seed, kelly_ticks** out);

size_t kelly_ticks_size(const kelly_ticks* ticks);
kelly_status kelly_ticks_price(const kelly_ticks* ticks, size_t i, double* out);

/* Simple returns (S(k+1)-S(k))/S(k) into out[size-1]. */
kelly_status kelly_ticks_returns(const kelly_ticks* ticks, double* out);

void kelly_ticks_free(kelly_ticks* ticks);

typedef struct kelly_stats {
  double mu_hat;
  double sigma_hat; /* population convention: denominator m */
  double x_min;
  double x_max;
  uint64_t m;
  int has_confinement; /* 1 when x_min < 0 < x_max */
  double confine_lo;
  double confine_hi;
} kelly_stats;

kelly_status kelly_return_stats(const double* returns, size_t n, kelly_stats* out);

char* kelly_stats_to_json(const kelly_stats* stats);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KELLY_H */
