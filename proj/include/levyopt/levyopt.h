/* levyopt - optimal recovery of path functionals (supremum, local time,
 * occupation time) of self-similar processes observed on a finite grid.
 *
 * Plain C interface over the C++ core: opaque handles, integer status codes,
 * no exceptions across the boundary. Every function returning levyopt_status
 * sets a thread-local message retrievable via levyopt_last_error() on
 * failure. Handles are created by *_new/*_bm/... constructors and released by
 * the matching *_free; passing NULL to a *_free is a no-op.
 */
#ifndef LEVYOPT_H
#define LEVYOPT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum levyopt_status {
    LEVYOPT_OK = 0,
    LEVYOPT_BAD_ARGUMENT = 1,        /* NULL pointer, bad size, bad config */
    LEVYOPT_ILLEGAL_TRIPLET = 2,     /* parameters outside the legal region */
    LEVYOPT_UNSUPPORTED_MODEL = 3,   /* operation undefined for this model */
    LEVYOPT_GRID_MISMATCH = 4,       /* t does not land on the grid */
    LEVYOPT_DEGENERATE_PATH = 5,     /* too few observations */
    LEVYOPT_MEAN_UNDEFINED = 6,      /* conditional mean diverges */
    LEVYOPT_TOO_FEW_SAMPLES = 7,     /* statistic needs a larger sample */
    LEVYOPT_DEGENERATE_ESTIMATE = 8, /* estimator hit a degenerate sample */
    LEVYOPT_IO_ERROR = 9,            /* filesystem failure */
    LEVYOPT_INTERNAL_ERROR = 10      /* anything else */
} levyopt_status;

/* Library version ("major.minor.patch"). */
const char* levyopt_version(void);

/* Message for the most recent failure on this thread ("" if none). */
const char* levyopt_last_error(void);

/* ---------------- models ---------------- */

typedef struct levyopt_model levyopt_model;

/* Brownian motion with volatility sigma > 0 (drift is irrelevant to every
 * functional recovered here and is not a parameter). */
levyopt_status levyopt_model_bm(double sigma, levyopt_model** out);

/* Strictly stable process from the positivity triplet: stability index
 * alpha in (0,2), positivity parameter rho = P(X_1 > 0), and location
 * lambda = E[log|X_1|]. */
levyopt_status levyopt_model_stable(double alpha, double rho, double lambda,
                                    levyopt_model** out);

/* Same law from the skewness parametrization (beta in [-1,1], scale > 0). */
levyopt_status levyopt_model_stable_skew(double alpha, double beta, double scale,
                                         levyopt_model** out);

void levyopt_model_free(levyopt_model* m);

typedef struct levyopt_model_info {
    int is_bm;
    double sigma; /* Brownian case; 0 otherwise */
    double alpha; /* 2 for Brownian */
    double rho;
    double lambda;
    double beta;
    double scale;
} levyopt_model_info;

levyopt_status levyopt_model_describe(const levyopt_model* m, levyopt_model_info* out);

/* ---------------- marginal law at unit time ---------------- */

levyopt_status levyopt_marginal_pdf(const levyopt_model* m, double x, double* out);
levyopt_status levyopt_marginal_cdf(const levyopt_model* m, double x, double* out);
levyopt_status levyopt_marginal_quantile(const levyopt_model* m, double p, double* out);

/* E[log|X_1|]. */
levyopt_status levyopt_log_moment(const levyopt_model* m, double* out);

/* Density table nodes (x, f(x)) of a stable model, suitable for CSV export.
 * On success *xs and *fs hold *count values each; release both with
 * levyopt_buffer_free. */
levyopt_status levyopt_density_table(const levyopt_model* m, double** xs, double** fs,
                                     int* count);
void levyopt_buffer_free(double* buf);

/* ---------------- conditional supremum law ---------------- */

typedef struct levyopt_cond_law levyopt_cond_law;

/* F(x, y) = P(sup over [0,1] <= x | X_1 = y) for Brownian or one-sided
 * stable models (two-sided jumps: LEVYOPT_UNSUPPORTED_MODEL). */
levyopt_status levyopt_cond_law_new(const levyopt_model* m, levyopt_cond_law** out);
void levyopt_cond_law_free(levyopt_cond_law* law);

levyopt_status levyopt_cond_cdf(const levyopt_cond_law* law, double x, double y, double* out);
levyopt_status levyopt_cond_survival(const levyopt_cond_law* law, double x, double y,
                                     double* out);

/* ---------------- path simulation ---------------- */

typedef struct levyopt_path levyopt_path;

/* Path on the grid i/(n*refine), i = 0..n*refine, exact in law at the grid.
 * The coarse grid is every refine-th point. Identical (seed, n) give
 * identical coarse paths for any refine. */
levyopt_status levyopt_simulate_path(const levyopt_model* m, int n, int refine,
                                     uint64_t seed, levyopt_path** out);
void levyopt_path_free(levyopt_path* p);

levyopt_status levyopt_path_size(const levyopt_path* p, int* n, int* refine);
/* buf must hold n+1 (coarse) or n*refine+1 (fine) values. */
levyopt_status levyopt_path_coarse(const levyopt_path* p, double* buf);
levyopt_status levyopt_path_fine(const levyopt_path* p, double* buf);

/* Fine-grid maximum plus the mean discretization gap at the fine resolution:
 * a nearly unbiased stand-in for the unobserved supremum. For a stable model
 * the first call runs a one-off bootstrap of the gap constant (cached). */
levyopt_status levyopt_path_sup_proxy(const levyopt_path* p, double* out);

/* The gap constant itself: lim E[n^{1/alpha}(sup - grid max)]. */
levyopt_status levyopt_mean_gap(const levyopt_model* m, double* out);

/* ---------------- supremum recovery ---------------- */

typedef struct levyopt_sup_result {
    double grid_max;      /* plain maximum of the observations */
    double mean;          /* conditional-mean recovery */
    double median;        /* conditional-median recovery */
    double shift;         /* grid max + scaled mean gap */
    double integral_tail; /* certified tail bound of the mean integral
                           * (diagnostic; never added to the estimate) */
    int argmax;           /* index of the grid maximum */
    int window_k;         /* product window used (0 = full) */
} levyopt_sup_result;

/* Recover the supremum over [0,1] from obs[0..count-1] on the uniform grid.
 * window_k > 0 truncates the conditional product to 2k intervals around the
 * argmax; 0 uses all of them. The untruncated conditional mean requires
 * alpha > 1 (else LEVYOPT_MEAN_UNDEFINED; median and shift always exist). */
levyopt_status levyopt_sup_estimate(const levyopt_model* m, const double* obs, int count,
                                    int window_k, levyopt_sup_result* out);

/* ---------------- limit sampling ---------------- */

typedef struct levyopt_variates {
    double v;        /* rescaled gap sup - grid max */
    double v_mean;   /* after the conditional-mean correction */
    double v_med;    /* after the conditional-median correction */
    double v_shift;  /* after the constant-shift correction */
    double v_mean_k; /* windowed conditional mean */
} levyopt_variates;

/* One draw from the Brownian limit law of the rescaled errors (two-sided
 * Bessel window of half-width K; window_k is the windowed-mean width). */
levyopt_status levyopt_limit_variates(const levyopt_model* m, int K, int window_k,
                                      uint64_t seed, levyopt_variates* out);

/* Finite-n analogue for any supported model: a path on an n-grid refined
 * m-fold, window truncated at +-k around the argmax. */
levyopt_status levyopt_prelimit_variates(const levyopt_model* m, int n, int refine, int k,
                                         int window_k, uint64_t seed, levyopt_variates* out);

/* ---------------- local time and occupation time ---------------- */

/* Conditional-mean estimators at level x over [0,t] from obs[0..count-1] on
 * the uniform grid over [0,1] (Brownian models only). n*t must be integral;
 * strict != 0 rejects off-grid t, strict == 0 floors it. */
levyopt_status levyopt_local_time(const levyopt_model* m, const double* obs, int count,
                                  double t, double x, int strict, double* out);
levyopt_status levyopt_occupation(const levyopt_model* m, const double* obs, int count,
                                  double t, double x, int strict, double* out);
/* Level-only-kernel variant of the local time estimator. */
levyopt_status levyopt_local_time_altkernel(const levyopt_model* m, const double* obs,
                                            int count, double t, double x, int strict,
                                            double* out);
/* Model-free counting baselines. */
levyopt_status levyopt_baseline_local_time(const double* obs, int count, double t, double x,
                                           int strict, double* out);
levyopt_status levyopt_baseline_occupation(const double* obs, int count, double t, double x,
                                           int strict, double* out);

/* Asymptotic variance constants (per unit local time, sigma = 1) of the
 * conditional local-time, conditional occupation, and level-only-kernel
 * estimators. Any output pointer may be NULL. */
levyopt_status levyopt_asymptotic_constants(double* v_l2, double* v_o2, double* v_alt2);

/* ---------------- parameter estimation ---------------- */

levyopt_status levyopt_estimate_sigma(const double* obs, int count, double* sigma);

typedef struct levyopt_stable_estimate {
    double alpha; /* legality-projected */
    double rho;
    double lambda;
    double alpha_raw; /* before truncation at 1/max(rho, 1-rho) */
    double q;         /* power used */
    int truncated;    /* nonzero when the cap was applied */
    int n;            /* increments used */
} levyopt_stable_estimate;

/* Power-variation estimate of (alpha, rho, lambda) from a unit-time path;
 * q must lie in (-1/2, 0). */
levyopt_status levyopt_estimate_stable(const double* obs, int count, double q,
                                       levyopt_stable_estimate* out);

/* ---------------- experiments ---------------- */

/* Protocol defaults for "table1", "table2", "localocc", "figure1".."figure6"
 * as a JSON document. Release with levyopt_string_free. */
levyopt_status levyopt_default_config(const char* experiment, char** json_out);

/* Run an experiment described by a JSON config (field reference in the
 * project README; unknown fields are ignored, missing ones take protocol
 * defaults). Identical configs produce byte-identical outputs regardless of
 * worker count. When the config names an out_dir, config echo, summary,
 * per-draw variates and figure CSVs are written there. The summary JSON is
 * returned through summary_json_out (release with levyopt_string_free). */
levyopt_status levyopt_run_experiment(const char* config_json, char** summary_json_out);

void levyopt_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LEVYOPT_H */
