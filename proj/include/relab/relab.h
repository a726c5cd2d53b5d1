/* C interface to the relab core library. All functions return a status code;
 * on failure relab_last_error() describes the problem for the calling thread.
 * Handles are opaque and must be released with the matching *_free function.
 * Output arrays are caller allocated. Functions taking (out, cap, len) store
 * the required length in *len and return RELAB_E_BUFFER when cap is too small. */
#ifndef RELAB_RELAB_H
#define RELAB_RELAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(RELAB_BUILDING_LIBRARY)
#define RELAB_API __attribute__((visibility("default")))
#else
#define RELAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum relab_status {
    RELAB_OK = 0,
    RELAB_E_EMPTY_INPUT = 1,
    RELAB_E_BAD_ARGUMENT = 2,
    RELAB_E_BAD_COLUMN = 3,
    RELAB_E_BAD_LABEL = 4,
    RELAB_E_BAD_DATA = 5,
    RELAB_E_TOO_LARGE = 6,
    RELAB_E_NUMERICAL = 7,
    RELAB_E_DEGENERATE = 8,
    RELAB_E_IO = 9,
    RELAB_E_INTERNAL = 10,
    RELAB_E_BUFFER = 11
} relab_status;

typedef enum relab_base { RELAB_NATS = 0, RELAB_BITS = 1, RELAB_BASE_N = 2 } relab_base;

RELAB_API const char* relab_version(void);
RELAB_API const char* relab_last_error(void);
RELAB_API const char* relab_status_name(relab_status status);
RELAB_API uint64_t relab_fnv1a64(const void* bytes, size_t n, uint64_t h);
RELAB_API uint64_t relab_fnv1a64_init(void);

/* ---- samples ---------------------------------------------------------- */

typedef struct relab_sample relab_sample;

typedef struct relab_entropy_summary {
    int64_t N;
    int64_t M;
    double resolution;
    double relevance;
    double noise;
    relab_base base;
} relab_entropy_summary;

typedef struct relab_log_counts {
    double log_Ws;
    double log_Wk;
    double log_Ws_given_k;
    double log_Wm;
} relab_log_counts;

typedef struct relab_exponent_fit {
    double mu;
    double intercept;
    double stderr_mu;
    int points_used;
} relab_exponent_fit;

typedef struct relab_zipf_gap {
    double mu_hat;
    double mu_deviation;
    double resolution;
    double relevance;
    double frontier_relevance;
    double frontier_deficit;
} relab_zipf_gap;

RELAB_API relab_status relab_sample_create(const char* const* labels, size_t n, relab_sample** out);
RELAB_API void relab_sample_free(relab_sample* sample);
RELAB_API relab_status relab_sample_summary(const relab_sample* sample, relab_base base, relab_entropy_summary* out);
RELAB_API relab_status relab_sample_log_counts(const relab_sample* sample, relab_log_counts* out);
/* Degeneracy pairs (k, m_k) in ascending k. */
RELAB_API relab_status relab_sample_degeneracy(const relab_sample* sample, int64_t* k, int64_t* m, size_t cap,
                                               size_t* len);
RELAB_API relab_status relab_sample_fit_exponent(const relab_sample* sample, int min_mass, relab_exponent_fit* out);
RELAB_API relab_status relab_sample_zipf_gap(const relab_sample* sample, int min_mass, relab_zipf_gap* out);

/* ---- partitions ------------------------------------------------------- */

typedef struct relab_partition_point {
    int64_t N;
    const int64_t* parts; /* distinct part sizes, descending */
    const int64_t* mult;  /* multiplicity of each part size */
    size_t size;
    double resolution;
    double relevance;
    double log_Wm;
} relab_partition_point;

typedef void (*relab_partition_cb)(void* ctx, const relab_partition_point* point);

RELAB_API relab_status relab_partitions(int64_t N, int64_t n_max, relab_partition_cb cb, void* ctx,
                                        uint64_t* count);

/* ---- frontier --------------------------------------------------------- */

typedef struct relab_frontier_point {
    double mu;
    double resolution;
    double relevance;
    double amplitude;
} relab_frontier_point;

typedef struct relab_baseline_point {
    int64_t alphabet;
    double resolution;
    double relevance;
    double resolution_se;
    double relevance_se;
} relab_baseline_point;

RELAB_API relab_status relab_default_mu_grid(double* out, size_t cap, size_t* len);
/* out receives n_mu points sorted by mu. */
RELAB_API relab_status relab_frontier(int64_t N, const double* mu, size_t n_mu, relab_frontier_point* out);
RELAB_API relab_status relab_random_baseline(int64_t N, const int64_t* alphabet_sizes, size_t n, int replicas,
                                             uint64_t seed, relab_baseline_point* out);

/* ---- multi-scale relevance -------------------------------------------- */

typedef struct relab_msr_point {
    double dt;
    double resolution;
    double relevance;
} relab_msr_point;

typedef struct relab_msr_summary {
    double msr;
    double optimal_dt;
    double max_total;
} relab_msr_summary;

/* grid may be NULL (n_grid 0) for the default logarithmic grid. */
RELAB_API relab_status relab_msr(const double* times, size_t n_times, double T, const double* grid, size_t n_grid,
                                 int phases, relab_msr_point* curve, size_t cap, size_t* len,
                                 relab_msr_summary* summary);

/* ---- clustering ------------------------------------------------------- */

typedef struct relab_dendrogram relab_dendrogram;

typedef enum relab_linkage { RELAB_SINGLE = 0, RELAB_COMPLETE = 1, RELAB_AVERAGE = 2 } relab_linkage;
typedef enum relab_metric { RELAB_L1 = 0, RELAB_L2 = 1 } relab_metric;
typedef enum relab_criterion { RELAB_INFOMAX = 0, RELAB_RELEMAX = 1 } relab_criterion;

typedef struct relab_merge {
    int64_t left;
    int64_t right;
    double distance;
    int64_t size;
} relab_merge;

typedef struct relab_trajectory_point {
    int64_t K;
    double resolution;
    double relevance;
} relab_trajectory_point;

typedef struct relab_trajectory {
    const char* name;
    const relab_trajectory_point* points;
    size_t n;
} relab_trajectory;

typedef struct relab_ranking_entry {
    size_t index; /* into the trajectory array */
    int64_t K;
    int64_t K_star;
    double value;
} relab_ranking_entry;

typedef struct relab_truth_metrics {
    double mutual_information;
    double nmi;
    double ari;
    double purity;
} relab_truth_metrics;

/* data is row-major, rows x cols. */
RELAB_API relab_status relab_agglomerate(const double* data, size_t rows, size_t cols, relab_linkage linkage,
                                         relab_metric metric, relab_dendrogram** out);
RELAB_API void relab_dendrogram_free(relab_dendrogram* d);
RELAB_API relab_status relab_dendrogram_merges(const relab_dendrogram* d, relab_merge* out, size_t cap, size_t* len);
/* labels receives one cluster index in 1..K per row. */
RELAB_API relab_status relab_dendrogram_cut(const relab_dendrogram* d, int64_t K, int64_t* labels, size_t cap);
RELAB_API relab_status relab_dendrogram_trajectory(const relab_dendrogram* d, relab_trajectory_point* out, size_t cap,
                                                   size_t* len);
RELAB_API relab_status relab_k_star(const relab_trajectory_point* points, size_t n, int64_t* out);
/* K = 0 reads each trajectory at its own K*. out receives n entries, best first. */
RELAB_API relab_status relab_rank_algorithms(const relab_trajectory* trajectories, size_t n,
                                             relab_criterion criterion, int64_t K, relab_ranking_entry* out);
RELAB_API relab_status relab_truth_metrics_of(const char* const* labels, const char* const* truth, size_t n,
                                              relab_truth_metrics* out);
RELAB_API relab_status relab_kendall_tau(const char* const* rank_a, const char* const* rank_b, size_t n,
                                         double* out);

/* ---- large deviations ------------------------------------------------- */

typedef struct relab_ldt_config {
    double a;        /* 0 selects 1/M */
    int64_t M;       /* 0 selects 2N */
    int64_t N_prime; /* 0 selects N */
    int64_t sweeps;  /* total, burn-in included */
    int64_t burnin;
    int64_t thin;
    uint64_t seed;
} relab_ldt_config;

typedef struct relab_sweep_record {
    double beta;
    double Hq_s;
    double Hq_k;
    double Hq_s_se;
    double Hq_k_se;
    double acceptance;
    int64_t emitted;
} relab_sweep_record;

typedef enum relab_transition_kind {
    RELAB_TRANSITION_NONE = 0,
    RELAB_TRANSITION_CONTINUOUS = 1,
    RELAB_TRANSITION_DISCONTINUOUS = 2
} relab_transition_kind;

typedef struct relab_transition {
    double beta_c;
    relab_transition_kind kind;
} relab_transition;

RELAB_API void relab_ldt_config_default(relab_ldt_config* config);
/* resolved receives the configuration after defaults are applied (may be NULL). */
RELAB_API relab_status relab_ldt_sweep(const relab_sample* sample, const relab_ldt_config* config,
                                       const double* betas, size_t n, relab_sweep_record* out,
                                       relab_ldt_config* resolved);
RELAB_API relab_status relab_ldt_detect(const relab_sweep_record* records, size_t n, int64_t N_prime,
                                        relab_transition* out);

/* ---- optimal learning machine ----------------------------------------- */

typedef struct relab_olm_solution {
    double E0;
    double mu;
    double resolution;
    double noise;
    double relevance;
} relab_olm_solution;

typedef struct relab_entropy_energy_point {
    double mu;
    double resolution;
    double noise;
} relab_entropy_energy_point;

typedef struct relab_heat_point {
    double beta_ratio;
    double C;
} relab_heat_point;

typedef struct relab_model_rr {
    double H_s;
    double H_E;
    double delta;
    double mean_log_degeneracy;
} relab_model_rr;

typedef enum relab_spin_pattern { RELAB_FERRO = 0, RELAB_STAR = 1, RELAB_NESTED = 2 } relab_spin_pattern;

/* energies may be NULL; otherwise it receives one E_c per class. */
RELAB_API relab_status relab_olm_solve(const double* class_sizes, size_t n, double mu, relab_olm_solution* out,
                                       double* energies);
RELAB_API relab_status relab_olm_entropy_energy(const double* class_sizes, size_t n, const double* mu, size_t n_mu,
                                                relab_entropy_energy_point* out);
RELAB_API relab_status relab_olm_specific_heat(const double* class_sizes, size_t n, double mu,
                                               const double* beta_ratios, size_t n_ratios, relab_heat_point* out);
RELAB_API relab_status relab_log_grid(double lo, double hi, int per_decade, double* out, size_t cap, size_t* len);
RELAB_API relab_status relab_model_relevance(const double* energies, size_t n, double delta, relab_model_rr* out);
RELAB_API relab_status relab_spin_energies(int n_spins, relab_spin_pattern pattern, double J, int star_l,
                                           double* out, size_t cap, size_t* len);

/* ---- random energy model ---------------------------------------------- */

typedef enum relab_rem_mode { RELAB_REM_EMPIRICAL = 0, RELAB_REM_EVT = 1 } relab_rem_mode;

typedef struct relab_rem_config {
    int n_s;
    double n_t;
    double gamma_s;
    double gamma_t;
    double delta_s;
    double delta_t;
    int64_t replicas;
    int64_t realizations;
    uint64_t seed;
    relab_rem_mode mode;
    double h_delta;
} relab_rem_config;

typedef struct relab_rem_result {
    double H_s_star;
    double H_s_star_se;
    double H_u;
    double normalized;
    double beta;
    double beta_effective;
    int64_t ties;
    int enumerated;
} relab_rem_result;

RELAB_API void relab_rem_config_default(relab_rem_config* config);
RELAB_API relab_status relab_rem_critical(double n_t, double gamma_t, double delta_t, double* delta_t_star,
                                          double* beta);
/* NaN for gamma = 1. */
RELAB_API relab_status relab_rem_nu_star(double gamma, double ratio, double* out);
/* q_hat may be NULL; otherwise it receives the clamped distribution of the
 * first realisation (length 2^n_s, or 0 when states were not enumerated). */
RELAB_API relab_status relab_rem_simulate(const relab_rem_config* config, relab_rem_result* out, double* q_hat,
                                          size_t cap, size_t* len);
/* H and H_se are n_ratios x n_nus row-major; nu_star has n_ratios entries. */
RELAB_API relab_status relab_rem_phase_diagram(double gamma, const double* ratios, size_t n_ratios, const double* nus,
                                               size_t n_nus, const relab_rem_config* config, double* H,
                                               double* H_se, double* nu_star);

/* ---- inference -------------------------------------------------------- */

typedef struct relab_posterior_summary {
    int r;
    double N;
    double logdet_L;
    double log_prior_at_mle;
    double loglik_max;
} relab_posterior_summary;

typedef struct relab_evidence {
    double kl;
    double bms;
    double laplace;
} relab_evidence;

typedef struct relab_bound {
    int64_t r_max;
    double raw;
} relab_bound;

RELAB_API relab_status relab_log_evidence(const relab_posterior_summary* summary, relab_evidence* out);
RELAB_API relab_status relab_param_bound(int64_t N, double relevance, relab_bound* out);

#ifdef __cplusplus
}
#endif

#endif
