/* fhaci: outage probability and transmission capacity of frequency-hopping
 * ad hoc networks with adjacent-channel interference, plus waveform
 * optimization.  C API over an opaque-handle core; every entry point returns
 * a status code and writes results through out-parameters.  On any non-OK
 * status, fhaci_last_error() describes the failure (thread-local). */
#ifndef FHACI_H
#define FHACI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  FHACI_OK = 0,
  FHACI_EINVAL = 1,   /* null handles / malformed arguments (API misuse) */
  FHACI_ECONFIG = 2,  /* invalid configuration or parameter domain */
  FHACI_ENUMERIC = 3, /* convergence / numeric-range failure */
} fhaci_status;

const char* fhaci_version(void);
const char* fhaci_last_error(void);
void fhaci_string_free(char* s);

/* ------------------------------------------------------------------ model */

/* A model bundles the system configuration (network geometry, fading,
 * shadowing, SNR), evaluation options, and an optional default waveform. */
typedef struct fhaci_model fhaci_model;

typedef struct {
  double L;   /* hopping channels (real-valued during optimization) */
  double R;   /* code rate, (0, 1) */
  double h;   /* modulation index, (0, 1] */
  double psi; /* fractional in-band power, (0.5, 1] */
} fhaci_waveform;

/* JSON shape: {"system": {...}, "waveform": {...}?, "evaluation": {...}?}.
 * Unknown fields are rejected with their path in the error message. */
fhaci_status fhaci_model_create_json(const char* json_text, fhaci_model** out);
fhaci_status fhaci_model_create_file(const char* path, fhaci_model** out);
void fhaci_model_destroy(fhaci_model* m);

/* Canonical JSON echo of the parsed model (caller frees with
 * fhaci_string_free). */
fhaci_status fhaci_model_echo_json(const fhaci_model* m, char** out_json);

/* Field access by dotted path, e.g. "system.alpha", "waveform.h",
 * "evaluation.seed".  Booleans read/write as 0/1. */
fhaci_status fhaci_model_set(fhaci_model* m, const char* field, double value);
fhaci_status fhaci_model_get(const fhaci_model* m, const char* field,
                             double* out);

/* The model's waveform section (or the documented default when absent). */
fhaci_status fhaci_model_waveform(const fhaci_model* m, fhaci_waveform* out);

/* -------------------------------------------------- spectrum and rate    */

fhaci_status fhaci_cpfsk_psd(double h, double fT, double* out);
fhaci_status fhaci_bandwidth(double h, double psi, double* out);
fhaci_status fhaci_spectral_efficiency(double h, double psi, double* out);
fhaci_status fhaci_symmetric_rate(double snr_linear, double h,
                                  long long trials, uint64_t seed,
                                  double* value, double* std_err);

/* -------------------------------------------------------- threshold table */

typedef struct fhaci_table fhaci_table;

fhaci_status fhaci_table_build(const double* h_grid, int nh,
                               const double* snr_db_grid, int ns,
                               long long trials, uint64_t seed, int workers,
                               fhaci_table** out);
/* Default grids: h = 0.05..1.00 step 0.05, SNR = -10..20 dB step 0.5. */
fhaci_status fhaci_table_build_default(long long trials, uint64_t seed,
                                       int workers, fhaci_table** out);
fhaci_status fhaci_table_load(const char* path, fhaci_table** out);
fhaci_status fhaci_table_save(const fhaci_table* t, const char* path);
void fhaci_table_destroy(fhaci_table* t);

fhaci_status fhaci_table_rate(const fhaci_table* t, double snr_db, double h,
                              double* out);
/* SINR threshold beta (linear) with rate(beta_dB, h) = code_rate. */
fhaci_status fhaci_table_threshold(const fhaci_table* t, double code_rate,
                                   double h, double* out);

/* ----------------------------------------------------------------- outage */

typedef struct {
  double value;
  double std_err;   /* 0 for deterministic evaluations */
  long long draws;  /* Monte Carlo draws/trials consumed */
  char method[32];
} fhaci_outage_result;

/* Spatially averaged outage probability at SINR threshold beta; pass
 * beta <= 0 to derive beta from the table at the waveform's (R, h) (the
 * table may be NULL when beta is given).  The evaluation path follows the
 * model's evaluation options (unshadowed closed form, or the shadowed
 * hybrid when sigma_s_db > 0). */
fhaci_status fhaci_outage(const fhaci_model* m, const fhaci_table* t,
                          const fhaci_waveform* wf, double beta,
                          fhaci_outage_result* out);

/* Outage for fixed interferer powers omegas[0..n-1] = {Omega_0, Omega_i...}:
 * exact closed form and Monte Carlo counterpart. */
fhaci_status fhaci_conditional_outage(const fhaci_model* m,
                                      const fhaci_waveform* wf,
                                      const double* omegas, int n_omegas,
                                      double beta, double* out);
fhaci_status fhaci_simulate_conditional(const fhaci_model* m,
                                        const fhaci_waveform* wf,
                                        const double* omegas, int n_omegas,
                                        double beta, long long trials,
                                        uint64_t seed,
                                        fhaci_outage_result* out);

/* Full-network Monte Carlo.  resample_mask selects which components re-draw
 * every trial (bit 0 positions, 1 shadowing, 2 fading, 3 collisions; 0xF =
 * everything).  explicit_channels != 0 samples hop indices on L channels
 * instead of using the collision probabilities. */
#define FHACI_RESAMPLE_POSITIONS 0x1u
#define FHACI_RESAMPLE_SHADOWING 0x2u
#define FHACI_RESAMPLE_FADING 0x4u
#define FHACI_RESAMPLE_COLLISIONS 0x8u
#define FHACI_RESAMPLE_ALL 0xFu
fhaci_status fhaci_simulate_network(const fhaci_model* m,
                                    const fhaci_waveform* wf, double beta,
                                    long long trials, uint64_t seed,
                                    unsigned resample_mask,
                                    int explicit_channels,
                                    fhaci_outage_result* out);

/* --------------------------------------------------------------- capacity */

typedef struct {
  double tau;       /* transmission capacity (raw; tables report tau * 1e3) */
  double epsilon;   /* outage probability used */
  double link_rate; /* normalized link throughput R D eta / L */
  double density;   /* interferer density M / A */
  double beta;      /* SINR threshold used */
} fhaci_capacity_result;

fhaci_status fhaci_link_rate(const fhaci_model* m, const fhaci_waveform* wf,
                             double* out);
fhaci_status fhaci_mctc(const fhaci_model* m, const fhaci_table* t,
                        const fhaci_waveform* wf,
                        fhaci_capacity_result* out);

/* ------------------------------------------------------------- optimizers */

typedef struct fhaci_optrun fhaci_optrun;

typedef struct {
  fhaci_waveform init;  /* first simplex corner */
  double offsets[4];    /* per-coordinate corner offsets (L, R, h, psi) */
  int frozen[4];        /* 1 = pin the coordinate */
  double lo[4], hi[4];  /* search bounds */
  double diam_tol;      /* scaled simplex diameter stop */
  double spread_tol;    /* cost spread stop */
  int max_iters;
} fhaci_nm_options;

void fhaci_nm_options_default(fhaci_nm_options* opt);

/* Simplex ascent of tau(theta).  The reported optimum rounds L half-up. */
fhaci_status fhaci_optimize_nm(const fhaci_model* m, const fhaci_table* t,
                               const fhaci_nm_options* opt,
                               fhaci_optrun** out);

/* Exhaustive grid scan; ties keep the smallest (L, R, h, psi). */
fhaci_status fhaci_optimize_grid(const fhaci_model* m, const fhaci_table* t,
                                 const double* Ls, int nL, const double* Rs,
                                 int nR, const double* hs, int nh,
                                 const double* psis, int npsi,
                                 fhaci_optrun** out);

void fhaci_optrun_destroy(fhaci_optrun* r);
fhaci_status fhaci_optrun_best(const fhaci_optrun* r, fhaci_waveform* theta,
                               double* tau);
fhaci_status fhaci_optrun_stats(const fhaci_optrun* r, long long* evaluations,
                                int* iterations, long long* failures,
                                int* restarted);
fhaci_status fhaci_optrun_trace_size(const fhaci_optrun* r, int* n);
fhaci_status fhaci_optrun_trace_get(const fhaci_optrun* r, int i,
                                    fhaci_waveform* theta, double* tau);

/* tau_opt profiles along one pinned coordinate (0=L, 1=R, 2=h, 3=psi);
 * returns a JSON array of per-value optima. */
fhaci_status fhaci_profile_curve(const fhaci_model* m, const fhaci_table* t,
                                 int coord, const double* values, int n,
                                 const fhaci_nm_options* opt, char** out_json);

/* Optimal psi versus source distance (fractions of r_net) and path-loss
 * exponent; returns a JSON array. */
fhaci_status fhaci_psi_vs_distance(const fhaci_model* m, const fhaci_table* t,
                                   const double* r_fracs, int nr,
                                   const double* alphas, int na,
                                   const fhaci_nm_options* opt,
                                   char** out_json);

/* ------------------------------------------------------------- validation */

/* Runs a built-in self-check suite ("numerics", "specialization", "oracle").
 * trial_scale in (0, 1] shrinks Monte Carlo sizes.  all_pass receives 0/1;
 * out_json (optional) receives the detailed report. */
fhaci_status fhaci_validate(const char* suite, double trial_scale,
                            char** out_json, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* FHACI_H */
