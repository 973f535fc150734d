#ifndef QRC_QRC_H
#define QRC_QRC_H

/*
 * qrc — single Kerr-oscillator quantum reservoir computing engine.
 *
 * C interface to the simulation core. All entry points return a
 * qrc_status; results are passed back through out-parameters. Objects
 * are opaque handles created and destroyed through matching
 * qrc_*_create / qrc_*_free pairs. On any failure the thread-local
 * message retrieved by qrc_last_error() describes the cause.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QRC_API __declspec(dllexport)
#else
#define QRC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define QRC_VERSION "0.1.0"

typedef enum qrc_status {
  QRC_OK = 0,
  QRC_ERR_INVALID_ARGUMENT = 1, /* bad parameter value                   */
  QRC_ERR_DIMENSION = 2,        /* invalid or mismatched dimension       */
  QRC_ERR_CONFIG = 3,           /* invalid run configuration             */
  QRC_ERR_INSUFFICIENT_DATA = 4,/* series too short for requested layout */
  QRC_ERR_SINGULAR = 5,         /* singular linear system (eta = 0)      */
  QRC_ERR_INTEGRATION = 6,      /* integrator accuracy failure           */
  QRC_ERR_DIVERGENCE = 7,       /* trajectory or prediction blew up      */
  QRC_ERR_CONTAINMENT = 8,      /* state not contained in phase grid     */
  QRC_ERR_METRIC_UNDEFINED = 9, /* e.g. zero-variance reference series   */
  QRC_ERR_NUMERIC = 10,         /* internal numerical inconsistency      */
  QRC_ERR_IO = 11,              /* file read/write failure               */
  QRC_ERR_INTERNAL = 12
} qrc_status;

QRC_API const char *qrc_version(void);
QRC_API const char *qrc_status_name(qrc_status status);
/* Message for the most recent failure on this thread ("" if none). */
QRC_API const char *qrc_last_error(void);

/* ------------------------------------------------------------------ */
/* Opaque handles                                                      */
/* ------------------------------------------------------------------ */

typedef struct qrc_series qrc_series;         /* sampled real time series   */
typedef struct qrc_state qrc_state;           /* density matrix, Fock basis */
typedef struct qrc_trajectory qrc_trajectory; /* reservoir readout record   */
typedef struct qrc_readout qrc_readout;       /* trained linear readout     */
typedef struct qrc_config qrc_config;         /* key = value run settings   */

/* ------------------------------------------------------------------ */
/* Plain parameter structs                                             */
/* ------------------------------------------------------------------ */

typedef struct qrc_reservoir_params {
  double K;           /* Kerr nonlinearity strength          */
  double kappa;       /* photon loss rate                    */
  double drive_alpha; /* input coupling coefficient          */
  double dt_step;     /* reservoir time per input sample     */
  int dim;            /* Fock truncation dimension           */
  int substeps;       /* RK4 substeps per reservoir step     */
} qrc_reservoir_params;

typedef struct qrc_noise_params {
  double lambda_dephase; /* dephasing Lindblad strength      */
  double lambda_pump;    /* incoherent pump strength         */
  double lambda_input;   /* additive input white noise       */
  uint64_t seed;         /* noise RNG seed                   */
} qrc_noise_params;

/* Defaults matching the reference training configuration. */
QRC_API void qrc_reservoir_params_default(qrc_reservoir_params *params);
QRC_API void qrc_noise_params_default(qrc_noise_params *noise);

/* ------------------------------------------------------------------ */
/* Time series generators                                              */
/* ------------------------------------------------------------------ */

QRC_API qrc_status qrc_series_mackey_glass(double beta, double gamma,
                                           int m, double tau,
                                           double history_value,
                                           double burn_in, double t_max,
                                           double sample_spacing,
                                           qrc_series **out);

QRC_API qrc_status qrc_series_rossler(double a, double b, double c,
                                      const double initial[3], double t_max,
                                      double sample_spacing, qrc_series **x,
                                      qrc_series **y, qrc_series **z);

/* kind: "sine" or "sawtooth". */
QRC_API qrc_status qrc_series_periodic(const char *kind, double period,
                                       double amplitude, double t_max,
                                       double sample_spacing,
                                       qrc_series **out);

QRC_API qrc_status qrc_series_add_white_noise(const qrc_series *in,
                                              double lambda_prime,
                                              uint64_t seed, qrc_series **out);

QRC_API qrc_status qrc_series_from_values(const double *values, size_t n,
                                          double sample_spacing, double t0,
                                          qrc_series **out);

QRC_API size_t qrc_series_length(const qrc_series *series);
QRC_API double qrc_series_spacing(const qrc_series *series);
QRC_API qrc_status qrc_series_values(const qrc_series *series, double *buffer,
                                     size_t buffer_len);
/* CSV with header "t,value", >= 15 significant digits. */
QRC_API qrc_status qrc_series_save_csv(const qrc_series *series,
                                       const char *path);
QRC_API void qrc_series_free(qrc_series *series);

/* ------------------------------------------------------------------ */
/* State constructors and quantumness                                  */
/* ------------------------------------------------------------------ */

QRC_API qrc_status qrc_state_fock(int n, int dim, qrc_state **out);
QRC_API qrc_status qrc_state_coherent(double alpha_re, double alpha_im,
                                      int dim, qrc_state **out);
QRC_API qrc_status qrc_state_cat(double alpha_re, double alpha_im, int dim,
                                 qrc_state **out);
QRC_API qrc_status qrc_state_mixed_cat(double alpha_re, double alpha_im,
                                       int dim, qrc_state **out);
QRC_API qrc_status qrc_state_haar(int d, int dim, uint64_t seed,
                                  qrc_state **out);

QRC_API int qrc_state_dim(const qrc_state *state);
/* Lee-Jeong measure I (trace form, may be negative). */
QRC_API qrc_status qrc_state_lee_jeong(const qrc_state *state, double *out);
/* Clamped quantumness Q = max(I, 0). */
QRC_API qrc_status qrc_state_quantumness(const qrc_state *state, double *out);
/* Integrated negative Wigner volume on the given grid. */
QRC_API qrc_status qrc_state_wigner_negativity(const qrc_state *state,
                                               double x_min, double x_max,
                                               double p_min, double p_max,
                                               int n_x, int n_p, double *out);
/* Long-format CSV "x,p,w". */
QRC_API qrc_status qrc_state_wigner_csv(const qrc_state *state, double x_min,
                                        double x_max, double p_min,
                                        double p_max, int n_x, int n_p,
                                        const char *path);
/* CSV "n,re,im" of the diagonal-free pure amplitudes when the state is
 * pure, otherwise of the matrix diagonal; JSON holds dim plus the
 * interleaved re/im amplitude array. */
QRC_API qrc_status qrc_state_save_csv(const qrc_state *state,
                                      const char *path);
QRC_API qrc_status qrc_state_save_json(const qrc_state *state,
                                       const char *path);
QRC_API void qrc_state_free(qrc_state *state);

/* ------------------------------------------------------------------ */
/* Reservoir propagation                                               */
/* ------------------------------------------------------------------ */

QRC_API qrc_status qrc_propagate(const qrc_state *initial,
                                 const qrc_series *drive,
                                 const qrc_reservoir_params *params,
                                 const qrc_noise_params *noise,
                                 int keep_snapshots, qrc_trajectory **out);

QRC_API size_t qrc_trajectory_length(const qrc_trajectory *trajectory);
QRC_API qrc_status qrc_trajectory_readouts(const qrc_trajectory *trajectory,
                                           double *buffer, size_t buffer_len);
QRC_API double qrc_trajectory_trace_drift(const qrc_trajectory *trajectory);
/* CSV "step,t,s,trace,top3_population". */
QRC_API qrc_status qrc_trajectory_save_csv(const qrc_trajectory *trajectory,
                                           const char *path);
/* Requires keep_snapshots; CSV "step,t,I,Q". */
QRC_API qrc_status qrc_trajectory_quantumness_csv(
    const qrc_trajectory *trajectory, const char *path);
QRC_API qrc_status qrc_trajectory_mean_quantumness(
    const qrc_trajectory *trajectory, double *out);
QRC_API void qrc_trajectory_free(qrc_trajectory *trajectory);

/* Classical-limit oscillator: readout s(t_i) = tanh(Re a(t_i)). */
QRC_API qrc_status qrc_propagate_classical(double a0_re, double a0_im,
                                           const qrc_series *drive,
                                           const qrc_reservoir_params *params,
                                           double lambda_input, uint64_t seed,
                                           double *readouts,
                                           size_t readouts_len);

/* ------------------------------------------------------------------ */
/* Training and prediction                                             */
/* ------------------------------------------------------------------ */

/* Windowed design matrices from `series` plus Tikhonov fit with
 * regularization eta. The reservoir restarts from `initial` for every
 * window. workers <= 0 selects the available parallelism. */
QRC_API qrc_status qrc_train(const qrc_series *series,
                             const qrc_state *initial,
                             const qrc_reservoir_params *params,
                             const qrc_noise_params *noise, int input_len,
                             int output_len, int windows, int stride,
                             double eta, int workers, qrc_readout **out);

QRC_API qrc_status qrc_readout_shape(const qrc_readout *readout,
                                     int *output_len, int *input_len);
QRC_API double qrc_readout_eta(const qrc_readout *readout);
/* Open-loop NRMSE over the training windows. */
QRC_API double qrc_readout_training_error(const qrc_readout *readout);
/* CSV with a one-line header recording N, M, eta and the runner hash. */
QRC_API qrc_status qrc_readout_save_csv(const qrc_readout *readout,
                                        const char *path);

/* Autonomous forecasting. seed_window holds the most recent input_len
 * samples; block_feedback != 0 appends whole output blocks, otherwise
 * one sample per iteration. */
QRC_API qrc_status qrc_predict_closed_loop(
    const qrc_readout *readout, const qrc_state *initial,
    const qrc_reservoir_params *params, const qrc_noise_params *noise,
    const double *seed_window, size_t seed_len, int horizon,
    int block_feedback, double sample_spacing, qrc_series **out);

QRC_API void qrc_readout_free(qrc_readout *readout);

/* sqrt(MSE) / std(truth). */
QRC_API qrc_status qrc_nrmse(const qrc_series *predicted,
                             const qrc_series *truth, double *out);

/* ------------------------------------------------------------------ */
/* Configured runs (the CLI surface)                                   */
/* ------------------------------------------------------------------ */

QRC_API qrc_config *qrc_config_create(void);
QRC_API qrc_status qrc_config_set(qrc_config *config, const char *key,
                                  const char *value);
/* Plain "key = value" files with '#' comments, or a manifest.json
 * written by a previous run (replays its resolved configuration). */
QRC_API qrc_status qrc_config_load_file(qrc_config *config, const char *path);
QRC_API void qrc_config_free(qrc_config *config);

/* Commands: generate, train, quantumness, sweep, noise-study,
 * tau-study, rossler-study. Writes CSV outputs plus manifest.json into
 * out_dir. */
QRC_API qrc_status qrc_run(const char *command, const qrc_config *config,
                           const char *out_dir);

/* Comma-joined list of configuration keys a command accepts, or NULL
 * for an unknown command. */
QRC_API const char *qrc_command_keys(const char *command);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QRC_QRC_H */
