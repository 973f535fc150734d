// extern-C surface: opaque handles over the C++ core, status codes,
// thread-local error message.
#include <cstring>
#include <string>

#include "qrc/qrc.h"

#include "config.hpp"
#include "dynamics.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "fock.hpp"
#include "io.hpp"
#include "phase_space.hpp"
#include "readout.hpp"
#include "runs.hpp"
#include "signals.hpp"

struct qrc_series {
  qrc::signals::TimeSeries ts;
};

struct qrc_state {
  qrc::fock::DensityMatrix rho;
  // amplitudes kept when the state was built pure, for serialization
  std::optional<qrc::fock::Vec> pure_amps;
};

struct qrc_trajectory {
  qrc::dynamics::QuantumTrajectory traj;
};

struct qrc_readout {
  qrc::readout::ReadoutMatrix ro;
  uint64_t runner_hash = 0;
  double training_error = 0.0;
};

struct qrc_config {
  qrc::config::RunConfig cfg;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
qrc_status guarded(Fn &&fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return QRC_OK;
  } catch (const qrc::Error &e) {
    g_last_error = e.what();
    return e.code();
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return QRC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QRC_ERR_INTERNAL;
  }
}

void check_ptr(const void *p, const char *what) {
  qrc::require(p != nullptr, QRC_ERR_INVALID_ARGUMENT,
               std::string("null pointer: ") + what);
}

qrc::dynamics::ReservoirParams to_params(const qrc_reservoir_params *p) {
  check_ptr(p, "reservoir params");
  qrc::dynamics::ReservoirParams out;
  out.K = p->K;
  out.kappa = p->kappa;
  out.drive_alpha = p->drive_alpha;
  out.dt_step = p->dt_step;
  out.dim = p->dim;
  out.substeps = p->substeps;
  out.validate();
  return out;
}

qrc::dynamics::NoiseConfig to_noise(const qrc_noise_params *n) {
  qrc::dynamics::NoiseConfig out;
  if (!n) return out;
  out.lambda_dephase = n->lambda_dephase;
  out.lambda_pump = n->lambda_pump;
  out.lambda_input = n->lambda_input;
  out.seed = n->seed;
  out.validate();
  return out;
}

qrc_state *make_pure(qrc::fock::StateVector psi) {
  auto *s = new qrc_state;
  s->rho = qrc::fock::DensityMatrix::pure(psi);
  s->pure_amps = std::move(psi.amps);
  return s;
}

} // namespace

extern "C" {

const char *qrc_version(void) { return QRC_VERSION; }

const char *qrc_last_error(void) { return g_last_error.c_str(); }

const char *qrc_status_name(qrc_status status) {
  switch (status) {
    case QRC_OK: return "ok";
    case QRC_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case QRC_ERR_DIMENSION: return "invalid-dimension";
    case QRC_ERR_CONFIG: return "invalid-configuration";
    case QRC_ERR_INSUFFICIENT_DATA: return "insufficient-data";
    case QRC_ERR_SINGULAR: return "singular-system";
    case QRC_ERR_INTEGRATION: return "integration-failure";
    case QRC_ERR_DIVERGENCE: return "divergence";
    case QRC_ERR_CONTAINMENT: return "containment";
    case QRC_ERR_METRIC_UNDEFINED: return "metric-undefined";
    case QRC_ERR_NUMERIC: return "numerical-inconsistency";
    case QRC_ERR_IO: return "io-error";
    case QRC_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

void qrc_reservoir_params_default(qrc_reservoir_params *params) {
  if (!params) return;
  qrc::dynamics::ReservoirParams d;
  params->K = d.K;
  params->kappa = d.kappa;
  params->drive_alpha = d.drive_alpha;
  params->dt_step = d.dt_step;
  params->dim = d.dim;
  params->substeps = d.substeps;
}

void qrc_noise_params_default(qrc_noise_params *noise) {
  if (!noise) return;
  noise->lambda_dephase = 0.0;
  noise->lambda_pump = 0.0;
  noise->lambda_input = 0.0;
  noise->seed = 0;
}

/* ------------------------------ series ------------------------------ */

qrc_status qrc_series_mackey_glass(double beta, double gamma, int m,
                                   double tau, double history_value,
                                   double burn_in, double t_max,
                                   double sample_spacing, qrc_series **out) {
  return guarded([&] {
    check_ptr(out, "output series");
    qrc::signals::MGParams p{beta, gamma, m, tau};
    *out = new qrc_series{qrc::signals::mackey_glass(
        p, history_value, burn_in, t_max, sample_spacing)};
  });
}

qrc_status qrc_series_rossler(double a, double b, double c,
                              const double initial[3], double t_max,
                              double sample_spacing, qrc_series **x,
                              qrc_series **y, qrc_series **z) {
  return guarded([&] {
    check_ptr(initial, "initial condition");
    check_ptr(x, "x series");
    check_ptr(y, "y series");
    check_ptr(z, "z series");
    auto s = qrc::signals::rossler({a, b, c},
                                   {initial[0], initial[1], initial[2]},
                                   t_max, sample_spacing);
    *x = new qrc_series{std::move(s.x)};
    *y = new qrc_series{std::move(s.y)};
    *z = new qrc_series{std::move(s.z)};
  });
}

qrc_status qrc_series_periodic(const char *kind, double period,
                               double amplitude, double t_max,
                               double sample_spacing, qrc_series **out) {
  return guarded([&] {
    check_ptr(kind, "kind");
    check_ptr(out, "output series");
    *out = new qrc_series{qrc::signals::periodic_signal(
        qrc::signals::periodic_kind_from_string(kind), period, amplitude,
        t_max, sample_spacing)};
  });
}

qrc_status qrc_series_add_white_noise(const qrc_series *in,
                                      double lambda_prime, uint64_t seed,
                                      qrc_series **out) {
  return guarded([&] {
    check_ptr(in, "input series");
    check_ptr(out, "output series");
    *out = new qrc_series{
        qrc::signals::add_white_noise(in->ts, lambda_prime, seed)};
  });
}

qrc_status qrc_series_from_values(const double *values, size_t n,
                                  double sample_spacing, double t0,
                                  qrc_series **out) {
  return guarded([&] {
    check_ptr(values, "values");
    check_ptr(out, "output series");
    qrc::require(sample_spacing > 0.0, QRC_ERR_INVALID_ARGUMENT,
                 "sample spacing must be positive");
    qrc_series *s = new qrc_series;
    s->ts.samples.assign(values, values + n);
    s->ts.dt_sample = sample_spacing;
    s->ts.t0 = t0;
    *out = s;
  });
}

size_t qrc_series_length(const qrc_series *series) {
  return series ? series->ts.size() : 0;
}

double qrc_series_spacing(const qrc_series *series) {
  return series ? series->ts.dt_sample : 0.0;
}

qrc_status qrc_series_values(const qrc_series *series, double *buffer,
                             size_t buffer_len) {
  return guarded([&] {
    check_ptr(series, "series");
    check_ptr(buffer, "buffer");
    qrc::require(buffer_len >= series->ts.size(), QRC_ERR_INVALID_ARGUMENT,
                 "buffer too small for series");
    std::memcpy(buffer, series->ts.samples.data(),
                series->ts.size() * sizeof(double));
  });
}

qrc_status qrc_series_save_csv(const qrc_series *series, const char *path) {
  return guarded([&] {
    check_ptr(series, "series");
    check_ptr(path, "path");
    qrc::io::write_series_csv(series->ts, path);
  });
}

void qrc_series_free(qrc_series *series) { delete series; }

/* ------------------------------ states ------------------------------ */

qrc_status qrc_state_fock(int n, int dim, qrc_state **out) {
  return guarded([&] {
    check_ptr(out, "output state");
    *out = make_pure(qrc::fock::fock_state(n, dim));
  });
}

qrc_status qrc_state_coherent(double alpha_re, double alpha_im, int dim,
                              qrc_state **out) {
  return guarded([&] {
    check_ptr(out, "output state");
    *out = make_pure(
        qrc::fock::coherent_state({alpha_re, alpha_im}, dim));
  });
}

qrc_status qrc_state_cat(double alpha_re, double alpha_im, int dim,
                         qrc_state **out) {
  return guarded([&] {
    check_ptr(out, "output state");
    *out = make_pure(qrc::fock::cat_state({alpha_re, alpha_im}, dim));
  });
}

qrc_status qrc_state_mixed_cat(double alpha_re, double alpha_im, int dim,
                               qrc_state **out) {
  return guarded([&] {
    check_ptr(out, "output state");
    auto *s = new qrc_state;
    s->rho = qrc::fock::mixed_cat({alpha_re, alpha_im}, dim);
    *out = s;
  });
}

qrc_status qrc_state_haar(int d, int dim, uint64_t seed, qrc_state **out) {
  return guarded([&] {
    check_ptr(out, "output state");
    *out = make_pure(qrc::fock::haar_random_state(d, dim, seed));
  });
}

int qrc_state_dim(const qrc_state *state) {
  return state ? state->rho.dim : 0;
}

qrc_status qrc_state_lee_jeong(const qrc_state *state, double *out) {
  return guarded([&] {
    check_ptr(state, "state");
    check_ptr(out, "output");
    *out = qrc::phase_space::lee_jeong_trace(state->rho);
  });
}

qrc_status qrc_state_quantumness(const qrc_state *state, double *out) {
  return guarded([&] {
    check_ptr(state, "state");
    check_ptr(out, "output");
    *out = qrc::phase_space::quantumness_Q(state->rho);
  });
}

static qrc::phase_space::PhaseSpaceGrid make_grid(double x_min, double x_max,
                                                  double p_min, double p_max,
                                                  int n_x, int n_p) {
  qrc::phase_space::PhaseSpaceGrid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.p_min = p_min;
  g.p_max = p_max;
  g.n_x = n_x;
  g.n_p = n_p;
  g.validate();
  return g;
}

qrc_status qrc_state_wigner_negativity(const qrc_state *state, double x_min,
                                       double x_max, double p_min,
                                       double p_max, int n_x, int n_p,
                                       double *out) {
  return guarded([&] {
    check_ptr(state, "state");
    check_ptr(out, "output");
    auto grid = make_grid(x_min, x_max, p_min, p_max, n_x, n_p);
    *out = qrc::phase_space::wigner_negativity(
        qrc::phase_space::wigner(state->rho, grid));
  });
}

qrc_status qrc_state_wigner_csv(const qrc_state *state, double x_min,
                                double x_max, double p_min, double p_max,
                                int n_x, int n_p, const char *path) {
  return guarded([&] {
    check_ptr(state, "state");
    check_ptr(path, "path");
    auto grid = make_grid(x_min, x_max, p_min, p_max, n_x, n_p);
    qrc::io::write_wigner_csv(qrc::phase_space::wigner(state->rho, grid),
                              path);
  });
}

qrc_status qrc_state_save_csv(const qrc_state *state, const char *path) {
  return guarded([&] {
    check_ptr(state, "state");
    check_ptr(path, "path");
    if (state->pure_amps) {
      qrc::io::write_amplitudes_csv(*state->pure_amps, path);
    } else {
      qrc::io::write_amplitudes_csv(state->rho.entries.diagonal(), path);
    }
  });
}

qrc_status qrc_state_save_json(const qrc_state *state, const char *path) {
  return guarded([&] {
    check_ptr(state, "state");
    check_ptr(path, "path");
    if (state->pure_amps) {
      qrc::io::write_amplitudes_json(*state->pure_amps, path);
    } else {
      qrc::io::write_amplitudes_json(state->rho.entries.diagonal(), path);
    }
  });
}

void qrc_state_free(qrc_state *state) { delete state; }

/* --------------------------- propagation --------------------------- */

qrc_status qrc_propagate(const qrc_state *initial, const qrc_series *drive,
                         const qrc_reservoir_params *params,
                         const qrc_noise_params *noise, int keep_snapshots,
                         qrc_trajectory **out) {
  return guarded([&] {
    check_ptr(initial, "initial state");
    check_ptr(drive, "drive series");
    check_ptr(out, "output trajectory");
    *out = new qrc_trajectory{qrc::dynamics::propagate_quantum(
        initial->rho, drive->ts, to_params(params), to_noise(noise),
        keep_snapshots != 0)};
  });
}

size_t qrc_trajectory_length(const qrc_trajectory *trajectory) {
  return trajectory ? trajectory->traj.readouts.size() : 0;
}

qrc_status qrc_trajectory_readouts(const qrc_trajectory *trajectory,
                                   double *buffer, size_t buffer_len) {
  return guarded([&] {
    check_ptr(trajectory, "trajectory");
    check_ptr(buffer, "buffer");
    qrc::require(buffer_len >= trajectory->traj.readouts.size(),
                 QRC_ERR_INVALID_ARGUMENT, "buffer too small");
    std::memcpy(buffer, trajectory->traj.readouts.data(),
                trajectory->traj.readouts.size() * sizeof(double));
  });
}

double qrc_trajectory_trace_drift(const qrc_trajectory *trajectory) {
  return trajectory ? trajectory->traj.trace_drift : 0.0;
}

qrc_status qrc_trajectory_save_csv(const qrc_trajectory *trajectory,
                                   const char *path) {
  return guarded([&] {
    check_ptr(trajectory, "trajectory");
    check_ptr(path, "path");
    qrc::io::write_trajectory_csv(trajectory->traj, path);
  });
}

qrc_status qrc_trajectory_quantumness_csv(const qrc_trajectory *trajectory,
                                          const char *path) {
  return guarded([&] {
    check_ptr(trajectory, "trajectory");
    check_ptr(path, "path");
    qrc::require(!trajectory->traj.snapshots.empty(), QRC_ERR_INVALID_ARGUMENT,
                 "trajectory was propagated without snapshots");
    std::vector<double> curve;
    curve.reserve(trajectory->traj.snapshots.size());
    for (const auto &snap : trajectory->traj.snapshots)
      curve.push_back(qrc::phase_space::lee_jeong_trace(snap));
    qrc::io::write_quantumness_csv(curve, trajectory->traj.dt_step, path);
  });
}

qrc_status qrc_trajectory_mean_quantumness(const qrc_trajectory *trajectory,
                                           double *out) {
  return guarded([&] {
    check_ptr(trajectory, "trajectory");
    check_ptr(out, "output");
    qrc::require(!trajectory->traj.snapshots.empty(), QRC_ERR_INVALID_ARGUMENT,
                 "trajectory was propagated without snapshots");
    *out = qrc::phase_space::average_quantumness(trajectory->traj.snapshots)
               .mean;
  });
}

void qrc_trajectory_free(qrc_trajectory *trajectory) { delete trajectory; }

qrc_status qrc_propagate_classical(double a0_re, double a0_im,
                                   const qrc_series *drive,
                                   const qrc_reservoir_params *params,
                                   double lambda_input, uint64_t seed,
                                   double *readouts, size_t readouts_len) {
  return guarded([&] {
    check_ptr(drive, "drive series");
    check_ptr(readouts, "readouts buffer");
    qrc::require(readouts_len >= drive->ts.size(), QRC_ERR_INVALID_ARGUMENT,
                 "buffer too small for the drive length");
    auto s = qrc::dynamics::propagate_classical(
        {a0_re, a0_im}, drive->ts, to_params(params), lambda_input, seed);
    std::memcpy(readouts, s.data(), s.size() * sizeof(double));
  });
}

/* ------------------------ training / readout ------------------------ */

qrc_status qrc_train(const qrc_series *series, const qrc_state *initial,
                     const qrc_reservoir_params *params,
                     const qrc_noise_params *noise, int input_len,
                     int output_len, int windows, int stride, double eta,
                     int workers, qrc_readout **out) {
  return guarded([&] {
    check_ptr(series, "series");
    check_ptr(initial, "initial state");
    check_ptr(out, "output readout");
    qrc::readout::QuantumRunner runner(initial->rho, to_params(params),
                                       to_noise(noise));
    qrc::readout::WindowSpec spec{input_len, output_len, stride, windows};
    auto dm = qrc::readout::build_design_matrices(series->ts, runner, spec,
                                                  workers);
    auto *h = new qrc_readout;
    h->ro = qrc::readout::tikhonov_fit(dm, eta);
    h->runner_hash = runner.config_hash();
    h->training_error = qrc::readout::training_nrmse(dm, h->ro);
    *out = h;
  });
}

qrc_status qrc_readout_shape(const qrc_readout *readout, int *output_len,
                             int *input_len) {
  return guarded([&] {
    check_ptr(readout, "readout");
    if (output_len) *output_len = int(readout->ro.A.rows());
    if (input_len) *input_len = int(readout->ro.A.cols());
  });
}

double qrc_readout_eta(const qrc_readout *readout) {
  return readout ? readout->ro.eta : 0.0;
}

double qrc_readout_training_error(const qrc_readout *readout) {
  return readout ? readout->training_error : 0.0;
}

qrc_status qrc_readout_save_csv(const qrc_readout *readout,
                                const char *path) {
  return guarded([&] {
    check_ptr(readout, "readout");
    check_ptr(path, "path");
    qrc::io::write_readout_csv(readout->ro, readout->runner_hash, path);
  });
}

qrc_status qrc_predict_closed_loop(const qrc_readout *readout,
                                   const qrc_state *initial,
                                   const qrc_reservoir_params *params,
                                   const qrc_noise_params *noise,
                                   const double *seed_window, size_t seed_len,
                                   int horizon, int block_feedback,
                                   double sample_spacing, qrc_series **out) {
  return guarded([&] {
    check_ptr(readout, "readout");
    check_ptr(initial, "initial state");
    check_ptr(seed_window, "seed window");
    check_ptr(out, "output series");
    qrc::readout::QuantumRunner runner(initial->rho, to_params(params),
                                       to_noise(noise));
    auto pred = qrc::readout::predict_closed_loop(
        readout->ro, runner, {seed_window, seed_len}, horizon,
        block_feedback ? qrc::readout::Feedback::block
                       : qrc::readout::Feedback::single_step,
        sample_spacing);
    *out = new qrc_series{std::move(pred.series)};
  });
}

void qrc_readout_free(qrc_readout *readout) { delete readout; }

qrc_status qrc_nrmse(const qrc_series *predicted, const qrc_series *truth,
                     double *out) {
  return guarded([&] {
    check_ptr(predicted, "predicted series");
    check_ptr(truth, "truth series");
    check_ptr(out, "output");
    *out = qrc::readout::nrmse(predicted->ts, truth->ts);
  });
}

/* --------------------------- configured runs --------------------------- */

qrc_config *qrc_config_create(void) { return new qrc_config; }

qrc_status qrc_config_set(qrc_config *config, const char *key,
                          const char *value) {
  return guarded([&] {
    check_ptr(config, "config");
    check_ptr(key, "key");
    check_ptr(value, "value");
    config->cfg.set(key, value);
  });
}

qrc_status qrc_config_load_file(qrc_config *config, const char *path) {
  return guarded([&] {
    check_ptr(config, "config");
    check_ptr(path, "path");
    config->cfg.load_file(path);
  });
}

void qrc_config_free(qrc_config *config) { delete config; }

qrc_status qrc_run(const char *command, const qrc_config *config,
                   const char *out_dir) {
  return guarded([&] {
    check_ptr(command, "command");
    check_ptr(out_dir, "output directory");
    qrc::config::RunConfig empty;
    qrc::runs::run_command(command, config ? config->cfg : empty, out_dir);
  });
}

const char *qrc_command_keys(const char *command) {
  if (!command) return nullptr;
  static thread_local std::string joined;
  auto keys = qrc::runs::command_keys(command);
  if (keys.empty()) return nullptr;
  joined.clear();
  for (const auto &k : keys) {
    if (!joined.empty()) joined += ',';
    joined += k;
  }
  return joined.c_str();
}

} // extern "C"
