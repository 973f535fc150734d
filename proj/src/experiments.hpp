#ifndef QRC_SRC_EXPERIMENTS_HPP
#define QRC_SRC_EXPERIMENTS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "readout.hpp"

namespace qrc::experiments {

/// Haar-state ensemble shared across all sweep cells: per_dim states
/// for each support dimension, seeds derived from seed_base, content
/// hashed so outputs can assert the exact same states were used.
struct EnsembleSpec {
  std::vector<int> dims = {4, 5, 6, 7, 8, 9, 10};
  int per_dim = 5;
  uint64_t seed_base = 1000;
};

struct EnsembleState {
  int index = 0; // 1-based, matching result tables
  int dim = 0;
  uint64_t seed = 0;
  fock::StateVector state;
};

struct Ensemble {
  std::vector<EnsembleState> states;
  uint64_t hash = 0;
};

Ensemble build_ensemble(const EnsembleSpec &spec, int d_t);

/// One training task: windowed design matrices, Tikhonov fit,
/// closed-loop forecast, plus quantumness snapshots of the final
/// training window. Shared by the sweep and the one-off studies.
struct PipelineConfig {
  dynamics::ReservoirParams params;
  dynamics::NoiseConfig noise;
  readout::WindowSpec window;
  double eta = 0.01;
  int horizon = 100;
  readout::Feedback feedback = readout::Feedback::block;
  int workers = 0;
};

struct PipelineResult {
  double train_error = 0.0;
  double test_error = 0.0;
  double mean_Q = 0.0;
  std::vector<double> lee_jeong_per_step; // final training window
  double trace_drift = 0.0;
  readout::ReadoutMatrix readout;
  std::vector<double> predicted;
  std::vector<double> truth;
};

/// Runs the full train/predict/quantumness pipeline on `series` from
/// the given initial state. The series must cover the window layout
/// plus the forecast horizon.
PipelineResult run_pipeline(const signals::TimeSeries &series,
                            const fock::DensityMatrix &psi_init,
                            const PipelineConfig &config,
                            bool with_quantumness = true);

struct SweepGrid {
  std::vector<double> K_values = {0.02, 0.05, 0.07, 0.1, 0.12};
  std::vector<double> kappa_values = {0.02, 0.03, 0.05, 0.1, 0.2, 0.3};
  EnsembleSpec ensemble;
  PipelineConfig pipeline;
  uint64_t run_seed_base = 0;
};

struct SweepRecord {
  double K = 0.0;
  double kappa = 0.0;
  int state_index = 0;
  int state_dim = 0;
  uint64_t state_seed = 0;
  double test_error = 0.0;
  double mean_Q = 0.0;
  double trace_drift = 0.0;
  uint64_t run_seed = 0;
  bool failed = false;
  std::string error;
};

struct CellSummary {
  double K = 0.0;
  double kappa = 0.0;
  double best_err = 0.0;
  double avg_err = 0.0;
  double worst_err = 0.0;
  double mean_Q = 0.0;
  double std_Q = 0.0;
  int best_state = 0;
  int worst_state = 0;
  int failed = 0;
};

struct SweepResult {
  Ensemble ensemble;
  std::vector<SweepRecord> records;    // ordered by (K, kappa, state)
  std::vector<CellSummary> summaries;  // ordered by (K, kappa)
};

/// Grid sweep over (K, kappa) x ensemble. Cells run in parallel;
/// on_record streams rows in completion order (serialized); the
/// returned records are in deterministic order. Per-run failures are
/// recorded, not fatal.
SweepResult run_sweep(const SweepGrid &grid, const signals::TimeSeries &drive,
                      const std::function<void(const SweepRecord &)> &on_record = {});

struct QuantumnessCurvePoint {
  std::string state;
  double kappa = 0.0;
  double mean_Q = 0.0;
};

/// Mean quantumness over a driven evolution for each named initial
/// state ("coherent", "mix", "cat", "ket6") at each loss rate.
std::vector<QuantumnessCurvePoint> run_quantumness_vs_kappa(
    const std::vector<std::string> &state_names,
    const std::vector<double> &kappa_values, fock::Complex alpha,
    const dynamics::ReservoirParams &base, const dynamics::NoiseConfig &noise,
    const signals::TimeSeries &drive);

fock::DensityMatrix named_initial_state(const std::string &name,
                                        fock::Complex alpha, int d_t);

struct TauStudyRow {
  double tau = 0.0;
  int input_len = 0;
  double train_error = 0.0;
  double test_error = 0.0;
};

/// Trains per (tau, N) pair; pairs aligned by index.
std::vector<TauStudyRow> run_tau_study(const std::vector<double> &tau_values,
                                       const std::vector<int> &input_lengths,
                                       const signals::MGParams &mg_base,
                                       double mg_history, double mg_burn_in,
                                       const PipelineConfig &base,
                                       const fock::DensityMatrix &psi_init);

struct NoiseStudyResult {
  double clean_train_error = 0.0;
  double noisy_train_error = 0.0;
  double clean_test_error = 0.0;
  double noisy_test_error = 0.0;
  struct PeriodicRow {
    std::string kind;
    std::string state;
    double lambda_input = 0.0;
    uint64_t seed = 0;
    double test_error = 0.0;
  };
  std::vector<PeriodicRow> periodic;
};

struct NoiseStudyConfig {
  PipelineConfig mg_pipeline;       // noise fields hold the noisy case
  PipelineConfig periodic_pipeline; // lambda_input swept below
  std::vector<double> periodic_lambdas = {0.0, 0.1, 0.2, 0.4};
  int periodic_seeds = 5;
  double periodic_period = 40.0;
  fock::Complex cat_alpha = {1.0, 1.0};
};

/// Mackey-Glass under dephasing + pump + input noise against the
/// noiseless pipeline, plus periodic signals under input white noise.
NoiseStudyResult run_noise_study(const NoiseStudyConfig &config,
                                 const signals::TimeSeries &mg_drive);

struct RosslerComponentReport {
  std::string component;
  double train_error = 0.0;
  double test_error = 0.0;
};

struct RosslerReport {
  std::vector<RosslerComponentReport> components;
  // X-Y phase portrait of truth and prediction over the test span.
  std::vector<std::array<double, 4>> phase_portrait; // x,y,x_pred,y_pred
};

/// Trains each Rossler component independently. Components are affinely
/// scaled to [0, 1] before driving the reservoir (errors are reported
/// on the original scale; NRMSE is invariant under the shared affine
/// map).
RosslerReport run_rossler(const signals::RosslerParams &params,
                          const std::array<double, 3> &initial,
                          double sample_spacing, const PipelineConfig &base,
                          const fock::DensityMatrix &psi_init);

} // namespace qrc::experiments

#endif
