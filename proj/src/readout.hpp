#ifndef QRC_SRC_READOUT_HPP
#define QRC_SRC_READOUT_HPP

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "dynamics.hpp"
#include "fock.hpp"
#include "signals.hpp"

namespace qrc::readout {

struct WindowSpec {
  int N = 200;    // input length
  int M = 100;    // output length
  int stride = 1; // window start step
  int T = 248;    // number of training windows

  void validate() const;
  // Series samples needed for T windows of N inputs + M targets.
  size_t required_length() const {
    return size_t(T - 1) * size_t(stride) + size_t(N) + size_t(M);
  }
};

struct DesignMatrices {
  Eigen::MatrixXd S; // N x T readout columns
  Eigen::MatrixXd G; // M x T target columns
};

struct ReadoutMatrix {
  Eigen::MatrixXd A; // M x N
  double eta = 0.0;
};

struct RunnerResult {
  std::vector<double> readouts;
  double trace_drift = 0.0;
};

/// Evaluator mapping a drive window to a readout vector, always
/// restarted from a fixed initial state. stream_index derives the
/// noise substream so concurrent windows stay deterministic.
class ReservoirRunner {
public:
  virtual ~ReservoirRunner() = default;
  virtual RunnerResult run(std::span<const double> drive,
                           uint64_t stream_index) const = 0;
  virtual std::vector<fock::DensityMatrix> run_snapshots(
      std::span<const double> drive, uint64_t stream_index) const = 0;
  virtual uint64_t config_hash() const = 0;
};

class QuantumRunner : public ReservoirRunner {
public:
  QuantumRunner(fock::DensityMatrix psi_init, dynamics::ReservoirParams params,
                dynamics::NoiseConfig noise);
  RunnerResult run(std::span<const double> drive,
                   uint64_t stream_index) const override;
  std::vector<fock::DensityMatrix> run_snapshots(
      std::span<const double> drive, uint64_t stream_index) const override;
  uint64_t config_hash() const override;

  const dynamics::ReservoirParams &params() const { return params_; }
  const dynamics::NoiseConfig &noise() const { return noise_; }
  const fock::DensityMatrix &initial_state() const { return psi_init_; }

private:
  dynamics::QuantumTrajectory propagate(std::span<const double> drive,
                                        uint64_t stream_index,
                                        bool snapshots) const;
  fock::DensityMatrix psi_init_;
  dynamics::ReservoirParams params_;
  dynamics::NoiseConfig noise_;
};

/// Classical-limit runner with the same windowing contract.
class ClassicalRunner : public ReservoirRunner {
public:
  ClassicalRunner(fock::Complex a0, dynamics::ReservoirParams params,
                  double lambda_input, uint64_t seed);
  RunnerResult run(std::span<const double> drive,
                   uint64_t stream_index) const override;
  std::vector<fock::DensityMatrix> run_snapshots(
      std::span<const double> drive, uint64_t stream_index) const override;
  uint64_t config_hash() const override;

private:
  fock::Complex a0_;
  dynamics::ReservoirParams params_;
  double lambda_input_;
  uint64_t seed_;
};

/// Window k spans series indices [k*stride, k*stride + N) as inputs
/// and the next M values as targets; the reservoir restarts from its
/// initial state for every window. Columns evaluate in parallel.
DesignMatrices build_design_matrices(const signals::TimeSeries &series,
                                     const ReservoirRunner &runner,
                                     const WindowSpec &spec, int workers = 1,
                                     double *max_trace_drift = nullptr);

/// A = G S^T (S S^T + eta I)^{-1} through a Cholesky solve.
ReadoutMatrix tikhonov_fit(const DesignMatrices &dm, double eta);

enum class Feedback { block, single_step };

struct Prediction {
  signals::TimeSeries series;
  double max_trace_drift = 0.0;
};

/// Autonomous forecasting: repeatedly restart the reservoir, feed the
/// rolling input buffer, apply A, append either the whole output block
/// or just its first sample.
Prediction predict_closed_loop(const ReadoutMatrix &readout,
                               const ReservoirRunner &runner,
                               std::span<const double> seed_window,
                               int horizon, Feedback feedback,
                               double dt_sample);

/// sqrt(mean squared error) / population standard deviation of truth.
double nrmse(std::span<const double> predicted, std::span<const double> truth);
double nrmse(const signals::TimeSeries &predicted,
             const signals::TimeSeries &truth);

/// Open-loop NRMSE of A over the training targets.
double training_nrmse(const DesignMatrices &dm, const ReadoutMatrix &readout);

/// Pairs (x(i), x(i - delay)) for attractor plots.
std::vector<std::pair<double, double>> delayed_embedding(
    const signals::TimeSeries &series, int delay);

} // namespace qrc::readout

#endif
