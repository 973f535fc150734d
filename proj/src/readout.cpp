#include "readout.hpp"

#include <cmath>

#include "error.hpp"
#include "hash.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace qrc::readout {

void WindowSpec::validate() const {
  require(N >= 1 && M >= 1 && T >= 1, QRC_ERR_INVALID_ARGUMENT,
          "window lengths and count must be positive");
  require(stride >= 1, QRC_ERR_INVALID_ARGUMENT, "stride must be positive");
}

QuantumRunner::QuantumRunner(fock::DensityMatrix psi_init,
                             dynamics::ReservoirParams params,
                             dynamics::NoiseConfig noise)
    : psi_init_(std::move(psi_init)), params_(params), noise_(noise) {
  params_.validate();
  noise_.validate();
  require(psi_init_.dim == params_.dim, QRC_ERR_DIMENSION,
          "initial state dimension does not match reservoir parameters");
}

dynamics::QuantumTrajectory QuantumRunner::propagate(
    std::span<const double> drive, uint64_t stream_index,
    bool snapshots) const {
  signals::TimeSeries window;
  window.samples.assign(drive.begin(), drive.end());
  window.dt_sample = params_.dt_step;
  dynamics::NoiseConfig noise = noise_;
  noise.seed = splitmix64(noise_.seed + stream_index);
  return dynamics::propagate_quantum(psi_init_, window, params_, noise,
                                     snapshots);
}

RunnerResult QuantumRunner::run(std::span<const double> drive,
                                uint64_t stream_index) const {
  auto traj = propagate(drive, stream_index, false);
  return {std::move(traj.readouts), traj.trace_drift};
}

std::vector<fock::DensityMatrix> QuantumRunner::run_snapshots(
    std::span<const double> drive, uint64_t stream_index) const {
  return propagate(drive, stream_index, true).snapshots;
}

uint64_t QuantumRunner::config_hash() const {
  Fnv1a h;
  h.add(params_.K).add(params_.kappa).add(params_.drive_alpha)
      .add(params_.dt_step).add(params_.dim).add(params_.substeps);
  h.add(noise_.lambda_dephase).add(noise_.lambda_pump)
      .add(noise_.lambda_input).add(noise_.seed);
  for (int i = 0; i < psi_init_.dim; ++i)
    for (int j = 0; j < psi_init_.dim; ++j) {
      h.add(psi_init_.entries(i, j).real());
      h.add(psi_init_.entries(i, j).imag());
    }
  return h.value();
}

ClassicalRunner::ClassicalRunner(fock::Complex a0,
                                 dynamics::ReservoirParams params,
                                 double lambda_input, uint64_t seed)
    : a0_(a0), params_(params), lambda_input_(lambda_input), seed_(seed) {
  params_.validate();
}

RunnerResult ClassicalRunner::run(std::span<const double> drive,
                                  uint64_t stream_index) const {
  signals::TimeSeries window;
  window.samples.assign(drive.begin(), drive.end());
  window.dt_sample = params_.dt_step;
  auto s = dynamics::propagate_classical(
      a0_, window, params_, lambda_input_, splitmix64(seed_ + stream_index));
  return {std::move(s), 0.0};
}

std::vector<fock::DensityMatrix> ClassicalRunner::run_snapshots(
    std::span<const double>, uint64_t) const {
  fail(QRC_ERR_INVALID_ARGUMENT,
       "the classical runner has no density-matrix snapshots");
}

uint64_t ClassicalRunner::config_hash() const {
  Fnv1a h;
  h.add(a0_.real()).add(a0_.imag());
  h.add(params_.K).add(params_.kappa).add(params_.drive_alpha)
      .add(params_.dt_step).add(params_.dim).add(params_.substeps);
  h.add(lambda_input_).add(seed_);
  return h.value();
}

DesignMatrices build_design_matrices(const signals::TimeSeries &series,
                                     const ReservoirRunner &runner,
                                     const WindowSpec &spec, int workers,
                                     double *max_trace_drift) {
  spec.validate();
  require(series.size() >= spec.required_length(), QRC_ERR_INSUFFICIENT_DATA,
          "series has " + std::to_string(series.size()) +
              " samples but the window layout needs " +
              std::to_string(spec.required_length()));

  DesignMatrices dm;
  dm.S.resize(spec.N, spec.T);
  dm.G.resize(spec.M, spec.T);
  std::vector<double> drifts(size_t(spec.T), 0.0);

  const double *data = series.samples.data();
  parallel_for(spec.T, workers, [&](int k) {
    size_t start = size_t(k) * size_t(spec.stride);
    auto result = runner.run({data + start, size_t(spec.N)}, uint64_t(k));
    require(int(result.readouts.size()) == spec.N, QRC_ERR_INTERNAL,
            "runner returned an unexpected readout length");
    for (int i = 0; i < spec.N; ++i) dm.S(i, k) = result.readouts[size_t(i)];
    for (int j = 0; j < spec.M; ++j)
      dm.G(j, k) = data[start + size_t(spec.N) + size_t(j)];
    drifts[size_t(k)] = result.trace_drift;
  });

  if (max_trace_drift) {
    double d = 0.0;
    for (double v : drifts) d = std::max(d, v);
    *max_trace_drift = d;
  }
  return dm;
}

ReadoutMatrix tikhonov_fit(const DesignMatrices &dm, double eta) {
  require(eta >= 0.0, QRC_ERR_INVALID_ARGUMENT,
          "regularization must be nonnegative");
  require(dm.S.cols() == dm.G.cols(), QRC_ERR_DIMENSION,
          "design matrices have mismatched column counts");
  require(dm.S.allFinite() && dm.G.allFinite(), QRC_ERR_INVALID_ARGUMENT,
          "design matrices contain non-finite entries");

  const auto n = dm.S.rows();
  Eigen::MatrixXd gram = dm.S * dm.S.transpose();
  gram.diagonal().array() += eta;

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  require(llt.info() == Eigen::Success, QRC_ERR_SINGULAR,
          "S S^T + eta I is singular; use eta > 0");
  // A (S S^T + eta I) = G S^T, solved as the transposed system.
  Eigen::MatrixXd rhs = dm.S * dm.G.transpose(); // n x m
  Eigen::MatrixXd at = llt.solve(rhs);
  if (eta == 0.0) {
    // LLT can succeed on a numerically singular Gram matrix; reject
    // solutions that do not actually solve the system.
    double resid = (gram * at - rhs).norm();
    double scale = std::max(1.0, rhs.norm());
    require(resid <= 1e-8 * scale, QRC_ERR_SINGULAR,
            "S S^T is numerically singular at eta = 0; use eta > 0");
  }
  ReadoutMatrix out;
  out.A = at.transpose();
  out.eta = eta;
  (void)n;
  return out;
}

Prediction predict_closed_loop(const ReadoutMatrix &readout,
                               const ReservoirRunner &runner,
                               std::span<const double> seed_window,
                               int horizon, Feedback feedback,
                               double dt_sample) {
  require(horizon >= 0, QRC_ERR_INVALID_ARGUMENT,
          "horizon must be nonnegative");
  require(readout.A.cols() > 0 && readout.A.rows() > 0, QRC_ERR_DIMENSION,
          "empty readout matrix");
  const auto n = size_t(readout.A.cols());
  const auto m = int(readout.A.rows());
  require(seed_window.size() == n, QRC_ERR_DIMENSION,
          "seed window length must equal the readout input length");

  Prediction out;
  out.series.dt_sample = dt_sample;
  out.series.samples.reserve(size_t(horizon));

  std::vector<double> buffer(seed_window.begin(), seed_window.end());
  Eigen::VectorXd s(n);
  uint64_t stream = 0x9000000000000000ULL; // distinct from training windows
  while (int(out.series.samples.size()) < horizon) {
    auto result = runner.run(buffer, stream++);
    out.max_trace_drift = std::max(out.max_trace_drift, result.trace_drift);
    for (size_t i = 0; i < n; ++i) s(long(i)) = result.readouts[i];
    Eigen::VectorXd y = readout.A * s;
    int take = feedback == Feedback::block
                   ? std::min(m, horizon - int(out.series.samples.size()))
                   : 1;
    for (int j = 0; j < take; ++j) {
      double v = y(j);
      require(std::isfinite(v), QRC_ERR_DIVERGENCE,
              "closed-loop prediction diverged at step " +
                  std::to_string(out.series.samples.size()));
      out.series.samples.push_back(v);
      buffer.erase(buffer.begin());
      buffer.push_back(v);
    }
  }
  return out;
}

double nrmse(std::span<const double> predicted,
             std::span<const double> truth) {
  require(predicted.size() == truth.size(), QRC_ERR_DIMENSION,
          "series lengths differ");
  require(truth.size() >= 2, QRC_ERR_INVALID_ARGUMENT,
          "need at least two samples");
  const auto n = double(truth.size());
  double mean = 0.0;
  for (double v : truth) mean += v;
  mean /= n;
  double var = 0.0, mse = 0.0;
  for (size_t i = 0; i < truth.size(); ++i) {
    var += (truth[i] - mean) * (truth[i] - mean);
    mse += (predicted[i] - truth[i]) * (predicted[i] - truth[i]);
  }
  var /= n;
  mse /= n;
  require(var > 0.0, QRC_ERR_METRIC_UNDEFINED,
          "truth series has zero variance; NRMSE is undefined");
  return std::sqrt(mse / var);
}

double nrmse(const signals::TimeSeries &predicted,
             const signals::TimeSeries &truth) {
  return nrmse(std::span<const double>(predicted.samples),
               std::span<const double>(truth.samples));
}

double training_nrmse(const DesignMatrices &dm, const ReadoutMatrix &readout) {
  Eigen::MatrixXd residual = readout.A * dm.S - dm.G;
  double mse = residual.squaredNorm() / double(residual.size());
  double mean = dm.G.mean();
  double var = (dm.G.array() - mean).square().sum() / double(dm.G.size());
  require(var > 0.0, QRC_ERR_METRIC_UNDEFINED,
          "training targets have zero variance");
  return std::sqrt(mse / var);
}

std::vector<std::pair<double, double>> delayed_embedding(
    const signals::TimeSeries &series, int delay) {
  require(delay >= 0, QRC_ERR_INVALID_ARGUMENT, "delay must be nonnegative");
  require(size_t(delay) < series.size(), QRC_ERR_INVALID_ARGUMENT,
          "delay must be shorter than the series");
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(series.size() - size_t(delay));
  for (size_t i = size_t(delay); i < series.size(); ++i)
    pairs.emplace_back(series.samples[i], series.samples[i - size_t(delay)]);
  return pairs;
}

} // namespace qrc::readout
