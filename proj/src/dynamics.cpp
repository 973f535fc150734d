#include "dynamics.hpp"

#include <cmath>

#include "error.hpp"
#include "rng.hpp"

namespace qrc::dynamics {

namespace {

constexpr double kTraceDriftLimit = 1e-4;

// Applies the Lindblad generator using the band structure of the
// ladder operators; every term is O(dim^2).
class Generator {
public:
  Generator(const ReservoirParams &params, const NoiseConfig &noise)
      : p_(params), noise_(noise) {
    const int d = p_.dim;
    sq_ = Eigen::VectorXcd(d - 1);
    for (int i = 0; i + 1 < d; ++i) sq_(i) = std::sqrt(double(i + 1));
    n2_ = Eigen::VectorXcd(d);
    for (int i = 0; i < d; ++i) n2_(i) = double(i) * double(i);
    anti_loss_ = Mat(d, d);
    anti_pump_ = Mat(d, d);
    for (int i = 0; i < d; ++i) {
      double li = double(i);              // (a^dag a)_ii
      double pi = i + 1 < d ? i + 1 : 0;  // (a a^dag)_ii, truncated
      for (int j = 0; j < d; ++j) {
        double lj = double(j);
        double pj = j + 1 < d ? j + 1 : 0;
        anti_loss_(i, j) = 0.5 * (li + lj);
        anti_pump_(i, j) = 0.5 * (pi + pj);
      }
    }
    xr_ = Mat(d, d);
    rx_ = Mat(d, d);
    shift_ = Mat(d, d);
  }

  void rhs(const Mat &rho, double f, Mat &out) {
    const int d = p_.dim;
    const Complex mi(0.0, -1.0);
    const double c = p_.drive_alpha * f;

    // X rho and rho X via shifted rows/columns.
    xr_.topRows(d - 1) = sq_.asDiagonal() * rho.bottomRows(d - 1);
    xr_.row(d - 1).setZero();
    xr_.bottomRows(d - 1) += sq_.asDiagonal() * rho.topRows(d - 1);
    rx_.rightCols(d - 1) = rho.leftCols(d - 1) * sq_.asDiagonal();
    rx_.col(0).setZero();
    rx_.leftCols(d - 1) += rho.rightCols(d - 1) * sq_.asDiagonal();

    // -i [K N^2 + c X, rho]
    out = mi * (p_.K * (n2_.asDiagonal() * rho - rho * n2_.asDiagonal()) +
                c * (xr_ - rx_));

    // kappa (a rho a^dag - {N, rho}/2)
    if (p_.kappa != 0.0) {
      shift_.setZero();
      shift_.topLeftCorner(d - 1, d - 1) =
          sq_.asDiagonal() * rho.bottomRightCorner(d - 1, d - 1) *
          sq_.asDiagonal();
      out += p_.kappa * (shift_ - anti_loss_.cwiseProduct(rho));
    }

    // dephasing: sum_n L_n rho L_n^dag - {L_n^dag L_n, rho}/2 with
    // L_n = lambda |n><n| collapses to lambda^2 (diag(rho) - rho).
    if (noise_.lambda_dephase != 0.0) {
      double l2 = noise_.lambda_dephase * noise_.lambda_dephase;
      out -= l2 * rho;
      out.diagonal() += l2 * rho.diagonal();
    }

    // incoherent pump for lambda a^dag
    if (noise_.lambda_pump != 0.0) {
      double l2 = noise_.lambda_pump * noise_.lambda_pump;
      shift_.setZero();
      shift_.bottomRightCorner(d - 1, d - 1) =
          sq_.asDiagonal() * rho.topLeftCorner(d - 1, d - 1) *
          sq_.asDiagonal();
      out += l2 * (shift_ - anti_pump_.cwiseProduct(rho));
    }
  }

  // One reservoir step of dt_step under a constant drive value.
  void step(Mat &rho, double f) {
    const double h = p_.dt_step / double(p_.substeps);
    for (int s = 0; s < p_.substeps; ++s) {
      rhs(rho, f, k1_);
      stage_ = rho + (0.5 * h) * k1_;
      rhs(stage_, f, k2_);
      stage_ = rho + (0.5 * h) * k2_;
      rhs(stage_, f, k3_);
      stage_ = rho + h * k3_;
      rhs(stage_, f, k4_);
      rho += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    }
    stage_ = rho.adjoint();
    rho = 0.5 * (rho + stage_);
  }

private:
  ReservoirParams p_;
  NoiseConfig noise_;
  Eigen::VectorXcd sq_, n2_;
  Mat anti_loss_, anti_pump_;
  Mat xr_, rx_, shift_;
  Mat k1_, k2_, k3_, k4_, stage_;
};

Eigen::MatrixXd tanh_position_operator(int d) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) {
    x(i, i + 1) = std::sqrt(double(i + 1));
    x(i + 1, i) = x(i, i + 1);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
  Eigen::VectorXd t = es.eigenvalues().array().tanh();
  return es.eigenvectors() * t.asDiagonal() * es.eigenvectors().transpose();
}

} // namespace

void ReservoirParams::validate() const {
  require(dim >= 2, QRC_ERR_DIMENSION, "reservoir dimension must be >= 2");
  require(dt_step > 0.0, QRC_ERR_INVALID_ARGUMENT,
          "reservoir step must be positive");
  require(substeps >= 1, QRC_ERR_INVALID_ARGUMENT,
          "substeps must be at least 1");
  require(std::isfinite(K) && std::isfinite(kappa) &&
              std::isfinite(drive_alpha),
          QRC_ERR_INVALID_ARGUMENT, "reservoir rates must be finite");
  require(kappa >= 0.0, QRC_ERR_INVALID_ARGUMENT,
          "loss rate must be nonnegative");
}

void NoiseConfig::validate() const {
  require(lambda_dephase >= 0.0 && lambda_pump >= 0.0 && lambda_input >= 0.0,
          QRC_ERR_INVALID_ARGUMENT, "noise strengths must be nonnegative");
}

Mat lindblad_rhs(const Mat &rho, double f_value, const ReservoirParams &params,
                 const NoiseConfig &noise) {
  params.validate();
  noise.validate();
  require(rho.rows() == params.dim && rho.cols() == params.dim,
          QRC_ERR_DIMENSION, "state dimension does not match parameters");
  Generator gen(params, noise);
  Mat out(params.dim, params.dim);
  gen.rhs(rho, f_value, out);
  return out;
}

QuantumTrajectory propagate_quantum(const DensityMatrix &rho0,
                                    const signals::TimeSeries &drive,
                                    const ReservoirParams &params,
                                    const NoiseConfig &noise,
                                    bool keep_snapshots) {
  params.validate();
  noise.validate();
  require(rho0.dim == params.dim, QRC_ERR_DIMENSION,
          "initial state dimension does not match parameters");

  const int d = params.dim;
  Generator gen(params, noise);
  Eigen::MatrixXd tanh_x = tanh_position_operator(d);

  QuantumTrajectory traj;
  traj.dt_step = params.dt_step;
  const size_t n = drive.size();
  traj.readouts.reserve(n);
  traj.traces.reserve(n);
  traj.top3.reserve(n);
  if (keep_snapshots) traj.snapshots.reserve(n);

  Rng rng(noise.seed);
  Mat rho = rho0.entries;
  for (size_t i = 0; i < n; ++i) {
    double f = drive.samples[i];
    if (noise.lambda_input != 0.0) f += noise.lambda_input * rng.gaussian();
    gen.step(rho, f);

    double trace = rho.trace().real();
    traj.trace_drift = std::max(traj.trace_drift, std::abs(trace - 1.0));
    if (traj.trace_drift > kTraceDriftLimit)
      fail(QRC_ERR_INTEGRATION,
           "trace drift " + std::to_string(traj.trace_drift) +
               " exceeds 1e-4 at step " + std::to_string(i) +
               "; increase substeps or the truncation dimension");

    traj.readouts.push_back(rho.real().cwiseProduct(tanh_x).sum());
    traj.traces.push_back(trace);
    double top = 0.0;
    for (int k = std::max(0, d - 3); k < d; ++k) top += rho(k, k).real();
    traj.top3.push_back(top);
    if (keep_snapshots) traj.snapshots.push_back({d, rho});
  }
  return traj;
}

std::vector<double> propagate_classical(Complex a0,
                                        const signals::TimeSeries &drive,
                                        const ReservoirParams &params,
                                        double lambda_input, uint64_t seed) {
  params.validate();
  const double h = params.dt_step / double(params.substeps);
  auto rhs = [&params](Complex a, double f) {
    return Complex(0.0, -1.0) *
               (params.K * (1.0 + 2.0 * std::norm(a)) * a +
                params.drive_alpha * f) -
           0.5 * params.kappa * a;
  };

  Rng rng(seed);
  std::vector<double> out;
  out.reserve(drive.size());
  Complex a = a0;
  for (size_t i = 0; i < drive.size(); ++i) {
    double f = drive.samples[i];
    if (lambda_input != 0.0) f += lambda_input * rng.gaussian();
    for (int s = 0; s < params.substeps; ++s) {
      Complex k1 = rhs(a, f);
      Complex k2 = rhs(a + 0.5 * h * k1, f);
      Complex k3 = rhs(a + 0.5 * h * k2, f);
      Complex k4 = rhs(a + h * k3, f);
      a += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    require(std::abs(a) <= 1e6, QRC_ERR_DIVERGENCE,
            "classical amplitude diverged at step " + std::to_string(i));
    out.push_back(std::tanh(a.real()));
  }
  return out;
}

Complex expectation(const DensityMatrix &rho, const fock::TruncatedOperator &O) {
  require(rho.dim == O.dim, QRC_ERR_DIMENSION,
          "operator and state dimensions differ");
  return (rho.entries * O.entries).trace();
}

} // namespace qrc::dynamics
