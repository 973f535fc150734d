#include "fock.hpp"

#include <cmath>

#include "error.hpp"
#include "rng.hpp"

namespace qrc::fock {

namespace {

void check_dim(int d_t) {
  require(d_t >= 2, QRC_ERR_DIMENSION,
          "truncation dimension must be at least 2, got " +
              std::to_string(d_t));
}

StateVector normalized(int d_t, Vec amps) {
  double n = amps.norm();
  require(n > 0.0, QRC_ERR_NUMERIC, "cannot normalize a zero state vector");
  StateVector psi;
  psi.dim = d_t;
  psi.amps = amps / n;
  return psi;
}

} // namespace

Ladder build_ladder(int d_t) {
  check_dim(d_t);
  Mat a = Mat::Zero(d_t, d_t);
  for (int n = 1; n < d_t; ++n) a(n - 1, n) = std::sqrt(double(n));
  Ladder l;
  l.a = {d_t, a};
  l.a_dag = {d_t, a.adjoint()};
  // a_dag a is diagonal 0..d_t-1; built directly so the entries are
  // exact integers rather than squared square roots
  Mat n = Mat::Zero(d_t, d_t);
  for (int k = 0; k < d_t; ++k) n(k, k) = double(k);
  l.n = {d_t, std::move(n)};
  l.x = {d_t, a + l.a_dag.entries};
  return l;
}

DensityMatrix DensityMatrix::pure(const StateVector &psi) {
  DensityMatrix rho;
  rho.dim = psi.dim;
  rho.entries = psi.amps * psi.amps.adjoint();
  return rho;
}

void DensityMatrix::check_valid(double herm_tol, double trace_tol,
                                double eig_floor) const {
  require(dim >= 2 && entries.rows() == dim && entries.cols() == dim,
          QRC_ERR_DIMENSION, "density matrix has inconsistent dimensions");
  double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  require(herm <= herm_tol, QRC_ERR_NUMERIC,
          "density matrix is not Hermitian (deviation " +
              std::to_string(herm) + ")");
  double tr = std::abs(entries.trace() - Complex(1.0, 0.0));
  require(tr <= trace_tol, QRC_ERR_NUMERIC,
          "density matrix trace deviates from 1 by " + std::to_string(tr));
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (entries + entries.adjoint()),
                                        Eigen::EigenvaluesOnly);
  double min_eig = es.eigenvalues().minCoeff();
  require(min_eig >= eig_floor, QRC_ERR_NUMERIC,
          "density matrix has eigenvalue " + std::to_string(min_eig) +
              " below the positivity floor");
}

StateVector fock_state(int n, int d_t) {
  check_dim(d_t);
  require(n >= 0 && n < d_t, QRC_ERR_DIMENSION,
          "Fock index " + std::to_string(n) + " outside truncation " +
              std::to_string(d_t));
  Vec amps = Vec::Zero(d_t);
  amps(n) = 1.0;
  StateVector psi;
  psi.dim = d_t;
  psi.amps = std::move(amps);
  return psi;
}

double coherent_truncated_weight(Complex alpha, int d_t) {
  check_dim(d_t);
  // sum over e^{-|a|^2} |a|^{2n} / n!, accumulated stably.
  double a2 = std::norm(alpha);
  double term = std::exp(-a2);
  double sum = term;
  for (int n = 1; n < d_t; ++n) {
    term *= a2 / double(n);
    sum += term;
  }
  return sum;
}

StateVector coherent_state(Complex alpha, int d_t) {
  check_dim(d_t);
  Vec amps(d_t);
  Complex c = std::exp(Complex(-0.5 * std::norm(alpha), 0.0));
  amps(0) = c;
  for (int n = 1; n < d_t; ++n) {
    c *= alpha / std::sqrt(double(n));
    amps(n) = c;
  }
  StateVector psi = normalized(d_t, std::move(amps));
  psi.truncation_warning = std::norm(alpha) > 0.5 * double(d_t);
  return psi;
}

StateVector cat_state(Complex alpha, int d_t) {
  check_dim(d_t);
  StateVector plus = coherent_state(alpha, d_t);
  StateVector minus = coherent_state(-alpha, d_t);
  if (alpha == Complex(0.0, 0.0)) {
    StateVector psi = plus; // both branches collapse to vacuum
    psi.degenerate = true;
    return psi;
  }
  StateVector psi = normalized(d_t, plus.amps + minus.amps);
  psi.truncation_warning = plus.truncation_warning;
  return psi;
}

DensityMatrix mixed_cat(Complex alpha, int d_t) {
  check_dim(d_t);
  StateVector plus = coherent_state(alpha, d_t);
  StateVector minus = coherent_state(-alpha, d_t);
  Mat rho = 0.5 * (plus.amps * plus.amps.adjoint() +
                   minus.amps * minus.amps.adjoint());
  rho /= rho.trace().real();
  DensityMatrix out;
  out.dim = d_t;
  out.entries = std::move(rho);
  return out;
}

StateVector haar_from_gaussians(std::span<const double> zeta, int d, int d_t) {
  check_dim(d_t);
  require(d >= 1, QRC_ERR_DIMENSION, "support dimension must be positive");
  require(d <= d_t, QRC_ERR_DIMENSION,
          "support dimension " + std::to_string(d) +
              " exceeds truncation " + std::to_string(d_t));
  require(zeta.size() == size_t(2 * d), QRC_ERR_INVALID_ARGUMENT,
          "expected 2*d Gaussian components");
  double norm2 = 0.0;
  for (double z : zeta) norm2 += z * z;
  require(norm2 > 0.0, QRC_ERR_NUMERIC, "all Gaussian components are zero");
  Vec amps = Vec::Zero(d_t);
  double inv = 1.0 / std::sqrt(norm2);
  for (int n = 0; n < d; ++n)
    amps(n) = Complex(zeta[2 * n], zeta[2 * n + 1]) * inv;
  StateVector psi;
  psi.dim = d_t;
  psi.amps = std::move(amps);
  return psi;
}

StateVector haar_random_state(int d, int d_t, uint64_t seed) {
  require(d >= 1 && d <= d_t, QRC_ERR_DIMENSION,
          "support dimension " + std::to_string(d) +
              " outside [1, " + std::to_string(d_t) + "]");
  Rng rng(seed);
  std::vector<double> zeta(size_t(2 * d));
  for (double &z : zeta) z = rng.gaussian();
  return haar_from_gaussians(zeta, d, d_t);
}

} // namespace qrc::fock
