#ifndef QRC_TESTS_SUPPORT_HPP
#define QRC_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "dynamics.hpp"
#include "fock.hpp"

namespace qrc_test {

using qrc::fock::Complex;
using qrc::fock::DensityMatrix;
using qrc::fock::Mat;

// Unique temporary directory under the build tree.
inline std::string make_tmp_dir(const std::string &tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("qrc_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(dir);
  return dir.string();
}

inline std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Straight dense-matrix evaluation of the Lindblad generator, used as
// the oracle for the structured implementation.
inline Mat naive_lindblad_rhs(const Mat &rho, double f,
                              const qrc::dynamics::ReservoirParams &p,
                              const qrc::dynamics::NoiseConfig &n) {
  const int d = p.dim;
  Mat a = Mat::Zero(d, d);
  for (int k = 1; k < d; ++k) a(k - 1, k) = std::sqrt(double(k));
  Mat ad = a.adjoint();
  Mat num = ad * a;
  Mat x = a + ad;
  Mat h = p.K * num * num + p.drive_alpha * f * x;
  Mat out = Complex(0, -1) * (h * rho - rho * h);
  out += p.kappa * (a * rho * ad - 0.5 * (num * rho + rho * num));
  if (n.lambda_dephase != 0.0) {
    double l2 = n.lambda_dephase * n.lambda_dephase;
    Mat diag = rho.diagonal().asDiagonal();
    out += l2 * (diag - rho);
  }
  if (n.lambda_pump != 0.0) {
    double l2 = n.lambda_pump * n.lambda_pump;
    Mat aad = a * ad;
    out += l2 * (ad * rho * a - 0.5 * (aad * rho + rho * aad));
  }
  return out;
}

// Random Hermitian unit-trace positive matrix (mixture of random pure
// states), for generator and measure tests.
inline DensityMatrix random_density(int d, unsigned seed, int rank = 3) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  Mat rho = Mat::Zero(d, d);
  for (int r = 0; r < rank; ++r) {
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(nd(gen), nd(gen));
    v.normalize();
    rho += (1.0 / rank) * v * v.adjoint();
  }
  DensityMatrix out;
  out.dim = d;
  out.entries = rho;
  return out;
}

// Harmonic-oscillator eigenfunction psi_n(x) with the vacuum variance
// 1/2 scaling.
inline double oscillator_psi(int n, double x) {
  double h0 = 1.0, h1 = 2.0 * x;
  double hn = n == 0 ? h0 : h1;
  for (int k = 2; k <= n; ++k) {
    double h2 = 2.0 * x * h1 - 2.0 * double(k - 1) * h0;
    h0 = h1;
    h1 = h2;
    hn = h2;
  }
  double log_norm = 0.5 * (double(n) * std::log(2.0) + std::lgamma(n + 1.0) +
                           0.5 * std::log(M_PI));
  return hn * std::exp(-0.5 * x * x - log_norm);
}

// Independent Wigner evaluation: direct quadrature of
// (1/2pi) Int <x-y/2|rho|x+y/2> e^{ipy} dy over the position basis.
inline double wigner_quadrature(const DensityMatrix &rho, double x, double p,
                                double y_max = 14.0, int n_y = 4001) {
  const double hy = 2.0 * y_max / (n_y - 1);
  Complex acc = 0.0;
  for (int k = 0; k < n_y; ++k) {
    double y = -y_max + hy * k;
    double w = (k == 0 || k == n_y - 1) ? 0.5 : 1.0;
    Complex elem = 0.0;
    for (int m = 0; m < rho.dim; ++m)
      for (int n = 0; n < rho.dim; ++n)
        elem += rho.entries(m, n) * oscillator_psi(m, x - 0.5 * y) *
                oscillator_psi(n, x + 0.5 * y);
    acc += w * elem * std::exp(Complex(0.0, p * y));
  }
  return (acc * hy / (2.0 * M_PI)).real();
}

} // namespace qrc_test

#endif
