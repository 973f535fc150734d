#ifndef QRC_SRC_FOCK_HPP
#define QRC_SRC_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>

namespace qrc::fock {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Dense operator on the truncated Fock space.
struct TruncatedOperator {
  int dim = 0;
  Mat entries;
};

/// Ladder algebra restricted to the first d_t number states.
struct Ladder {
  TruncatedOperator a;     // annihilation, a[n-1, n] = sqrt(n)
  TruncatedOperator a_dag; // creation
  TruncatedOperator n;     // a_dag * a, diagonal 0..d_t-1
  TruncatedOperator x;     // a + a_dag
};

Ladder build_ladder(int d_t);

/// Normalized pure state. Constructors set the diagnostic flags:
/// truncation_warning when the requested state is poorly contained in
/// the truncated space, degenerate for the alpha = 0 cat state.
struct StateVector {
  int dim = 0;
  Vec amps;
  bool truncation_warning = false;
  bool degenerate = false;
};

/// Density matrix in the Fock basis.
struct DensityMatrix {
  int dim = 0;
  Mat entries;

  static DensityMatrix pure(const StateVector &psi);
  double trace_real() const { return entries.trace().real(); }
  /// Hermiticity, unit trace, and positivity checks; throws on failure.
  void check_valid(double herm_tol = 1e-10, double trace_tol = 1e-10,
                   double eig_floor = -1e-9) const;
};

StateVector fock_state(int n, int d_t);
StateVector coherent_state(Complex alpha, int d_t);
/// Squared norm of the truncated (un-renormalized) coherent expansion:
/// the probability weight the truncation retains.
double coherent_truncated_weight(Complex alpha, int d_t);

StateVector cat_state(Complex alpha, int d_t);
DensityMatrix mixed_cat(Complex alpha, int d_t);

/// State built from 2d Gaussian draws: amplitudes (z[2n] + i z[2n+1])
/// on |n> for n < d, normalized over all 2d draws.
StateVector haar_from_gaussians(std::span<const double> zeta, int d, int d_t);
StateVector haar_random_state(int d, int d_t, uint64_t seed);

} // namespace qrc::fock

#endif
