#ifndef QRC_SRC_PHASE_SPACE_HPP
#define QRC_SRC_PHASE_SPACE_HPP

#include <vector>

#include "fock.hpp"

namespace qrc::phase_space {

using fock::DensityMatrix;

/// Rectangular grid over the dimensionless (x, p) plane. Point counts
/// must be odd so symmetric ranges include the origin.
struct PhaseSpaceGrid {
  double x_min = -7.0, x_max = 7.0;
  double p_min = -7.0, p_max = 7.0;
  int n_x = 201, n_p = 201;

  void validate() const;
  double dx() const { return (x_max - x_min) / double(n_x - 1); }
  double dp() const { return (p_max - p_min) / double(n_p - 1); }
  double x(int i) const { return x_min + dx() * double(i); }
  double p(int j) const { return p_min + dp() * double(j); }
};

struct WignerField {
  PhaseSpaceGrid grid;
  Eigen::MatrixXd values; // n_x rows, n_p columns
};

/// Wigner function sampled on the grid, in the scaling where the
/// vacuum is (1/pi) exp(-(x^2 + p^2)); evaluated through the
/// displaced-parity Fock kernel (associated Laguerre polynomials).
WignerField wigner(const DensityMatrix &rho, const PhaseSpaceGrid &grid,
                   int workers = 1);

/// Lee-Jeong measure, trace form: -tr(rho (a rho a^dag - {N, rho}/2)).
/// Exact up to truncation; may be negative.
double lee_jeong_trace(const DensityMatrix &rho);

/// Lee-Jeong measure from the sampled Wigner function via central
/// differences and the trapezoid rule. Requires the state to be
/// contained in the grid (boundary |W| < 1e-8).
double lee_jeong_integral(const WignerField &field);

/// Clamped quantumness, max(I, 0).
double quantumness_Q(const DensityMatrix &rho);

/// Integrated volume of the negative Wigner region.
double wigner_negativity(const WignerField &field);

/// Trapezoid integral of the field over the full grid (normalization
/// diagnostic; 1 for contained states).
double field_integral(const WignerField &field);

struct AverageQuantumness {
  double mean = 0.0;
  std::vector<double> per_step;
};

AverageQuantumness average_quantumness(const std::vector<DensityMatrix> &snapshots);

} // namespace qrc::phase_space

#endif
