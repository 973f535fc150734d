#ifndef QRC_SRC_DYNAMICS_HPP
#define QRC_SRC_DYNAMICS_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "fock.hpp"
#include "signals.hpp"

namespace qrc::dynamics {

using fock::Complex;
using fock::DensityMatrix;
using fock::Mat;

struct ReservoirParams {
  double K = 0.05;          // Kerr nonlinearity strength
  double kappa = 0.1;       // photon loss rate
  double drive_alpha = 1.2; // input coupling coefficient
  double dt_step = 0.1;     // reservoir time per input sample
  int dim = 25;             // Fock truncation
  int substeps = 10;        // RK4 substeps per reservoir step

  void validate() const;
};

struct NoiseConfig {
  double lambda_dephase = 0.0;
  double lambda_pump = 0.0;
  double lambda_input = 0.0;
  uint64_t seed = 0;

  void validate() const;
  bool any() const {
    return lambda_dephase != 0.0 || lambda_pump != 0.0 || lambda_input != 0.0;
  }
};

struct QuantumTrajectory {
  std::vector<double> readouts; // s(t_i) = tr(rho tanh X), one per step
  std::vector<double> traces;   // Re tr(rho) after each step
  std::vector<double> top3;     // population on the top 3 Fock levels
  std::vector<DensityMatrix> snapshots; // filled when requested
  double trace_drift = 0.0;             // max |tr(rho) - 1| seen
  double dt_step = 0.1;
};

/// Lindblad generator at one instant:
///   -i[H, rho] + kappa D_a(rho) + dephasing + incoherent pump,
/// H = K N^2 + drive_alpha f X. Pure function; used directly by tests,
/// the propagator applies an equivalent structured form.
Mat lindblad_rhs(const Mat &rho, double f_value, const ReservoirParams &params,
                 const NoiseConfig &noise);

/// Evolves rho0 under the zero-order-held drive, one reservoir step of
/// dt_step (RK4, `substeps` substeps) per input sample, recording the
/// readout after each step.
QuantumTrajectory propagate_quantum(const DensityMatrix &rho0,
                                    const signals::TimeSeries &drive,
                                    const ReservoirParams &params,
                                    const NoiseConfig &noise,
                                    bool keep_snapshots);

/// Classical limit a' = -iK(1+2|a|^2)a - kappa/2 a - i alpha f(t),
/// stepped like the quantum path; returns s(t_i) = tanh(Re a(t_i)).
std::vector<double> propagate_classical(Complex a0,
                                        const signals::TimeSeries &drive,
                                        const ReservoirParams &params,
                                        double lambda_input, uint64_t seed);

/// tr(rho O).
Complex expectation(const DensityMatrix &rho, const fock::TruncatedOperator &O);

} // namespace qrc::dynamics

#endif
