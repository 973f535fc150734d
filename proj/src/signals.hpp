#ifndef QRC_SRC_SIGNALS_HPP
#define QRC_SRC_SIGNALS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace qrc::signals {

/// Uniformly sampled real sequence.
struct TimeSeries {
  std::vector<double> samples;
  double dt_sample = 1.0;
  double t0 = 0.0;

  double t(size_t i) const { return t0 + dt_sample * double(i); }
  size_t size() const { return samples.size(); }
};

/// Delay differential equation parameters
/// x'(t) = beta x(t-tau) / (1 + x(t-tau)^m) - gamma x(t).
struct MGParams {
  double beta = 0.2;
  double gamma = 0.1;
  int m = 10;
  double tau = 17.0;
};

struct RosslerParams {
  double a = 0.2;
  double b = 0.2;
  double c = 5.7;
};

/// Integrates the delay equation with constant history x(t <= 0) =
/// history_value, discards burn_in time units, then samples every
/// sample_spacing up to t_max past the burn-in. Fixed-step RK4 with a
/// cubic Hermite dense history for the delayed state.
TimeSeries mackey_glass(const MGParams &params, double history_value,
                        double burn_in, double t_max, double sample_spacing,
                        double internal_step = 0.01);

struct RosslerSeries {
  TimeSeries x, y, z;
};

RosslerSeries rossler(const RosslerParams &params,
                      const std::array<double, 3> &initial, double t_max,
                      double sample_spacing, double internal_step = 0.005);

enum class PeriodicKind { sine, sawtooth };
PeriodicKind periodic_kind_from_string(const std::string &name);

TimeSeries periodic_signal(PeriodicKind kind, double period, double amplitude,
                           double t_max, double sample_spacing);

/// samples[i] + lambda_prime * n_i with n_i i.i.d. standard normal.
TimeSeries add_white_noise(const TimeSeries &series, double lambda_prime,
                           uint64_t seed);

} // namespace qrc::signals

#endif
