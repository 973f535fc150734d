#include "signals.hpp"

#include <cmath>

#include "error.hpp"
#include "rng.hpp"

namespace qrc::signals {

namespace {

// Dense-output storage for the delay integrator: value and derivative
// at every internal grid point t_i = i * h, plus the constant history
// for t <= 0.
struct DenseHistory {
  double h;
  double history_value;
  std::vector<double> x;
  std::vector<double> dx;

  // Cubic Hermite interpolation between the bracketing grid points.
  double value_at(double t) const {
    if (t <= 0.0) return history_value;
    double pos = t / h;
    auto j = size_t(pos);
    if (j >= x.size() - 1) j = x.size() - 2;
    double theta = pos - double(j);
    if (theta == 0.0) return x[j];
    double t2 = theta * theta;
    double t3 = t2 * theta;
    double h00 = 2 * t3 - 3 * t2 + 1;
    double h10 = t3 - 2 * t2 + theta;
    double h01 = -2 * t3 + 3 * t2;
    double h11 = t3 - t2;
    return h00 * x[j] + h10 * h * dx[j] + h01 * x[j + 1] + h11 * h * dx[j + 1];
  }
};

} // namespace

TimeSeries mackey_glass(const MGParams &params, double history_value,
                        double burn_in, double t_max, double sample_spacing,
                        double internal_step) {
  require(params.beta >= 0.0 && params.gamma > 0.0 && params.m >= 1 &&
              params.tau > 0.0,
          QRC_ERR_INVALID_ARGUMENT, "Mackey-Glass parameters must be positive");
  require(sample_spacing > 0.0, QRC_ERR_INVALID_ARGUMENT,
          "sample spacing must be positive");
  require(burn_in >= 0.0, QRC_ERR_INVALID_ARGUMENT,
          "burn-in must be nonnegative");
  require(internal_step > 0.0 && internal_step <= params.tau,
          QRC_ERR_CONFIG,
          "integrator step must not exceed the delay tau");

  const double h = internal_step;
  const double t_end = burn_in + t_max;
  const auto n_steps = size_t(std::ceil(t_end / h - 1e-12)) + 1;

  DenseHistory hist;
  hist.h = h;
  hist.history_value = history_value;
  hist.x.reserve(n_steps + 1);
  hist.dx.reserve(n_steps + 1);

  auto rhs = [&params](double x, double x_delayed) {
    return params.beta * x_delayed / (1.0 + std::pow(x_delayed, params.m)) -
           params.gamma * x;
  };

  hist.x.push_back(history_value);
  hist.dx.push_back(rhs(history_value, history_value));
  for (size_t i = 0; i < n_steps; ++i) {
    double t = double(i) * h;
    double x = hist.x[i];
    double d0 = hist.value_at(t - params.tau);
    double dh = hist.value_at(t + 0.5 * h - params.tau);
    double d1 = hist.value_at(t + h - params.tau);
    double k1 = rhs(x, d0);
    double k2 = rhs(x + 0.5 * h * k1, dh);
    double k3 = rhs(x + 0.5 * h * k2, dh);
    double k4 = rhs(x + h * k3, d1);
    double x_next = x + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    hist.x.push_back(x_next);
    hist.dx.push_back(rhs(x_next, hist.value_at(t + h - params.tau)));
  }

  TimeSeries out;
  out.dt_sample = sample_spacing;
  out.t0 = 0.0;
  auto n_samples = size_t(std::floor(t_max / sample_spacing + 1e-9)) + 1;
  out.samples.reserve(n_samples);
  for (size_t k = 0; k < n_samples; ++k)
    out.samples.push_back(hist.value_at(burn_in + double(k) * sample_spacing));
  return out;
}

RosslerSeries rossler(const RosslerParams &params,
                      const std::array<double, 3> &initial, double t_max,
                      double sample_spacing, double internal_step) {
  require(sample_spacing > 0.0, QRC_ERR_INVALID_ARGUMENT,
          "sample spacing must be positive");
  require(internal_step > 0.0, QRC_ERR_INVALID_ARGUMENT,
          "internal step must be positive");
  require(std::isfinite(params.a) && std::isfinite(params.b) &&
              std::isfinite(params.c),
          QRC_ERR_INVALID_ARGUMENT, "Rossler parameters must be finite");

  // Internal step adjusted so samples land exactly on grid points.
  const int sub = std::max(1, int(std::lround(sample_spacing / internal_step)));
  const double h = sample_spacing / double(sub);
  const auto n_samples = size_t(std::floor(t_max / sample_spacing + 1e-9)) + 1;

  auto rhs = [&params](const std::array<double, 3> &s) {
    return std::array<double, 3>{-s[1] - s[2], s[0] + params.a * s[1],
                                 params.b + s[2] * (s[0] - params.c)};
  };
  auto axpy = [](const std::array<double, 3> &s, double c,
                 const std::array<double, 3> &d) {
    return std::array<double, 3>{s[0] + c * d[0], s[1] + c * d[1],
                                 s[2] + c * d[2]};
  };

  RosslerSeries out;
  for (TimeSeries *ts : {&out.x, &out.y, &out.z}) {
    ts->dt_sample = sample_spacing;
    ts->t0 = 0.0;
    ts->samples.reserve(n_samples);
  }

  std::array<double, 3> s = initial;
  for (size_t k = 0; k < n_samples; ++k) {
    out.x.samples.push_back(s[0]);
    out.y.samples.push_back(s[1]);
    out.z.samples.push_back(s[2]);
    if (k + 1 == n_samples) break;
    for (int i = 0; i < sub; ++i) {
      auto k1 = rhs(s);
      auto k2 = rhs(axpy(s, 0.5 * h, k1));
      auto k3 = rhs(axpy(s, 0.5 * h, k2));
      auto k4 = rhs(axpy(s, h, k3));
      for (int c = 0; c < 3; ++c)
        s[c] += h / 6.0 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
    }
    for (double c : s)
      require(std::abs(c) <= 1e6, QRC_ERR_DIVERGENCE,
              "Rossler trajectory diverged near t = " +
                  std::to_string(double(k + 1) * sample_spacing));
  }
  return out;
}

PeriodicKind periodic_kind_from_string(const std::string &name) {
  if (name == "sine") return PeriodicKind::sine;
  if (name == "sawtooth") return PeriodicKind::sawtooth;
  fail(QRC_ERR_INVALID_ARGUMENT, "unknown periodic signal kind: " + name);
}

TimeSeries periodic_signal(PeriodicKind kind, double period, double amplitude,
                           double t_max, double sample_spacing) {
  require(period > 0.0, QRC_ERR_INVALID_ARGUMENT, "period must be positive");
  require(sample_spacing > 0.0, QRC_ERR_INVALID_ARGUMENT,
          "sample spacing must be positive");
  TimeSeries out;
  out.dt_sample = sample_spacing;
  out.t0 = 0.0;
  auto n = size_t(std::floor(t_max / sample_spacing + 1e-9)) + 1;
  out.samples.reserve(n);
  for (size_t k = 0; k < n; ++k) {
    double t = double(k) * sample_spacing;
    double phase = t / period - std::floor(t / period);
    double v = kind == PeriodicKind::sine
                   ? std::sin(2.0 * M_PI * phase)
                   : 2.0 * phase - 1.0; // ramp, jump at period boundary
    out.samples.push_back(amplitude * v);
  }
  return out;
}

TimeSeries add_white_noise(const TimeSeries &series, double lambda_prime,
                           uint64_t seed) {
  require(lambda_prime >= 0.0, QRC_ERR_INVALID_ARGUMENT,
          "noise strength must be nonnegative");
  TimeSeries out = series;
  if (lambda_prime == 0.0) return out;
  Rng rng(seed);
  for (double &v : out.samples) v += lambda_prime * rng.gaussian();
  return out;
}

} // namespace qrc::signals
