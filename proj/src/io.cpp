#include "io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "error.hpp"
#include "hash.hpp"

namespace qrc {

std::string to_hex(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)value);
  return buf;
}

} // namespace qrc

namespace qrc::io {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_dir(const std::string &path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  require(!ec, QRC_ERR_IO, "cannot create directory " + path);
}

namespace {

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path);
  require(out.good(), QRC_ERR_IO, "cannot open " + path + " for writing");
  return out;
}

void finish(std::ofstream &out, const std::string &path) {
  out.flush();
  require(out.good(), QRC_ERR_IO, "failed writing " + path);
}

} // namespace

void write_text(const std::string &path, const std::string &content) {
  auto out = open_out(path);
  out << content;
  finish(out, path);
}

void write_series_csv(const signals::TimeSeries &series,
                      const std::string &path) {
  auto out = open_out(path);
  out << "t,value\n";
  for (size_t i = 0; i < series.size(); ++i)
    out << fmt(series.t(i)) << ',' << fmt(series.samples[i]) << '\n';
  finish(out, path);
}

void write_trajectory_csv(const dynamics::QuantumTrajectory &trajectory,
                          const std::string &path) {
  auto out = open_out(path);
  out << "step,t,s,trace,top3_population\n";
  for (size_t i = 0; i < trajectory.readouts.size(); ++i) {
    out << i << ',' << fmt(double(i + 1) * trajectory.dt_step) << ','
        << fmt(trajectory.readouts[i]) << ',' << fmt(trajectory.traces[i])
        << ',' << fmt(trajectory.top3[i]) << '\n';
  }
  finish(out, path);
}

void write_quantumness_csv(const std::vector<double> &lee_jeong,
                           double dt_step, const std::string &path) {
  auto out = open_out(path);
  out << "step,t,I,Q\n";
  for (size_t i = 0; i < lee_jeong.size(); ++i) {
    double I = lee_jeong[i];
    out << i << ',' << fmt(double(i + 1) * dt_step) << ',' << fmt(I) << ','
        << fmt(I > 0.0 ? I : 0.0) << '\n';
  }
  finish(out, path);
}

void write_wigner_csv(const phase_space::WignerField &field,
                      const std::string &path) {
  auto out = open_out(path);
  out << "x,p,w\n";
  for (int i = 0; i < field.grid.n_x; ++i)
    for (int j = 0; j < field.grid.n_p; ++j)
      out << fmt(field.grid.x(i)) << ',' << fmt(field.grid.p(j)) << ','
          << fmt(field.values(i, j)) << '\n';
  finish(out, path);
}

void write_amplitudes_csv(const fock::Vec &amps, const std::string &path) {
  auto out = open_out(path);
  out << "n,re,im\n";
  for (long n = 0; n < amps.size(); ++n)
    out << n << ',' << fmt(amps(n).real()) << ',' << fmt(amps(n).imag())
        << '\n';
  finish(out, path);
}

void write_amplitudes_json(const fock::Vec &amps, const std::string &path) {
  auto out = open_out(path);
  out << "{\"dim\": " << amps.size() << ", \"amps\": [";
  for (long n = 0; n < amps.size(); ++n) {
    if (n) out << ", ";
    out << fmt(amps(n).real()) << ", " << fmt(amps(n).imag());
  }
  out << "]}\n";
  finish(out, path);
}

void write_readout_csv(const readout::ReadoutMatrix &readout,
                       uint64_t runner_hash, const std::string &path) {
  auto out = open_out(path);
  out << "# N=" << readout.A.cols() << " M=" << readout.A.rows()
      << " eta=" << fmt(readout.eta) << " runner=" << to_hex(runner_hash)
      << '\n';
  for (long i = 0; i < readout.A.rows(); ++i) {
    for (long j = 0; j < readout.A.cols(); ++j) {
      if (j) out << ',';
      out << fmt(readout.A(i, j));
    }
    out << '\n';
  }
  finish(out, path);
}

void write_embedding_csv(const std::vector<std::pair<double, double>> &pairs,
                         const std::string &path) {
  auto out = open_out(path);
  out << "x,x_delayed\n";
  for (const auto &[x, xd] : pairs) out << fmt(x) << ',' << fmt(xd) << '\n';
  finish(out, path);
}

void write_prediction_csv(const std::vector<double> &truth,
                          const std::vector<double> &predicted,
                          const std::string &path) {
  auto out = open_out(path);
  out << "n,truth,predicted\n";
  for (size_t i = 0; i < truth.size() && i < predicted.size(); ++i)
    out << i << ',' << fmt(truth[i]) << ',' << fmt(predicted[i]) << '\n';
  finish(out, path);
}

} // namespace qrc::io
