#ifndef QRC_SRC_IO_HPP
#define QRC_SRC_IO_HPP

#include <string>
#include <vector>

#include "dynamics.hpp"
#include "phase_space.hpp"
#include "readout.hpp"
#include "signals.hpp"

namespace qrc::io {

/// 17-significant-digit decimal form (round-trips a double exactly).
std::string fmt(double v);

void ensure_dir(const std::string &path);
void write_text(const std::string &path, const std::string &content);

/// Header "t,value".
void write_series_csv(const signals::TimeSeries &series,
                      const std::string &path);

/// Header "step,t,s,trace,top3_population".
void write_trajectory_csv(const dynamics::QuantumTrajectory &trajectory,
                          const std::string &path);

/// Header "step,t,I,Q".
void write_quantumness_csv(const std::vector<double> &lee_jeong,
                           double dt_step, const std::string &path);

/// Long format, header "x,p,w".
void write_wigner_csv(const phase_space::WignerField &field,
                      const std::string &path);

/// Header "n,re,im".
void write_amplitudes_csv(const fock::Vec &amps, const std::string &path);

/// JSON object with dim and the interleaved re/im amplitude array.
void write_amplitudes_json(const fock::Vec &amps, const std::string &path);

/// One '#' header line recording N, M, eta, runner hash; then M rows.
void write_readout_csv(const readout::ReadoutMatrix &readout,
                       uint64_t runner_hash, const std::string &path);

/// Header "x,x_delayed".
void write_embedding_csv(
    const std::vector<std::pair<double, double>> &pairs,
    const std::string &path);

/// Header "n,truth,predicted".
void write_prediction_csv(const std::vector<double> &truth,
                          const std::vector<double> &predicted,
                          const std::string &path);

} // namespace qrc::io

#endif
