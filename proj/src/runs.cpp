#include "runs.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "error.hpp"
#include "experiments.hpp"
#include "hash.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "phase_space.hpp"

namespace qrc::runs {

namespace {

namespace fs = std::filesystem;
using config::RunConfig;

// Records every key it resolves (with the final value) so the written
// manifest replays the run exactly.
class Resolver {
public:
  explicit Resolver(const RunConfig &in) : in_(in) {}

  double d(const std::string &key, double dflt) {
    double v = in_.get_double(key, dflt);
    resolved_[key] = io::fmt(v);
    return v;
  }
  int i(const std::string &key, int dflt) {
    int v = in_.get_int(key, dflt);
    resolved_[key] = std::to_string(v);
    return v;
  }
  uint64_t u(const std::string &key, uint64_t dflt) {
    uint64_t v = in_.get_u64(key, dflt);
    resolved_[key] = std::to_string(v);
    return v;
  }
  bool b(const std::string &key, bool dflt) {
    bool v = in_.get_bool(key, dflt);
    resolved_[key] = v ? "true" : "false";
    return v;
  }
  std::string s(const std::string &key, const std::string &dflt) {
    std::string v = in_.get_str(key, dflt);
    resolved_[key] = v;
    return v;
  }
  std::vector<double> dl(const std::string &key,
                         const std::vector<double> &dflt) {
    auto v = in_.get_double_list(key, dflt);
    std::string joined;
    for (double x : v) {
      if (!joined.empty()) joined += ',';
      joined += io::fmt(x);
    }
    resolved_[key] = joined;
    return v;
  }
  std::vector<int> il(const std::string &key, const std::vector<int> &dflt) {
    auto v = in_.get_int_list(key, dflt);
    std::string joined;
    for (int x : v) {
      if (!joined.empty()) joined += ',';
      joined += std::to_string(x);
    }
    resolved_[key] = joined;
    return v;
  }
  std::vector<std::string> sl(const std::string &key,
                              const std::vector<std::string> &dflt) {
    auto v = in_.get_str_list(key, dflt);
    std::string joined;
    for (const auto &x : v) {
      if (!joined.empty()) joined += ',';
      joined += x;
    }
    resolved_[key] = joined;
    return v;
  }

  const std::map<std::string, std::string> &resolved() const {
    return resolved_;
  }

private:
  const RunConfig &in_;
  std::map<std::string, std::string> resolved_;
};

struct OutputSink {
  std::string dir;
  std::vector<std::string> files;

  std::string path(const std::string &name) {
    files.push_back(name);
    return (fs::path(dir) / name).string();
  }
};

void write_manifest(const std::string &command, const Resolver &r,
                    OutputSink &sink, uint64_t ensemble_hash = 0) {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = QRC_VERSION;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto &[k, v] : r.resolved()) cfg[k] = v;
  j["config"] = cfg;
  std::sort(sink.files.begin(), sink.files.end());
  j["outputs"] = sink.files;
  if (ensemble_hash) j["ensemble_hash"] = to_hex(ensemble_hash);
  io::write_text((fs::path(sink.dir) / "manifest.json").string(),
                 j.dump(2) + "\n");
}

dynamics::ReservoirParams resolve_reservoir(Resolver &r) {
  dynamics::ReservoirParams p;
  p.K = r.d("K", p.K);
  p.kappa = r.d("kappa", p.kappa);
  p.drive_alpha = r.d("drive_alpha", p.drive_alpha);
  p.dt_step = r.d("dt_step", p.dt_step);
  p.dim = r.i("d_t", p.dim);
  p.substeps = r.i("substeps", p.substeps);
  p.validate();
  return p;
}

dynamics::NoiseConfig resolve_noise(Resolver &r, uint64_t run_seed) {
  dynamics::NoiseConfig n;
  n.lambda_dephase = r.d("lambda_dephase", 0.0);
  n.lambda_pump = r.d("lambda_pump", 0.0);
  n.lambda_input = r.d("lambda_input", 0.0);
  n.seed = r.u("noise_seed", run_seed);
  n.validate();
  return n;
}

readout::WindowSpec resolve_window(Resolver &r) {
  readout::WindowSpec w;
  w.N = r.i("N", w.N);
  w.M = r.i("M", w.M);
  w.T = r.i("T", w.T);
  w.stride = r.i("stride", 10);
  w.validate();
  return w;
}

fock::DensityMatrix resolve_state(Resolver &r, int d_t,
                                  const std::string &key = "psi_init") {
  std::string name = r.s(key, "ket6");
  fock::Complex alpha(r.d("alpha_re", 1.0), r.d("alpha_im", 1.0));
  if (name.rfind("fock:", 0) == 0) {
    int n = std::stoi(name.substr(5));
    return fock::DensityMatrix::pure(fock::fock_state(n, d_t));
  }
  if (name.rfind("haar:", 0) == 0) {
    auto rest = name.substr(5);
    auto colon = rest.find(':');
    require(colon != std::string::npos, QRC_ERR_CONFIG,
            "haar state needs the form haar:<d>:<seed>");
    int d = std::stoi(rest.substr(0, colon));
    uint64_t seed = std::stoull(rest.substr(colon + 1));
    return fock::DensityMatrix::pure(fock::haar_random_state(d, d_t, seed));
  }
  return experiments::named_initial_state(name, alpha, d_t);
}

signals::MGParams resolve_mg(Resolver &r) {
  signals::MGParams mg;
  mg.beta = r.d("mg_beta", mg.beta);
  mg.gamma = r.d("mg_gamma", mg.gamma);
  mg.m = r.i("mg_m", mg.m);
  mg.tau = r.d("mg_tau", mg.tau);
  return mg;
}

signals::TimeSeries resolve_training_series(Resolver &r, size_t n_samples) {
  std::string kind = r.s("series", "mg");
  double spacing = r.d("sample_spacing", 1.0);
  double t_max = spacing * double(n_samples + 1);
  if (kind == "mg") {
    auto mg = resolve_mg(r);
    double history = r.d("mg_history", 1.2);
    double burn_in = r.d("mg_burn_in", 1000.0);
    return signals::mackey_glass(mg, history, burn_in, t_max, spacing);
  }
  if (kind == "sine" || kind == "sawtooth") {
    double period = r.d("period", 40.0);
    double amplitude = r.d("amplitude", 1.0);
    return signals::periodic_signal(signals::periodic_kind_from_string(kind),
                                    period, amplitude, t_max, spacing);
  }
  fail(QRC_ERR_CONFIG, "cannot train on series kind '" + kind + "'");
}

experiments::PipelineConfig resolve_pipeline(Resolver &r, uint64_t run_seed) {
  experiments::PipelineConfig cfg;
  cfg.params = resolve_reservoir(r);
  cfg.noise = resolve_noise(r, run_seed);
  cfg.window = resolve_window(r);
  cfg.eta = r.d("eta", 0.01);
  cfg.horizon = r.i("horizon", cfg.window.M);
  std::string fb = r.s("feedback", "block");
  require(fb == "block" || fb == "single", QRC_ERR_CONFIG,
          "feedback must be 'block' or 'single'");
  cfg.feedback = fb == "block" ? readout::Feedback::block
                               : readout::Feedback::single_step;
  cfg.workers = r.i("workers", 0);
  return cfg;
}

phase_space::PhaseSpaceGrid resolve_grid(Resolver &r) {
  phase_space::PhaseSpaceGrid g;
  double lo = r.d("grid_min", -7.0);
  double hi = r.d("grid_max", 7.0);
  int n = r.i("grid_points", 201);
  g.x_min = g.p_min = lo;
  g.x_max = g.p_max = hi;
  g.n_x = g.n_p = n;
  g.validate();
  return g;
}

/* ----------------------------- commands ----------------------------- */

void cmd_generate(Resolver &r, OutputSink &sink) {
  std::string kind = r.s("series", "mg");
  double spacing = r.d("sample_spacing", 1.0);
  double t_max = r.d("t_max", 3000.0);
  uint64_t seed = r.u("seed", 0);
  double noise_lambda = r.d("noise_lambda", 0.0);

  auto emit = [&](const signals::TimeSeries &ts, const std::string &name) {
    auto out = noise_lambda > 0.0
                   ? signals::add_white_noise(ts, noise_lambda, seed)
                   : ts;
    io::write_series_csv(out, sink.path(name));
  };

  if (kind == "mg") {
    auto mg = resolve_mg(r);
    emit(signals::mackey_glass(mg, r.d("mg_history", 1.2),
                               r.d("mg_burn_in", 1000.0), t_max, spacing),
         "series.csv");
  } else if (kind == "rossler") {
    signals::RosslerParams p;
    p.a = r.d("ros_a", p.a);
    p.b = r.d("ros_b", p.b);
    p.c = r.d("ros_c", p.c);
    std::array<double, 3> init = {r.d("ros_x0", 0.0), r.d("ros_y0", 1.0),
                                  r.d("ros_z0", 0.0)};
    auto series = signals::rossler(p, init, t_max, spacing);
    emit(series.x, "series_x.csv");
    emit(series.y, "series_y.csv");
    emit(series.z, "series_z.csv");
  } else if (kind == "sine" || kind == "sawtooth") {
    emit(signals::periodic_signal(signals::periodic_kind_from_string(kind),
                                  r.d("period", 40.0), r.d("amplitude", 1.0),
                                  t_max, spacing),
         "series.csv");
  } else {
    fail(QRC_ERR_CONFIG, "unknown series kind '" + kind + "'");
  }
}

void cmd_train(Resolver &r, OutputSink &sink) {
  uint64_t seed = r.u("seed", 0);
  auto cfg = resolve_pipeline(r, seed);
  auto psi = resolve_state(r, cfg.params.dim);
  size_t need = cfg.window.required_length() + size_t(cfg.horizon);
  auto series = resolve_training_series(r, need);
  auto pr = experiments::run_pipeline(series, psi, cfg);

  io::write_prediction_csv(pr.truth, pr.predicted, sink.path("prediction.csv"));
  readout::QuantumRunner runner(psi, cfg.params, cfg.noise);
  io::write_readout_csv(pr.readout, runner.config_hash(),
                        sink.path("readout.csv"));
  io::write_quantumness_csv(pr.lee_jeong_per_step, cfg.params.dt_step,
                            sink.path("quantumness.csv"));

  int delay = r.i("embed_delay",
                  int(std::lround(r.d("mg_tau", 17.0) /
                                  r.d("sample_spacing", 1.0))));
  signals::TimeSeries truth_ts{pr.truth, series.dt_sample, 0.0};
  signals::TimeSeries pred_ts{pr.predicted, series.dt_sample, 0.0};
  if (delay < int(pr.truth.size())) {
    io::write_embedding_csv(readout::delayed_embedding(truth_ts, delay),
                            sink.path("embedding_truth.csv"));
    io::write_embedding_csv(readout::delayed_embedding(pred_ts, delay),
                            sink.path("embedding_predicted.csv"));
  }

  std::string metrics;
  metrics += "metric,value\n";
  metrics += "train_nrmse," + io::fmt(pr.train_error) + "\n";
  metrics += "test_nrmse," + io::fmt(pr.test_error) + "\n";
  metrics += "mean_Q," + io::fmt(pr.mean_Q) + "\n";
  metrics += "trace_drift," + io::fmt(pr.trace_drift) + "\n";
  io::write_text(sink.path("metrics.csv"), metrics);
}

void cmd_quantumness(Resolver &r, OutputSink &sink) {
  std::string mode = r.s("mode", "state");
  uint64_t seed = r.u("seed", 0);
  int workers = r.i("workers", 0);

  if (mode == "state") {
    auto params = resolve_reservoir(r);
    auto rho = resolve_state(r, params.dim, "state");
    auto grid = resolve_grid(r);
    auto field = phase_space::wigner(rho, grid, workers);
    io::write_wigner_csv(field, sink.path("wigner.csv"));
    double I = phase_space::lee_jeong_trace(rho);
    std::string metrics = "metric,value\n";
    metrics += "lee_jeong_I," + io::fmt(I) + "\n";
    metrics += "Q," + io::fmt(std::max(I, 0.0)) + "\n";
    metrics +=
        "wigner_negativity," + io::fmt(phase_space::wigner_negativity(field)) +
        "\n";
    io::write_text(sink.path("metrics.csv"), metrics);
    return;
  }

  if (mode == "trajectory") {
    auto params = resolve_reservoir(r);
    auto noise = resolve_noise(r, seed);
    int steps = r.i("steps", 200);
    auto series = resolve_training_series(r, size_t(steps));
    series.samples.resize(size_t(steps));
    bool normalize = r.b("normalize", false);
    int wigner_every = r.i("wigner_every", 0);
    auto states = r.sl("states", {"coherent", "mix", "cat", "ket6"});
    fock::Complex alpha(r.d("alpha_re", 1.0), r.d("alpha_im", 1.0));
    auto grid = resolve_grid(r);

    for (const auto &name : states) {
      auto rho0 = experiments::named_initial_state(name, alpha, params.dim);
      auto traj =
          dynamics::propagate_quantum(rho0, series, params, noise, true);
      std::vector<double> curve;
      curve.reserve(traj.snapshots.size());
      for (const auto &snap : traj.snapshots)
        curve.push_back(phase_space::lee_jeong_trace(snap));
      if (normalize) {
        double peak = 0.0;
        for (double v : curve) peak = std::max(peak, std::abs(v));
        if (peak > 0.0)
          for (double &v : curve) v /= peak;
      }
      io::write_quantumness_csv(curve, params.dt_step,
                                sink.path("quantumness_" + name + ".csv"));
      if (wigner_every > 0) {
        for (size_t si = 0; si < traj.snapshots.size();
             si += size_t(wigner_every)) {
          char frame[64];
          std::snprintf(frame, sizeof frame, "wigner_%s_%04zu.csv",
                        name.c_str(), si);
          io::write_wigner_csv(
              phase_space::wigner(traj.snapshots[si], grid, workers),
              sink.path(frame));
        }
      }
    }
    return;
  }

  if (mode == "kappa-curves") {
    auto params = resolve_reservoir(r);
    auto noise = resolve_noise(r, seed);
    int steps = r.i("steps", 200);
    auto series = resolve_training_series(r, size_t(steps));
    series.samples.resize(size_t(steps));
    auto states = r.sl("states", {"coherent", "mix", "cat", "ket6"});
    auto kappas = r.dl("kappa_values", {0.05, 0.1, 0.2, 0.4});
    fock::Complex alpha(r.d("alpha_re", 1.0), r.d("alpha_im", 1.0));
    auto points = experiments::run_quantumness_vs_kappa(
        states, kappas, alpha, params, noise, series);
    std::string csv = "state,kappa,mean_Q\n";
    for (const auto &pt : points)
      csv += pt.state + "," + io::fmt(pt.kappa) + "," + io::fmt(pt.mean_Q) +
             "\n";
    io::write_text(sink.path("curves.csv"), csv);
    return;
  }

  fail(QRC_ERR_CONFIG, "unknown quantumness mode '" + mode + "'");
}

void cmd_sweep(Resolver &r, OutputSink &sink) {
  experiments::SweepGrid grid;
  uint64_t seed = r.u("seed", 0);
  grid.run_seed_base = seed;
  grid.pipeline = resolve_pipeline(r, seed);
  grid.K_values = r.dl("K_values", grid.K_values);
  grid.kappa_values = r.dl("kappa_values", grid.kappa_values);
  grid.ensemble.dims = r.il("ensemble_dims", grid.ensemble.dims);
  grid.ensemble.per_dim = r.i("ensemble_per_dim", grid.ensemble.per_dim);
  grid.ensemble.seed_base = r.u("ensemble_seed", grid.ensemble.seed_base);

  size_t need =
      grid.pipeline.window.required_length() + size_t(grid.pipeline.horizon);
  auto series = resolve_training_series(r, need);

  // stream rows as cells complete, then rewrite in deterministic order
  const std::string stream_path =
      (fs::path(sink.dir) / "records_stream.csv").string();
  std::ofstream stream(stream_path);
  const std::string header =
      "K,kappa,state_index,state_dim,state_seed,test_error,mean_Q,"
      "trace_drift,run_seed\n";
  stream << header;
  auto row = [](const experiments::SweepRecord &rec) {
    std::string line = io::fmt(rec.K) + "," + io::fmt(rec.kappa) + "," +
                       std::to_string(rec.state_index) + "," +
                       std::to_string(rec.state_dim) + "," +
                       std::to_string(rec.state_seed) + "," +
                       io::fmt(rec.test_error) + "," + io::fmt(rec.mean_Q) +
                       "," + io::fmt(rec.trace_drift) + "," +
                       std::to_string(rec.run_seed) + "\n";
    return line;
  };
  auto result = experiments::run_sweep(
      grid, series, [&](const experiments::SweepRecord &rec) {
        stream << row(rec);
        stream.flush();
      });
  stream.close();
  fs::remove(stream_path);

  std::string records = header;
  int failures = 0;
  for (const auto &rec : result.records) {
    records += row(rec);
    if (rec.failed) ++failures;
  }
  io::write_text(sink.path("records.csv"), records);

  std::string summary =
      "K,kappa,best_err,avg_err,worst_err,meanQ,stdQ,best_state,worst_state\n";
  for (const auto &s : result.summaries) {
    summary += io::fmt(s.K) + "," + io::fmt(s.kappa) + "," +
               io::fmt(s.best_err) + "," + io::fmt(s.avg_err) + "," +
               io::fmt(s.worst_err) + "," + io::fmt(s.mean_Q) + "," +
               io::fmt(s.std_Q) + "," + std::to_string(s.best_state) + "," +
               std::to_string(s.worst_state) + "\n";
  }
  io::write_text(sink.path("summary.csv"), summary);

  // best / worst occurrence counts per state
  std::map<int, std::pair<int, int>> counts;
  for (const auto &es : result.ensemble.states) counts[es.index] = {0, 0};
  for (const auto &s : result.summaries) {
    if (s.best_state) counts[s.best_state].first++;
    if (s.worst_state) counts[s.worst_state].second++;
  }
  std::string hist = "state_index,best_count,worst_count\n";
  for (const auto &[idx, c] : counts)
    hist += std::to_string(idx) + "," + std::to_string(c.first) + "," +
            std::to_string(c.second) + "\n";
  io::write_text(sink.path("histogram.csv"), hist);

  nlohmann::json ens = nlohmann::json::array();
  for (const auto &es : result.ensemble.states) {
    nlohmann::json js;
    js["index"] = es.index;
    js["d"] = es.dim;
    js["seed"] = es.seed;
    js["dim"] = es.state.dim;
    nlohmann::json amps = nlohmann::json::array();
    for (int n = 0; n < es.state.dim; ++n) {
      amps.push_back(es.state.amps(n).real());
      amps.push_back(es.state.amps(n).imag());
    }
    js["amps"] = amps;
    ens.push_back(js);
  }
  io::write_text(sink.path("ensemble.json"), ens.dump(2) + "\n");
  require(failures == 0 || failures < int(result.records.size()),
          QRC_ERR_INTERNAL, "every sweep cell failed");
  write_manifest("sweep", r, sink, result.ensemble.hash);
}

void cmd_noise_study(Resolver &r, OutputSink &sink) {
  uint64_t seed = r.u("seed", 0);
  experiments::NoiseStudyConfig cfg;
  cfg.mg_pipeline = resolve_pipeline(r, seed);
  // study defaults when keys are absent: dephasing + pump + input noise
  if (cfg.mg_pipeline.noise.lambda_dephase == 0.0 &&
      cfg.mg_pipeline.noise.lambda_pump == 0.0 &&
      cfg.mg_pipeline.noise.lambda_input == 0.0) {
    cfg.mg_pipeline.noise.lambda_dephase = 0.05;
    cfg.mg_pipeline.noise.lambda_pump = 0.05;
    cfg.mg_pipeline.noise.lambda_input = 0.02;
  }
  cfg.periodic_pipeline = cfg.mg_pipeline;
  cfg.periodic_pipeline.noise = {};
  cfg.periodic_pipeline.noise.seed = seed;
  cfg.periodic_pipeline.params.drive_alpha = r.d("periodic_alpha", 0.1);
  cfg.periodic_pipeline.params.K = r.d("periodic_K", 0.05);
  cfg.periodic_pipeline.params.kappa = r.d("periodic_kappa", 0.05);
  cfg.periodic_lambdas = r.dl("periodic_lambdas", cfg.periodic_lambdas);
  cfg.periodic_seeds = r.i("periodic_seeds", cfg.periodic_seeds);
  cfg.periodic_period = r.d("periodic_period", cfg.periodic_period);
  cfg.cat_alpha = {r.d("alpha_re", 1.0), r.d("alpha_im", 1.0)};

  size_t need = cfg.mg_pipeline.window.required_length() +
                size_t(cfg.mg_pipeline.horizon);
  auto series = resolve_training_series(r, need);
  auto result = experiments::run_noise_study(cfg, series);

  std::string mg = "case,train_nrmse,test_nrmse\n";
  mg += "noiseless," + io::fmt(result.clean_train_error) + "," +
        io::fmt(result.clean_test_error) + "\n";
  mg += "noisy," + io::fmt(result.noisy_train_error) + "," +
        io::fmt(result.noisy_test_error) + "\n";
  mg += "train_ratio," +
        io::fmt(result.noisy_train_error / result.clean_train_error) + ",\n";
  io::write_text(sink.path("noise_mg.csv"), mg);

  std::string per = "kind,state,lambda_input,seed,test_nrmse\n";
  for (const auto &row : result.periodic)
    per += row.kind + "," + row.state + "," + io::fmt(row.lambda_input) +
           "," + std::to_string(row.seed) + "," + io::fmt(row.test_error) +
           "\n";
  io::write_text(sink.path("noise_periodic.csv"), per);
}

void cmd_tau_study(Resolver &r, OutputSink &sink) {
  uint64_t seed = r.u("seed", 0);
  auto base = resolve_pipeline(r, seed);
  auto taus = r.dl("tau_values", {10.0, 17.0, 40.0});
  auto lens = r.il("N_values", {110, 200, 400});
  require(taus.size() == lens.size(), QRC_ERR_CONFIG,
          "tau_values and N_values must have equal lengths");
  // reproduce the under-sized input-length failure case
  std::vector<double> all_taus = taus;
  std::vector<int> all_lens = lens;
  if (taus.size() >= 3) {
    all_taus.push_back(taus.back());
    all_lens.push_back(lens[1]);
  }
  auto mg = resolve_mg(r);
  auto psi = resolve_state(r, base.params.dim);
  auto rows = experiments::run_tau_study(all_taus, all_lens, mg,
                                         r.d("mg_history", 1.2),
                                         r.d("mg_burn_in", 1000.0), base, psi);
  std::string csv = "tau,N,train_nrmse,test_nrmse\n";
  for (const auto &row : rows)
    csv += io::fmt(row.tau) + "," + std::to_string(row.input_len) + "," +
           io::fmt(row.train_error) + "," + io::fmt(row.test_error) + "\n";
  io::write_text(sink.path("tau_report.csv"), csv);
}

void cmd_rossler_study(Resolver &r, OutputSink &sink) {
  uint64_t seed = r.u("seed", 0);
  auto base = resolve_pipeline(r, seed);
  signals::RosslerParams p;
  p.a = r.d("ros_a", p.a);
  p.b = r.d("ros_b", p.b);
  p.c = r.d("ros_c", p.c);
  std::array<double, 3> init = {r.d("ros_x0", 0.0), r.d("ros_y0", 1.0),
                                r.d("ros_z0", 0.0)};
  double spacing = r.d("ros_spacing", 0.2);
  auto psi = resolve_state(r, base.params.dim);
  auto report = experiments::run_rossler(p, init, spacing, base, psi);

  std::string csv = "component,train_nrmse,test_nrmse\n";
  for (const auto &c : report.components)
    csv += c.component + "," + io::fmt(c.train_error) + "," +
           io::fmt(c.test_error) + "\n";
  io::write_text(sink.path("rossler_report.csv"), csv);

  std::string portrait = "x,y,x_pred,y_pred\n";
  for (const auto &row : report.phase_portrait)
    portrait += io::fmt(row[0]) + "," + io::fmt(row[1]) + "," +
                io::fmt(row[2]) + "," + io::fmt(row[3]) + "\n";
  io::write_text(sink.path("phase_portrait.csv"), portrait);
}

const std::vector<std::string> kReservoirKeys = {
    "K", "kappa", "drive_alpha", "dt_step", "d_t", "substeps"};
const std::vector<std::string> kNoiseKeys = {
    "lambda_dephase", "lambda_pump", "lambda_input", "noise_seed"};
const std::vector<std::string> kWindowKeys = {
    "N", "M", "T", "stride", "eta", "horizon", "feedback"};
const std::vector<std::string> kSeriesKeys = {
    "series",     "sample_spacing", "mg_beta",    "mg_gamma", "mg_m",
    "mg_tau",     "mg_history",     "mg_burn_in", "period",   "amplitude"};
const std::vector<std::string> kStateKeys = {"psi_init", "alpha_re",
                                             "alpha_im"};
const std::vector<std::string> kCommonKeys = {"seed", "workers"};

std::vector<std::string> concat(
    std::initializer_list<std::vector<std::string>> lists,
    std::initializer_list<std::string> extra = {}) {
  std::vector<std::string> out;
  for (const auto &l : lists) out.insert(out.end(), l.begin(), l.end());
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

} // namespace

const std::vector<std::string> &command_names() {
  static const std::vector<std::string> names = {
      "generate",  "train",     "quantumness",  "sweep",
      "noise-study", "tau-study", "rossler-study"};
  return names;
}

std::vector<std::string> command_keys(const std::string &command) {
  if (command == "generate")
    return concat({kSeriesKeys, kCommonKeys},
                  {"t_max", "noise_lambda", "ros_a", "ros_b", "ros_c",
                   "ros_x0", "ros_y0", "ros_z0"});
  if (command == "train")
    return concat({kReservoirKeys, kNoiseKeys, kWindowKeys, kSeriesKeys,
                   kStateKeys, kCommonKeys},
                  {"embed_delay"});
  if (command == "quantumness")
    return concat({kReservoirKeys, kNoiseKeys, kSeriesKeys, kStateKeys,
                   kCommonKeys},
                  {"mode", "state", "states", "kappa_values", "steps",
                   "normalize", "wigner_every", "grid_min", "grid_max",
                   "grid_points"});
  if (command == "sweep")
    return concat({kReservoirKeys, kNoiseKeys, kWindowKeys, kSeriesKeys,
                   kStateKeys, kCommonKeys},
                  {"K_values", "kappa_values", "ensemble_dims",
                   "ensemble_per_dim", "ensemble_seed"});
  if (command == "noise-study")
    return concat({kReservoirKeys, kNoiseKeys, kWindowKeys, kSeriesKeys,
                   kStateKeys, kCommonKeys},
                  {"periodic_alpha", "periodic_K", "periodic_kappa",
                   "periodic_lambdas", "periodic_seeds", "periodic_period"});
  if (command == "tau-study")
    return concat({kReservoirKeys, kNoiseKeys, kWindowKeys, kSeriesKeys,
                   kStateKeys, kCommonKeys},
                  {"tau_values", "N_values"});
  if (command == "rossler-study")
    return concat({kReservoirKeys, kNoiseKeys, kWindowKeys, kStateKeys,
                   kCommonKeys},
                  {"ros_a", "ros_b", "ros_c", "ros_x0", "ros_y0", "ros_z0",
                   "ros_spacing"});
  return {};
}

void run_command(const std::string &command, const config::RunConfig &config,
                 const std::string &out_dir) {
  auto keys = command_keys(command);
  require(!keys.empty(), QRC_ERR_CONFIG, "unknown command '" + command + "'");
  config.check_keys(keys, command);
  io::ensure_dir(out_dir);

  Resolver r(config);
  OutputSink sink;
  sink.dir = out_dir;

  if (command == "generate") cmd_generate(r, sink);
  else if (command == "train") cmd_train(r, sink);
  else if (command == "quantumness") cmd_quantumness(r, sink);
  else if (command == "sweep") { cmd_sweep(r, sink); return; }
  else if (command == "noise-study") cmd_noise_study(r, sink);
  else if (command == "tau-study") cmd_tau_study(r, sink);
  else if (command == "rossler-study") cmd_rossler_study(r, sink);
  write_manifest(command, r, sink);
}

} // namespace qrc::runs
