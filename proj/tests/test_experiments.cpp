#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "config.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "io.hpp"
#include "phase_space.hpp"
#include "runs.hpp"
#include "support.hpp"

using namespace qrc;
namespace fs = std::filesystem;

namespace {

// Small, fast pipeline configuration for semantics tests.
experiments::PipelineConfig small_pipeline() {
  experiments::PipelineConfig cfg;
  cfg.params.dim = 12;
  cfg.params.substeps = 5;
  cfg.window = {40, 10, 4, 25};
  cfg.eta = 0.01;
  cfg.horizon = 10;
  cfg.workers = 2;
  return cfg;
}

signals::TimeSeries small_drive(const experiments::PipelineConfig &cfg) {
  size_t need = cfg.window.required_length() + size_t(cfg.horizon);
  return signals::mackey_glass({}, 1.2, 1000.0, double(need) + 2.0, 1.0);
}

} // namespace

TEST_CASE("ensemble construction") {
  experiments::EnsembleSpec spec;
  auto ens = experiments::build_ensemble(spec, 25);

  SUBCASE("5 states per dimension, dims 4..10, indices 1..35") {
    CHECK(ens.states.size() == 35);
    CHECK(ens.states.front().index == 1);
    CHECK(ens.states.back().index == 35);
    CHECK(ens.states.front().dim == 4);
    CHECK(ens.states.back().dim == 10);
  }

  SUBCASE("content hash is reproducible and seed-sensitive") {
    auto again = experiments::build_ensemble(spec, 25);
    CHECK(again.hash == ens.hash);
    experiments::EnsembleSpec other = spec;
    other.seed_base = 2000;
    CHECK(experiments::build_ensemble(other, 25).hash != ens.hash);
  }

  SUBCASE("states regenerate bit-exactly from recorded seeds") {
    for (const auto &es : ens.states) {
      auto psi = fock::haar_random_state(es.dim, 25, es.seed);
      CHECK((psi.amps - es.state.amps).norm() == 0.0);
    }
  }
}

TEST_CASE("sweep semantics") {
  experiments::SweepGrid grid;
  grid.K_values = {0.05};
  grid.kappa_values = {0.1};
  grid.ensemble.dims = {5};
  grid.ensemble.per_dim = 1;
  grid.pipeline = small_pipeline();
  auto drive = small_drive(grid.pipeline);

  SUBCASE("1x1 grid with one state equals the manual pipeline") {
    auto result = experiments::run_sweep(grid, drive);
    REQUIRE(result.records.size() == 1);
    const auto &rec = result.records[0];
    CHECK_FALSE(rec.failed);

    auto cfg = grid.pipeline;
    cfg.params.K = 0.05;
    cfg.params.kappa = 0.1;
    cfg.noise.seed = rec.run_seed;
    auto psi = fock::DensityMatrix::pure(
        fock::haar_random_state(5, cfg.params.dim,
                                result.ensemble.states[0].seed));
    auto manual = experiments::run_pipeline(drive, psi, cfg);
    CHECK(rec.test_error == manual.test_error);
    CHECK(rec.mean_Q == manual.mean_Q);
  }

  SUBCASE("summaries order best <= avg <= worst") {
    experiments::SweepGrid g2 = grid;
    g2.K_values = {0.02, 0.05};
    g2.kappa_values = {0.05, 0.3};
    g2.ensemble.dims = {4, 6};
    g2.ensemble.per_dim = 2;
    auto result = experiments::run_sweep(g2, drive);
    CHECK(result.summaries.size() == 4);
    for (const auto &s : result.summaries) {
      CHECK(s.best_err <= s.avg_err);
      CHECK(s.avg_err <= s.worst_err);
      CHECK(s.failed == 0);
      CHECK(s.best_state >= 1);
      CHECK(s.worst_state >= 1);
    }
  }

  SUBCASE("records stream and rerun bit-exactly") {
    int streamed = 0;
    auto result = experiments::run_sweep(
        grid, drive, [&](const experiments::SweepRecord &) { ++streamed; });
    CHECK(streamed == 1);
    auto again = experiments::run_sweep(grid, drive);
    CHECK(result.records[0].test_error == again.records[0].test_error);
    CHECK(result.records[0].mean_Q == again.records[0].mean_Q);
    CHECK(result.records[0].run_seed == again.records[0].run_seed);
  }
}

TEST_CASE("named initial states") {
  CHECK(experiments::named_initial_state("ket6", {1, 1}, 12).entries(6, 6)
            .real() == doctest::Approx(1.0));
  auto mix = experiments::named_initial_state("mix", {1, 1}, 16);
  mix.check_valid();
  CHECK_THROWS_AS(experiments::named_initial_state("bogus", {1, 1}, 12),
                  Error);
}

TEST_CASE("quantumness vs kappa runs the full state family") {
  auto drive = signals::mackey_glass({}, 1.2, 1000.0, 50.0, 1.0);
  dynamics::ReservoirParams params;
  params.dim = 16;
  params.substeps = 10;
  dynamics::NoiseConfig noise;
  noise.lambda_pump = 0.1;
  auto points = experiments::run_quantumness_vs_kappa(
      {"coherent", "mix", "cat", "ket6"}, {0.05, 0.4}, {1.0, 1.0}, params,
      noise, drive);
  CHECK(points.size() == 8);
  // loss suppresses the average quantumness for every family
  for (size_t i = 0; i < points.size(); i += 2) {
    CHECK(points[i].kappa == 0.05);
    CHECK(points[i + 1].kappa == 0.4);
    CHECK(points[i].mean_Q > points[i + 1].mean_Q);
    CHECK(points[i].mean_Q >= 0.0);
  }
}

TEST_CASE("noise study zero-strength case matches the clean pipeline") {
  experiments::NoiseStudyConfig cfg;
  cfg.mg_pipeline = small_pipeline();
  cfg.mg_pipeline.noise = {}; // all strengths zero
  cfg.periodic_pipeline = small_pipeline();
  cfg.periodic_pipeline.params.drive_alpha = 0.1;
  cfg.periodic_lambdas = {0.0};
  cfg.periodic_seeds = 1;
  auto drive = small_drive(cfg.mg_pipeline);
  auto result = experiments::run_noise_study(cfg, drive);
  CHECK(result.noisy_train_error == result.clean_train_error);
  CHECK(result.noisy_test_error == result.clean_test_error);
  CHECK(result.periodic.size() == 4); // 2 kinds x 2 states x 1 lambda x 1 seed
}

TEST_CASE("tau study pairs inputs with delays") {
  auto cfg = small_pipeline();
  cfg.window.T = 10;
  auto psi = fock::DensityMatrix::pure(fock::fock_state(6, cfg.params.dim));
  auto rows = experiments::run_tau_study({10.0, 17.0}, {30, 40}, {}, 1.2,
                                         200.0, cfg, psi);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].tau == 10.0);
  CHECK(rows[0].input_len == 30);
  CHECK(rows[1].input_len == 40);
  for (const auto &row : rows) {
    CHECK(std::isfinite(row.train_error));
    CHECK(std::isfinite(row.test_error));
  }
  CHECK_THROWS_AS(
      experiments::run_tau_study({10.0}, {30, 40}, {}, 1.2, 100.0, cfg, psi),
      Error);
}

TEST_CASE("rossler study trains components independently") {
  auto cfg = small_pipeline();
  cfg.window = {30, 10, 6, 20};
  cfg.params.drive_alpha = 1.0;
  cfg.params.kappa = 0.2;
  cfg.params.K = 0.01;
  auto psi = fock::DensityMatrix::pure(fock::fock_state(6, cfg.params.dim));

  SUBCASE("constant z component is trivially perfect") {
    signals::RosslerParams p;
    p.b = 0.0;
    auto report = experiments::run_rossler(p, {1.0, 1.0, 0.0}, 0.25, cfg, psi);
    REQUIRE(report.components.size() == 3);
    CHECK(report.components[2].component == "z");
    CHECK(report.components[2].test_error == 0.0);
    CHECK(report.components[0].test_error > 0.0);
  }

  SUBCASE("standard parameters produce three finite reports and a portrait") {
    auto report = experiments::run_rossler({}, {0.0, 1.0, 0.0}, 0.25, cfg,
                                           psi);
    CHECK(report.components.size() == 3);
    for (const auto &c : report.components)
      CHECK(std::isfinite(c.test_error));
    CHECK(report.phase_portrait.size() == size_t(cfg.horizon));
  }
}

TEST_CASE("run layer writes manifests that replay byte-for-byte") {
  config::RunConfig cfg;
  cfg.set("d_t", "10");
  cfg.set("substeps", "5");
  cfg.set("N", "30");
  cfg.set("M", "8");
  cfg.set("T", "6");
  cfg.set("stride", "3");
  cfg.set("horizon", "8");
  auto dir1 = qrc_test::make_tmp_dir("run1");
  auto dir2 = qrc_test::make_tmp_dir("run2");
  runs::run_command("train", cfg, dir1);

  config::RunConfig replay;
  replay.load_file(dir1 + "/manifest.json");
  runs::run_command("train", replay, dir2);

  int compared = 0;
  for (const auto &entry : fs::directory_iterator(dir1)) {
    auto name = entry.path().filename().string();
    CHECK(qrc_test::slurp(entry.path().string()) ==
          qrc_test::slurp(dir2 + "/" + name));
    ++compared;
  }
  CHECK(compared >= 5);
}

TEST_CASE("run layer rejects unknown keys and commands") {
  config::RunConfig cfg;
  cfg.set("bogus_key", "1");
  auto dir = qrc_test::make_tmp_dir("runbad");
  CHECK_THROWS_WITH_AS(runs::run_command("train", cfg, dir),
                       doctest::Contains("bogus_key"), Error);
  config::RunConfig empty;
  CHECK_THROWS_AS(runs::run_command("no-such-command", empty, dir), Error);
}

TEST_CASE("generate command emits series CSV and manifest") {
  config::RunConfig cfg;
  cfg.set("series", "sine");
  cfg.set("t_max", "20");
  cfg.set("period", "4");
  auto dir = qrc_test::make_tmp_dir("gen");
  runs::run_command("generate", cfg, dir);
  auto csv = qrc_test::slurp(dir + "/series.csv");
  CHECK(csv.rfind("t,value\n", 0) == 0);
  auto manifest = qrc_test::slurp(dir + "/manifest.json");
  CHECK(manifest.find("\"command\": \"generate\"") != std::string::npos);
  CHECK(manifest.find("series.csv") != std::string::npos);
}
