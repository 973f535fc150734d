// qrc command-line front end. Built entirely on the public C API.
#include <cstdio>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrc/qrc.h"

namespace {

struct ConfigDeleter {
  void operator()(qrc_config *c) const { qrc_config_free(c); }
};
using ConfigPtr = std::unique_ptr<qrc_config, ConfigDeleter>;

std::vector<std::string> split_keys(const char *joined) {
  std::vector<std::string> keys;
  std::stringstream ss(joined ? joined : "");
  std::string item;
  while (std::getline(ss, item, ',')) keys.push_back(item);
  return keys;
}

struct CommandState {
  std::string out_dir = "qrc-out";
  std::string config_path;
  // flag values arrive as strings and override file values key by key
  std::vector<std::pair<std::string, std::unique_ptr<std::string>>> overrides;
};

int run_command(const std::string &name, const CommandState &state) {
  ConfigPtr config(qrc_config_create());
  if (!state.config_path.empty()) {
    qrc_status st = qrc_config_load_file(config.get(),
                                         state.config_path.c_str());
    if (st != QRC_OK) {
      std::fprintf(stderr, "qrc: %s: %s\n", qrc_status_name(st),
                   qrc_last_error());
      return 2;
    }
  }
  for (const auto &[key, value] : state.overrides) {
    if (value->empty()) continue;
    qrc_status st = qrc_config_set(config.get(), key.c_str(), value->c_str());
    if (st != QRC_OK) {
      std::fprintf(stderr, "qrc: %s: %s\n", qrc_status_name(st),
                   qrc_last_error());
      return 2;
    }
  }
  qrc_status st = qrc_run(name.c_str(), config.get(), state.out_dir.c_str());
  if (st != QRC_OK) {
    std::fprintf(stderr, "qrc %s: %s: %s\n", name.c_str(),
                 qrc_status_name(st), qrc_last_error());
    return 1;
  }
  std::printf("qrc %s: outputs written to %s\n", name.c_str(),
              state.out_dir.c_str());
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{std::string("qrc ") + qrc_version() +
               " - Kerr-oscillator reservoir computing simulator"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App *cmd;
    CommandState state;
    std::string name;
  };
  std::vector<std::unique_ptr<Sub>> subs;

  const std::pair<const char *, const char *> commands[] = {
      {"generate", "Generate a drive/target time series as CSV"},
      {"train", "Train the readout and run a closed-loop forecast"},
      {"quantumness", "Wigner fields and quantumness measures"},
      {"sweep", "Grid sweep over (K, kappa) with a Haar-state ensemble"},
      {"noise-study", "Forecasting under dephasing, pumping and input noise"},
      {"tau-study", "Delay-complexity study over tau and input length"},
      {"rossler-study", "Train the three Rossler components independently"},
  };

  for (const auto &[name, help] : commands) {
    auto sub = std::make_unique<Sub>();
    sub->name = name;
    sub->cmd = app.add_subcommand(name, help);
    sub->cmd->add_option("--out", sub->state.out_dir,
                         "Output directory (created if needed)");
    sub->cmd->add_option("--config", sub->state.config_path,
                         "Config file (key = value) or manifest.json");
    for (const auto &key : split_keys(qrc_command_keys(name))) {
      auto holder = std::make_unique<std::string>();
      sub->cmd->add_option("--" + key, *holder,
                           "Config override (key '" + key + "')");
      sub->state.overrides.emplace_back(key, std::move(holder));
    }
    subs.push_back(std::move(sub));
  }

  CLI11_PARSE(app, argc, argv);

  for (const auto &sub : subs)
    if (sub->cmd->parsed()) return run_command(sub->name, sub->state);
  return 0;
}
