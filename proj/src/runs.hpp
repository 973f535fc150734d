#ifndef QRC_SRC_RUNS_HPP
#define QRC_SRC_RUNS_HPP

#include <string>
#include <vector>

#include "config.hpp"

namespace qrc::runs {

/// Commands exposed by the library and the CLI.
const std::vector<std::string> &command_names();

/// Configuration keys a command accepts (empty for unknown commands).
std::vector<std::string> command_keys(const std::string &command);

/// Executes one configured command, writing its CSV outputs plus
/// manifest.json into out_dir. Throws qrc::Error on failure.
void run_command(const std::string &command, const config::RunConfig &config,
                 const std::string &out_dir);

} // namespace qrc::runs

#endif
