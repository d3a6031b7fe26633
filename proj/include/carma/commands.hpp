#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "carma/config.hpp"

namespace carma {

struct CommandResult {
  std::vector<std::filesystem::path> files;
  bool all_pass = true;  // statistical checks only; always true for non-test commands
};

/// Output root for a configuration: <out>/<label or cfg-hash>.
std::filesystem::path output_root(const RunConfig& config);
/// Directory name of a ladder level: <T>_<h>.
std::string level_directory(const LadderLevel& level);
/// First stream of the (level, driver) setting; settings never share streams.
std::uint64_t setting_stream_base(std::size_t level, std::size_t driver);

// Each command writes its files and a short summary to `log`.
CommandResult cmd_spectral(const RunConfig& config, std::ostream& log);
CommandResult cmd_simulate(const RunConfig& config, std::ostream& log);
CommandResult cmd_mc(const RunConfig& config, std::ostream& log);
CommandResult cmd_covcheck(const RunConfig& config, std::ostream& log);
CommandResult cmd_convergence(const RunConfig& config, std::ostream& log);

}  // namespace carma
