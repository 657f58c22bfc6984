#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "turing/config.hpp"
#include "turing/lyapunov.hpp"

namespace turing {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitConfig = 2,      // unreadable or malformed config, bad CLI arguments
  kExitValidation = 3,  // parameter/grid validation, CFL guard, missing equilibrium
  kExitAbort = 4,       // simulation aborted (negative or non-finite state)
};

struct AppArgs {
  std::string mode;
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::string> out_dir;
};

/// Default constants overlaid with the values listed in the section.
LyapunovConfig resolve_lyapunov(const ModelParams& p, const LyapunovSection& s);

/// Runs one experiment, writing its files under out_dir and a summary to log.
/// Throws on failure; see run_app for the exit-code mapping.
void execute(const ExperimentConfig& c, const std::filesystem::path& out_dir, std::ostream& log);

/// Reads the config, applies the CLI mode and --set overrides, runs it and maps
/// errors to exit codes (messages go to err).
int run_app(const AppArgs& a, std::ostream& out, std::ostream& err);

}  // namespace turing
