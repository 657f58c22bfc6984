#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "turing/grid.hpp"
#include "turing/model.hpp"

namespace turing {

/// Parse failure; line is 0 for errors not tied to a line (missing keys, --set).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string key, const std::string& what);
  int line;
  std::string key;
};

enum class Mode { Equilibria, Dispersion, Band, Ode, Simulate, Sweep, LyapunovCheck, Table };
std::string_view to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view s);

struct InitConfig {
  EquilibriumKind base = EquilibriumKind::Coexistence;
  double amplitude = 2e-4;
  double noise_scale = 200.0;
  std::uint64_t seed = 1;
  std::array<int, 4> signs = {-1, +1, +1, -1};
  bool operator==(const InitConfig&) const = default;
};

struct RunConfig {
  double dt = 0.01;
  std::optional<double> t_end;
  int sample_every = 100;
  std::vector<double> snapshot_times;
  bool unsafe = false;
  bool reference_kernel = false;
  // ode
  State4 ode_init = {1, 2, 0, 0};
  int record_every = 1;
  // dispersion
  double k2_max = 3.0;
  int k2_samples = 301;
  // sweep
  std::string sweep_axis;
  std::vector<double> sweep_values;
  bool sweep_simulate = false;
  bool operator==(const RunConfig&) const = default;
};

struct OutputConfig {
  std::string dir = "out";
  bool csv = true;
  bool pgm = false;
  bool json = true;
  bool operator==(const OutputConfig&) const = default;
};

/// Optional [lyapunov] section. Constants not listed take the interval
/// midpoints chosen by default_lyapunov_config.
struct LyapunovSection {
  std::string target = "auto";  // auto | coexistence | prey_vanishing
  std::map<std::string, double> values;
  bool operator==(const LyapunovSection&) const = default;
};

struct ExperimentConfig {
  Mode mode = Mode::Equilibria;
  ModelParams params;
  GridSpec grid;
  InitConfig init;
  RunConfig run;
  OutputConfig output;
  std::optional<LyapunovSection> lyapunov;
  bool operator==(const ExperimentConfig&) const = default;
};

/// Flat INI-style document: a top-level `mode = ...` line, then sections
/// [params] [grid] [init] [run] [output] [lyapunov] of `key = value` lines.
/// '#' starts a comment. `overrides` are "section.key=value" strings applied
/// on top of the document (they may replace keys the document sets).
ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

/// Normalised document; parse_config(to_text(c)) == c.
std::string to_text(const ExperimentConfig& c);

}  // namespace turing
