#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "turing/config.hpp"
#include "turing/stability.hpp"

namespace turing {

struct TableRow {
  std::string label;
  std::map<std::string, double> overrides;  // parameter name -> value
  std::optional<Interval> reference;        // expected unstable k^2 interval
};

/// The 15 tabulated cross-diffusion rows with their printed bands, followed by
/// the self-diffusion-only row (no band expected). Each row sets all 16 parameters.
const std::vector<TableRow>& reference_table_rows();

struct TableResult {
  std::string label;
  std::string status;  // ok | no_coexistence | no_band | invalid
  std::optional<Interval> band;
  std::optional<Interval> reference;
  std::string message;
};

/// Unstable band of base.params with each row's overrides applied.
std::vector<TableResult> run_table_reproduction(const ExperimentConfig& base,
                                                const std::vector<TableRow>& rows);

/// label,status,k2_lo,k2_hi,ref_lo,ref_hi,abs_diff_lo,abs_diff_hi
std::string table_csv(const std::vector<TableResult>& rows);

struct SweepResult {
  double value;
  std::string status;  // ok | invalid | abort
  Regime regime = Regime::Indeterminate;
  std::vector<Interval> bands;
  std::optional<double> dominant_k2;
  std::optional<double> amplitude;  // spatial std of u1 at the end of the run
  std::string message;
};

/// One row per value, in input order. With base.run.sweep_simulate the pattern
/// of each value is simulated from base.init (same seed for every value).
/// Throws std::invalid_argument for an axis that is not a model parameter.
std::vector<SweepResult> run_sweep(const ExperimentConfig& base, const std::string& axis,
                                   const std::vector<double>& values);

/// value,status,regime,n_bands,k2_lo,k2_hi,dominant_k2,amplitude
std::string sweep_csv(const std::vector<SweepResult>& rows);

}  // namespace turing
