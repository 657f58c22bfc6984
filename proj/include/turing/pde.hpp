#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "turing/grid.hpp"
#include "turing/model.hpp"
#include "turing/ode.hpp"

namespace turing {

/// Random perturbation of an equilibrium: field_q = base_q + sign_q * amplitude * psi,
/// with one psi per cell drawn uniformly from [0, noise_scale] by SplitMix64(seed)
/// in storage order. The same psi is shared by all four fields.
struct InitSpec {
  Equilibrium base;
  double amplitude = 2e-4;
  double noise_scale = 200.0;
  std::uint64_t seed = 1;
  std::array<int, 4> signs = {-1, +1, +1, -1};
};

/// Rejects (std::invalid_argument) any negative initial entry.
FieldSet init_fields(const GridSpec& g, const InitSpec& s);

/// Non-empty when amplitude*noise_scale is not small next to the smallest
/// nonzero component of the base state.
std::optional<std::string> init_warning(const InitSpec& s);

/// dt * (2/dx^2 + 2/dy^2) * R, where R is the largest row sum of |diffusion
/// coefficients|. The explicit scheme is run only when this is <= kCflLimit.
double cfl_number(const ModelParams& p, const GridSpec& g, double dt);
inline constexpr double kCflLimit = 0.9;

enum class KernelKind { Reference, Parallel };

/// One explicit step, returning the new fields. Throws SimulationAbort on
/// NaN/Inf or entries below -1e-6, and std::invalid_argument when the CFL
/// guard fails (unless unsafe).
FieldSet step(const ModelParams& p, const FieldSet& f, double dt, const GridSpec& g,
              bool unsafe = false, KernelKind kernel = KernelKind::Parallel);

/// Values of a tracked Lyapunov pair (f, E) for one state.
struct FunctionalValues {
  double f;
  double E;
};
using FunctionalTracker = std::function<FunctionalValues(const FieldSet&)>;

struct FieldStats {
  double min, max, mean;
};

struct DiagnosticsRecord {
  double time;
  std::array<FieldStats, 4> stats;
  double mass_u1, mass_u2;
  std::array<double, 4> l2sq;  // squared L2 distance of each field to the reference state
  double std_u1;
  std::optional<FunctionalValues> lyapunov;
};

struct DiagnosticsSeries {
  GridSpec grid;
  State4 reference{};
  std::vector<DiagnosticsRecord> records;
};

DiagnosticsRecord diagnose(const FieldSet& f, const GridSpec& g, const State4& reference,
                           const FunctionalTracker& tracker = {});

struct RunOptions {
  int sample_every = 100;
  std::vector<double> snapshot_times;
  /// Distances in the diagnostics are measured to this state (default: the initial base).
  std::optional<State4> reference;
  FunctionalTracker tracker;
  bool unsafe = false;
  KernelKind kernel = KernelKind::Parallel;
};

struct Snapshot {
  double requested_time;
  FieldSet fields;
};

struct RunResult {
  FieldSet final_fields;
  DiagnosticsSeries diagnostics;
  std::vector<Snapshot> snapshots;
  double min_value_seen;  // smallest entry over all fields and steps, including t = 0
  long long steps;
};

/// Runs the explicit scheme from init_fields(g, s) for round(t_end/dt) steps.
/// Diagnostics are taken at step 0, every sample_every steps and at the end.
/// Step aborts propagate as SimulationAbort naming the time and the cell.
RunResult run(const ModelParams& p, const GridSpec& g, const InitSpec& s, double dt, double t_end,
              const RunOptions& opt = {});

/// Same, from explicit initial fields.
RunResult run_from(const ModelParams& p, const GridSpec& g, FieldSet init, const State4& base,
                   double dt, double t_end, const RunOptions& opt = {});

struct SpectrumBin {
  double k2;  // bin centre (b * dk)^2
  double power;
  int modes;
};

/// Power of the cosine (Neumann) modes of a mean-free field, binned radially
/// in k = pi * sqrt(m^2/Lx^2 + n^2/Ly^2) with bin width dk = pi / max(Lx, Ly).
struct RadialSpectrum {
  std::vector<SpectrumBin> bins;
  double dk = 0;
  std::optional<std::size_t> dominant;  // empty when all power vanishes

  std::optional<double> dominant_k2() const {
    if (!dominant) return std::nullopt;
    return bins[*dominant].k2;
  }
};

/// Mode amplitudes: for f = sum A_mn cos(m pi x/Lx) cos(n pi y/Ly), power_mn = A_mn^2.
RadialSpectrum radial_spectrum(const std::vector<double>& field, const GridSpec& g);

/// Amplitude of the single cosine mode (m, n) in a field.
double cosine_mode_amplitude(const std::vector<double>& field, const GridSpec& g, int m, int n);

struct MassBoundReport {
  double worst_ratio_u2 = 0;        // max_t  int u2 / M2
  double worst_ratio_combined = 0;  // max_t (int u1 + eta1/eta2 int u2) / M1 (NaN if eta2 == 0)
  std::size_t worst_record = 0;
  bool ok = true;
};

/// Checks the a-priori mass bounds
///   int u2 <= max(int u2(0), sigma2 |Omega| / lambda2)
///   int u1 + (eta1/eta2) int u2 <= max(X(0), |Omega|/4 ((sigma1+1)^2/lambda1
///                                         + eta1/(eta2 lambda2) (sigma2+1)^2))
/// with a relative slack of 1e-6, on every record.
MassBoundReport mass_bound_check(const DiagnosticsSeries& d, const ModelParams& p);

}  // namespace turing
