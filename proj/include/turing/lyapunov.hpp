#pragma once

#include <optional>
#include <string>
#include <vector>

#include "turing/grid.hpp"
#include "turing/model.hpp"
#include "turing/pde.hpp"

namespace turing {

/// Weights of the two energy functionals and the auxiliary splitting constants
/// that make their time derivatives negative.
struct LyapunovConfig {
  double delta1 = 1, delta2 = 1;  // coexistence functional E1
  double delta3 = 1, delta4 = 1;  // prey-vanishing functional E2
  double gamma1 = 0, gamma2 = 0, eta3 = 0, eta4 = 0;
  double sup_u1 = 0, sup_u2 = 0;

  bool operator==(const LyapunovConfig&) const = default;
};

struct AdmissibleInterval {
  std::string name;
  double lo, hi;
  double value;
  bool inside;  // lo < value < hi
  bool empty;   // lo >= hi: no admissible value exists
};

/// Admissible open intervals for every constant of c, evaluated for p.
/// The delta1/delta2 entries are only produced when coexistence exists.
std::vector<AdmissibleInterval> admissible_intervals(const ModelParams& p, const LyapunovConfig& c);

struct DefaultLyapunov {
  LyapunovConfig config;
  std::vector<AdmissibleInterval> intervals;
  bool flagged;  // some interval was empty and its lower end * 1.01 was used
};

/// Picks each constant at the geometric midpoint of its interval (arithmetic
/// midpoint when the lower end is 0). Sup-norm estimates default to the
/// coexistence values, or sigma_i/lambda_i without coexistence.
DefaultLyapunov default_lyapunov_config(const ModelParams& p,
                                        std::optional<SupBounds> sup = std::nullopt);

/// u - ue - ue ln(u/ue), accurate for u close to ue.
double entropy_density(double u, double ue);

/// Coexistence energy
///   int H(u1; u1*) + eta1/eta2 int H(u2; u2*) + delta1/2 int (v1-v1*)^2 + delta2/2 int (v2-v2*)^2.
/// Requires strictly positive u1, u2 (std::invalid_argument otherwise).
double E1(const FieldSet& f, const ModelParams& p, const Equilibrium& e, const LyapunovConfig& c,
          const GridSpec& g);

/// Sum of the squared L2 distances of the four fields to e.
double f1(const FieldSet& f, const Equilibrium& e, const GridSpec& g);

/// Prey-vanishing energy around (s, 0, 0, a2 s / b2), s = sigma1/lambda1:
///   int H(u1; s) + eta1/eta2 int u2 + delta3/2 int v1^2 + delta4/2 int (v2 - a2 s/b2)^2.
double E2(const FieldSet& f, const ModelParams& p, const LyapunovConfig& c, const GridSpec& g);
double f2(const FieldSet& f, const ModelParams& p, const GridSpec& g);

/// Tracker for run(): (f1, E1) around coexistence or (f2, E2) around the
/// prey-vanishing state, depending on `coexistence_target`.
FunctionalTracker make_tracker(const ModelParams& p, const LyapunovConfig& c, const GridSpec& g,
                               bool coexistence_target);

struct LinearFit {
  double slope = 0, intercept = 0, r2 = 0;
};

/// Least squares y = slope*x + intercept. R^2 is 1 when y has no variance.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct DecayOptions {
  double burn_in = 0;
  /// Samples with E below floor_fraction * E(first sample after burn-in) are
  /// excluded from the fits (they sit at the round-off floor of the fields).
  double floor_fraction = 1e-16;
  double slack = 1e-12;
};

enum class DecayKind { Exponential, Algebraic, None };

struct DecayReport {
  std::size_t samples = 0;      // after burn-in
  std::size_t fit_samples = 0;  // after burn-in and above the floor
  double monotone_fraction = 0;
  LinearFit exponential;  // ln E vs t
  LinearFit algebraic;    // 1/E vs t
  DecayKind expected = DecayKind::None;
  double epsilon_estimate = 0;  // -slope of the exponential fit
};

/// Monotonicity and rate fits of E(t). Throws std::invalid_argument with fewer
/// than 10 samples beyond the burn-in.
DecayReport decay_report(const std::vector<double>& t, const std::vector<double>& E, Regime regime,
                         const DecayOptions& opt = {});
DecayReport decay_report(const DiagnosticsSeries& series, Regime regime,
                         const DecayOptions& opt = {});

/// key = value text rendering.
std::string to_text(const DecayReport& r);

}  // namespace turing
