#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace turing {

/// State vector (u1, u2, v1, v2): predator, prey, prey chemical, predator chemical.
using State4 = std::array<double, 4>;

/// Raised when an operation receives parameters that fail validate_params().
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Constants of the predator-prey / two-chemical cross-diffusion system.
///
///   u1_t = div(d11 grad u1 + d12 grad v1) + u1 (sigma1 - lambda1 u1 + eta1 u2)
///   u2_t = div(d21 grad u2 - d22 grad v2) + u2 (sigma2 - lambda2 u2 - eta2 u1)
///   v1_t = d3 lap v1 + a1 u2 - b1 v1
///   v2_t = d4 lap v2 + a2 u1 - b2 v2
struct ModelParams {
  double d11 = 0, d12 = 0, d21 = 0, d22 = 0, d3 = 0, d4 = 0;
  double sigma1 = 0, sigma2 = 0;
  double lambda1 = 0, lambda2 = 0;
  double eta1 = 0, eta2 = 0;
  double a1 = 0, a2 = 0;
  double b1 = 0, b2 = 0;

  bool operator==(const ModelParams&) const = default;
};

/// Names of all sixteen fields, in declaration order.
const std::vector<std::string>& param_names();

/// Field access by name ("d11", "eta2", ...). Throws std::out_of_range for unknown names.
double& param_ref(ModelParams& p, std::string_view name);
double param_value(const ModelParams& p, std::string_view name);

struct Violation {
  std::string condition;  // e.g. "4*d11*d3 > d12^2"
  double lhs;
  double rhs;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

/// Positivity and parabolicity (4 d11 d3 > d12^2, 4 d21 d4 > d22^2).
/// Cross-diffusion and interaction coefficients may be zero.
ValidationResult validate_params(const ModelParams& p);

/// Throws InvalidParams with the full violation list when validation fails.
void require_valid(const ModelParams& p);

enum class EquilibriumKind { Trivial, PreyOnly, PredatorOnly, Coexistence };

std::string_view to_string(EquilibriumKind k);

struct Equilibrium {
  EquilibriumKind kind = EquilibriumKind::Trivial;
  State4 state{};

  double u1() const { return state[0]; }
  double u2() const { return state[1]; }
  double v1() const { return state[2]; }
  double v2() const { return state[3]; }
};

/// Reaction terms (no diffusion).
State4 reaction_rhs(const ModelParams& p, const State4& s);

/// Largest component residual of reaction_rhs at s, each divided by the largest
/// magnitude of the terms that make up that component.
double relative_residual(const ModelParams& p, const State4& s);

/// Residual threshold for accepting a state as an equilibrium.
inline constexpr double kEquilibriumTolerance = 1e-12;

/// Positive coexistence requires lambda1*sigma2 - eta2*sigma1 > 0.
bool coexistence_exists(const ModelParams& p);

/// Trivial, prey-only, predator-only and (when it exists) coexistence states.
std::vector<Equilibrium> equilibria(const ModelParams& p);

std::optional<Equilibrium> coexistence(const ModelParams& p);

/// The prey-vanishing state (sigma1/lambda1, 0, 0, a2 sigma1/(lambda1 b2)).
Equilibrium predator_only(const ModelParams& p);

enum class Regime { CoexistenceStable, PreyExtinction, Borderline, Indeterminate };

std::string_view to_string(Regime r);

struct SmallnessCheck {
  std::string name;
  bool satisfied;
  double lhs;
  double rhs;
};

struct SupBounds {
  double u1;
  double u2;
};

struct RegimeReport {
  Regime regime = Regime::Indeterminate;
  double threshold = 0;  // lambda1*sigma2/sigma1, compared against eta2
  SupBounds sup{};
  std::vector<SmallnessCheck> smallness_checks;
};

/// Checks the hypotheses of the global-stability results: the predation
/// threshold and the cross-diffusion smallness inequalities, which depend on
/// sup-norm estimates of u1, u2. Without explicit bounds the coexistence values
/// (or sigma_i/lambda_i) are used.
RegimeReport classify_regime(const ModelParams& p,
                             std::optional<SupBounds> sup_bounds = std::nullopt);

}  // namespace turing
