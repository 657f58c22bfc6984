#include "turing/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace turing {

namespace {

struct NamedField {
  const char* name;
  double ModelParams::*member;
};

constexpr NamedField kFields[] = {
    {"d11", &ModelParams::d11},         {"d12", &ModelParams::d12},
    {"d21", &ModelParams::d21},         {"d22", &ModelParams::d22},
    {"d3", &ModelParams::d3},           {"d4", &ModelParams::d4},
    {"sigma1", &ModelParams::sigma1},   {"sigma2", &ModelParams::sigma2},
    {"lambda1", &ModelParams::lambda1}, {"lambda2", &ModelParams::lambda2},
    {"eta1", &ModelParams::eta1},       {"eta2", &ModelParams::eta2},
    {"a1", &ModelParams::a1},           {"a2", &ModelParams::a2},
    {"b1", &ModelParams::b1},           {"b2", &ModelParams::b2},
};

// Coefficients that may vanish: cross-diffusion and interspecific interaction.
bool may_be_zero(std::string_view name) {
  return name == "d12" || name == "d22" || name == "eta1" || name == "eta2";
}

double max_abs(std::initializer_list<double> xs) {
  double m = 0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

const std::vector<std::string>& param_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& f : kFields) n.emplace_back(f.name);
    return n;
  }();
  return names;
}

double& param_ref(ModelParams& p, std::string_view name) {
  for (const auto& f : kFields)
    if (name == f.name) return p.*(f.member);
  throw std::out_of_range("unknown model parameter '" + std::string(name) + "'");
}

double param_value(const ModelParams& p, std::string_view name) {
  return param_ref(const_cast<ModelParams&>(p), name);
}

std::string ValidationResult::describe() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    const auto& v = violations[i];
    if (i) os << "; ";
    os << "violated " << v.condition << " (" << v.lhs << " vs " << v.rhs << ")";
  }
  return os.str();
}

ValidationResult validate_params(const ModelParams& p) {
  ValidationResult r;
  for (const auto& f : kFields) {
    const double x = p.*(f.member);
    const bool zero_ok = may_be_zero(f.name);
    const bool good = std::isfinite(x) && (zero_ok ? x >= 0 : x > 0);
    if (!good)
      r.violations.push_back({std::string(f.name) + (zero_ok ? " >= 0" : " > 0"), x, 0.0});
  }
  const double lhs1 = 4 * p.d11 * p.d3, rhs1 = p.d12 * p.d12;
  if (!(lhs1 > rhs1)) r.violations.push_back({"4*d11*d3 > d12^2", lhs1, rhs1});
  const double lhs2 = 4 * p.d21 * p.d4, rhs2 = p.d22 * p.d22;
  if (!(lhs2 > rhs2)) r.violations.push_back({"4*d21*d4 > d22^2", lhs2, rhs2});
  return r;
}

void require_valid(const ModelParams& p) {
  const auto v = validate_params(p);
  if (!v.ok()) throw InvalidParams("invalid model parameters: " + v.describe());
}

std::string_view to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Trivial: return "trivial";
    case EquilibriumKind::PreyOnly: return "prey_only";
    case EquilibriumKind::PredatorOnly: return "predator_only";
    case EquilibriumKind::Coexistence: return "coexistence";
  }
  return "?";
}

State4 reaction_rhs(const ModelParams& p, const State4& s) {
  const auto [u1, u2, v1, v2] = s;
  return {u1 * (p.sigma1 - p.lambda1 * u1 + p.eta1 * u2),
          u2 * (p.sigma2 - p.lambda2 * u2 - p.eta2 * u1),
          p.a1 * u2 - p.b1 * v1,
          p.a2 * u1 - p.b2 * v2};
}

double relative_residual(const ModelParams& p, const State4& s) {
  const auto [u1, u2, v1, v2] = s;
  const State4 r = reaction_rhs(p, s);
  const std::array<double, 4> scale = {
      max_abs({u1 * p.sigma1, p.lambda1 * u1 * u1, p.eta1 * u1 * u2}),
      max_abs({u2 * p.sigma2, p.lambda2 * u2 * u2, p.eta2 * u1 * u2}),
      max_abs({p.a1 * u2, p.b1 * v1}),
      max_abs({p.a2 * u1, p.b2 * v2}),
  };
  double worst = 0;
  for (int i = 0; i < 4; ++i) {
    if (scale[i] == 0) {
      if (r[i] != 0) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, std::abs(r[i]) / scale[i]);
  }
  return worst;
}

bool coexistence_exists(const ModelParams& p) {
  return p.lambda1 * p.sigma2 - p.eta2 * p.sigma1 > 0;
}

std::optional<Equilibrium> coexistence(const ModelParams& p) {
  require_valid(p);
  if (!coexistence_exists(p)) return std::nullopt;
  const double den = p.lambda1 * p.lambda2 + p.eta1 * p.eta2;
  const double u1 = (p.lambda2 * p.sigma1 + p.eta1 * p.sigma2) / den;
  const double u2 = (p.lambda1 * p.sigma2 - p.eta2 * p.sigma1) / den;
  return Equilibrium{EquilibriumKind::Coexistence,
                     {u1, u2, p.a1 * u2 / p.b1, p.a2 * u1 / p.b2}};
}

Equilibrium predator_only(const ModelParams& p) {
  const double u1 = p.sigma1 / p.lambda1;
  return {EquilibriumKind::PredatorOnly, {u1, 0.0, 0.0, p.a2 * u1 / p.b2}};
}

std::vector<Equilibrium> equilibria(const ModelParams& p) {
  require_valid(p);
  std::vector<Equilibrium> out;
  out.push_back({EquilibriumKind::Trivial, {0, 0, 0, 0}});
  const double u2 = p.sigma2 / p.lambda2;
  out.push_back({EquilibriumKind::PreyOnly, {0.0, u2, p.a1 * u2 / p.b1, 0.0}});
  out.push_back(predator_only(p));
  if (auto c = coexistence(p)) out.push_back(*c);
  return out;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::CoexistenceStable: return "coexistence_stable";
    case Regime::PreyExtinction: return "prey_extinction";
    case Regime::Borderline: return "borderline";
    case Regime::Indeterminate: return "indeterminate";
  }
  return "?";
}

RegimeReport classify_regime(const ModelParams& p, std::optional<SupBounds> sup_bounds) {
  require_valid(p);
  RegimeReport rep;
  rep.threshold = p.lambda1 * p.sigma2 / p.sigma1;

  if (sup_bounds) {
    if (!(sup_bounds->u1 > 0) || !(sup_bounds->u2 > 0))
      throw std::invalid_argument("sup-norm bounds must be positive");
    rep.sup = *sup_bounds;
  } else if (auto c = coexistence(p)) {
    rep.sup = {c->u1(), c->u2()};
  } else {
    rep.sup = {p.sigma1 / p.lambda1, p.sigma2 / p.lambda2};
  }

  const double s1sq = rep.sup.u1 * rep.sup.u1;
  const double s2sq = rep.sup.u2 * rep.sup.u2;
  const double d12sq = p.d12 * p.d12;
  const double d22sq = p.d22 * p.d22;
  auto add = [&](std::string name, double lhs, double rhs) {
    rep.smallness_checks.push_back({std::move(name), lhs < rhs, lhs, rhs});
  };

  // Exact comparison of the two products decides the branch.
  const double predation = p.eta2 * p.sigma1;
  const double growth = p.lambda1 * p.sigma2;

  if (predation < growth) {
    const double den = p.lambda1 * p.lambda2 + p.eta1 * p.eta2;
    add("coexistence: d12^2 < 16 d11 d3 b1 eta1 lambda2 (lambda1 lambda2 + eta1 eta2) |u1|^2 / "
        "(a1^2 eta2 (lambda2 sigma1 + eta1 sigma2))",
        d12sq,
        16 * p.d11 * p.d3 * p.b1 * p.eta1 * p.lambda2 * den * s1sq /
            (p.a1 * p.a1 * p.eta2 * (p.lambda2 * p.sigma1 + p.eta1 * p.sigma2)));
    add("coexistence: d12^2 < 4 d11 d3", d12sq, 4 * p.d11 * p.d3);
    add("coexistence: d22^2 < 16 d21 d4 b2 eta2 lambda1 (lambda1 lambda2 + eta1 eta2) |u2|^2 / "
        "(a2^2 eta1 (lambda1 sigma2 - eta2 sigma1))",
        d22sq,
        16 * p.d21 * p.d4 * p.b2 * p.eta2 * p.lambda1 * den * s2sq /
            (p.a2 * p.a2 * p.eta1 * (growth - predation)));
    add("coexistence: d22^2 < 4 d21 d4", d22sq, 4 * p.d21 * p.d4);
  } else {
    add("prey-vanishing: d12^2 < 16 d11 d3 b1 eta1 lambda1 lambda2 |u1|^2 / (a1^2 sigma1 eta2)",
        d12sq,
        16 * p.d11 * p.d3 * p.b1 * p.eta1 * p.lambda1 * p.lambda2 * s1sq /
            (p.a1 * p.a1 * p.sigma1 * p.eta2));
    add("prey-vanishing: d12^2 < 4 d11 d3", d12sq, 4 * p.d11 * p.d3);
  }

  const bool all_hold = std::all_of(rep.smallness_checks.begin(), rep.smallness_checks.end(),
                                    [](const SmallnessCheck& c) { return c.satisfied; });
  if (!all_hold)
    rep.regime = Regime::Indeterminate;
  else if (predation < growth)
    rep.regime = Regime::CoexistenceStable;
  else if (predation > growth)
    rep.regime = Regime::PreyExtinction;
  else
    rep.regime = Regime::Borderline;
  return rep;
}

}  // namespace turing
