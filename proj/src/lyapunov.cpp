#include "turing/lyapunov.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "turing/io.hpp"

namespace turing {

namespace {

double pick(double lo, double hi, bool& flagged) {
  if (!(lo < hi)) {
    flagged = true;
    return lo > 0 ? lo * 1.01 : hi;
  }
  return lo > 0 ? std::sqrt(lo * hi) : 0.5 * hi;
}

AdmissibleInterval interval(std::string name, double lo, double hi, double value) {
  return {std::move(name), lo, hi, value, lo < value && value < hi, !(lo < hi)};
}

void require_positive(const std::vector<double>& x, const char* what) {
  for (double v : x)
    if (!(v > 0)) throw std::invalid_argument(std::string(what) + " must be strictly positive");
}

}  // namespace

std::vector<AdmissibleInterval> admissible_intervals(const ModelParams& p, const LyapunovConfig& c) {
  std::vector<AdmissibleInterval> out;
  const double s1sq = c.sup_u1 * c.sup_u1, s2sq = c.sup_u2 * c.sup_u2;
  if (auto e = coexistence(p)) {
    out.push_back(interval("delta1", p.d12 * p.d12 * e->u1() / (4 * p.d11 * p.d3 * s1sq),
                           4 * p.b1 * p.eta1 * p.lambda2 / (p.a1 * p.a1 * p.eta2), c.delta1));
    out.push_back(interval("delta2",
                           p.d22 * p.d22 * e->u2() * p.eta1 / (4 * p.d21 * p.d4 * p.eta2 * s2sq),
                           4 * p.b2 * p.lambda1 / (p.a2 * p.a2), c.delta2));
    out.push_back(interval("gamma1", 0, p.lambda2, c.gamma1));
    out.push_back(interval("gamma2", 0, p.lambda1, c.gamma2));
  }
  out.push_back(interval("delta3", p.d12 * p.d12 * p.sigma1 / (4 * p.d11 * p.d3 * p.lambda1 * s1sq),
                         4 * p.b1 * p.eta1 * p.lambda2 / (p.a1 * p.a1 * p.eta2), c.delta3));
  out.push_back(interval("delta4", 0, 4 * p.b2 * p.lambda1 / (p.a2 * p.a2), c.delta4));
  out.push_back(interval("eta3", 0, c.delta3 * p.b1, c.eta3));
  out.push_back(interval("eta4", 0, p.lambda1, c.eta4));
  return out;
}

DefaultLyapunov default_lyapunov_config(const ModelParams& p, std::optional<SupBounds> sup) {
  require_valid(p);
  const auto e = coexistence(p);
  DefaultLyapunov d{};
  auto& c = d.config;
  if (sup) {
    c.sup_u1 = sup->u1;
    c.sup_u2 = sup->u2;
  } else if (e) {
    c.sup_u1 = e->u1();
    c.sup_u2 = e->u2();
  } else {
    c.sup_u1 = p.sigma1 / p.lambda1;
    c.sup_u2 = p.sigma2 / p.lambda2;
  }

  // Fill in order: eta3's interval depends on delta3.
  for (int pass = 0; pass < 2; ++pass) {
    d.flagged = false;
    for (const auto& iv : admissible_intervals(p, c)) {
      const double v = pick(iv.lo, iv.hi, d.flagged);
      if (iv.name == "delta1") c.delta1 = v;
      else if (iv.name == "delta2") c.delta2 = v;
      else if (iv.name == "gamma1") c.gamma1 = v;
      else if (iv.name == "gamma2") c.gamma2 = v;
      else if (iv.name == "delta3") c.delta3 = v;
      else if (iv.name == "delta4") c.delta4 = v;
      else if (iv.name == "eta3") c.eta3 = v;
      else if (iv.name == "eta4") c.eta4 = v;
    }
  }
  d.intervals = admissible_intervals(p, c);
  return d;
}

double entropy_density(double u, double ue) {
  // ue * phi(x) with x = (u - ue)/ue and phi(x) = x - ln(1 + x) >= 0.
  const double x = (u - ue) / ue;
  double phi;
  if (std::abs(x) < 1e-3) {
    phi = x * x * (0.5 - x * (1.0 / 3 - x * (0.25 - x * (0.2 - x / 6))));
  } else {
    phi = x - std::log1p(x);
  }
  return ue * phi;
}

double E1(const FieldSet& f, const ModelParams& p, const Equilibrium& e, const LyapunovConfig& c,
          const GridSpec& g) {
  if (e.kind != EquilibriumKind::Coexistence)
    throw std::invalid_argument("E1 is defined around the coexistence state");
  if (!(p.eta2 > 0)) throw std::invalid_argument("E1 needs eta2 > 0");
  require_positive(f.u1, "u1");
  require_positive(f.u2, "u2");
  double a = 0, b = 0, cc = 0, d = 0;
  for (std::size_t k = 0; k < g.cells(); ++k) {
    a += entropy_density(f.u1[k], e.u1());
    b += entropy_density(f.u2[k], e.u2());
    cc += (f.v1[k] - e.v1()) * (f.v1[k] - e.v1());
    d += (f.v2[k] - e.v2()) * (f.v2[k] - e.v2());
  }
  const double w = p.eta1 / p.eta2;
  return (a + w * b + 0.5 * c.delta1 * cc + 0.5 * c.delta2 * d) * g.cell_area();
}

double f1(const FieldSet& f, const Equilibrium& e, const GridSpec& g) {
  double s = 0;
  for (int q = 0; q < 4; ++q)
    for (double v : f[q]) s += (v - e.state[q]) * (v - e.state[q]);
  return s * g.cell_area();
}

double E2(const FieldSet& f, const ModelParams& p, const LyapunovConfig& c, const GridSpec& g) {
  if (!(p.eta2 > 0)) throw std::invalid_argument("E2 needs eta2 > 0");
  require_positive(f.u1, "u1");
  const Equilibrium s = predator_only(p);
  double a = 0, b = 0, cc = 0, d = 0;
  for (std::size_t k = 0; k < g.cells(); ++k) {
    a += entropy_density(f.u1[k], s.u1());
    b += f.u2[k];
    cc += f.v1[k] * f.v1[k];
    d += (f.v2[k] - s.v2()) * (f.v2[k] - s.v2());
  }
  return (a + p.eta1 / p.eta2 * b + 0.5 * c.delta3 * cc + 0.5 * c.delta4 * d) * g.cell_area();
}

double f2(const FieldSet& f, const ModelParams& p, const GridSpec& g) {
  const Equilibrium s = predator_only(p);
  double sum = 0;
  for (std::size_t k = 0; k < g.cells(); ++k) {
    sum += (f.u1[k] - s.u1()) * (f.u1[k] - s.u1()) + f.u2[k] * f.u2[k] + f.v1[k] * f.v1[k] +
           (f.v2[k] - s.v2()) * (f.v2[k] - s.v2());
  }
  return sum * g.cell_area();
}

FunctionalTracker make_tracker(const ModelParams& p, const LyapunovConfig& c, const GridSpec& g,
                               bool coexistence_target) {
  if (coexistence_target) {
    const auto e = coexistence(p);
    if (!e) throw std::invalid_argument("coexistence equilibrium does not exist");
    return [p, c, g, e = *e](const FieldSet& f) {
      return FunctionalValues{f1(f, e, g), E1(f, p, e, c, g)};
    };
  }
  return [p, c, g](const FieldSet& f) { return FunctionalValues{f2(f, p, g), E2(f, p, c, g)}; };
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line needs >= 2 matching points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    sse += r * r;
  }
  fit.r2 = syy > 0 ? 1.0 - sse / syy : 1.0;
  return fit;
}

DecayReport decay_report(const std::vector<double>& t, const std::vector<double>& E, Regime regime,
                         const DecayOptions& opt) {
  if (t.size() != E.size()) throw std::invalid_argument("decay_report: size mismatch");
  std::vector<double> tt, ee;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= opt.burn_in) {
      tt.push_back(t[i]);
      ee.push_back(E[i]);
    }
  if (tt.size() < 10)
    throw std::invalid_argument("decay_report: fewer than 10 samples beyond the burn-in");

  DecayReport r;
  r.samples = tt.size();
  std::size_t mono = 0;
  for (std::size_t i = 1; i < ee.size(); ++i)
    if (ee[i] <= ee[i - 1] + opt.slack) ++mono;
  r.monotone_fraction = static_cast<double>(mono) / static_cast<double>(ee.size() - 1);

  const double floor = opt.floor_fraction * ee.front();
  std::vector<double> ft, logE, invE;
  for (std::size_t i = 0; i < ee.size(); ++i)
    if (ee[i] > 0 && ee[i] >= floor) {
      ft.push_back(tt[i]);
      logE.push_back(std::log(ee[i]));
      invE.push_back(1.0 / ee[i]);
    }
  r.fit_samples = ft.size();
  if (ft.size() >= 2) {
    r.exponential = fit_line(ft, logE);
    r.algebraic = fit_line(ft, invE);
  }
  r.epsilon_estimate = -r.exponential.slope;
  switch (regime) {
    case Regime::CoexistenceStable:
    case Regime::PreyExtinction: r.expected = DecayKind::Exponential; break;
    case Regime::Borderline: r.expected = DecayKind::Algebraic; break;
    case Regime::Indeterminate: r.expected = DecayKind::None; break;
  }
  return r;
}

DecayReport decay_report(const DiagnosticsSeries& series, Regime regime, const DecayOptions& opt) {
  std::vector<double> t, E;
  for (const auto& rec : series.records) {
    if (!rec.lyapunov) throw std::invalid_argument("diagnostics carry no Lyapunov values");
    t.push_back(rec.time);
    E.push_back(rec.lyapunov->E);
  }
  return decay_report(t, E, regime, opt);
}

std::string to_text(const DecayReport& r) {
  std::ostringstream os;
  auto kv = [&](const char* k, double v) { os << k << " = " << format_double(v) << '\n'; };
  const char* kind = r.expected == DecayKind::Exponential ? "exponential"
                     : r.expected == DecayKind::Algebraic ? "algebraic"
                                                          : "none";
  os << "expected_decay = " << kind << '\n';
  os << "samples = " << r.samples << '\n';
  os << "fit_samples = " << r.fit_samples << '\n';
  kv("monotone_fraction", r.monotone_fraction);
  kv("exp_slope", r.exponential.slope);
  kv("exp_intercept", r.exponential.intercept);
  kv("exp_r2", r.exponential.r2);
  kv("alg_slope", r.algebraic.slope);
  kv("alg_intercept", r.algebraic.intercept);
  kv("alg_r2", r.algebraic.r2);
  kv("epsilon_estimate", r.epsilon_estimate);
  return os.str();
}

}  // namespace turing
