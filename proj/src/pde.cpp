#include "turing/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "turing/kernels.hpp"
#include "turing/rng.hpp"

namespace turing {

void validate_grid(const GridSpec& g) {
  if (g.nx < 8 || g.ny < 8) throw std::invalid_argument("grid needs nx, ny >= 8");
  if (!(g.dx > 0) || !(g.dy > 0)) throw std::invalid_argument("grid spacings must be positive");
}

double integrate(std::span<const double> f, const GridSpec& g) {
  double s = 0;
  for (double x : f) s += x;
  return s * g.cell_area();
}

FieldSet init_fields(const GridSpec& g, const InitSpec& s) {
  validate_grid(g);
  FieldSet f(g);
  SplitMix64 rng(s.seed);
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const double psi = s.noise_scale * rng.uniform();
    for (int q = 0; q < 4; ++q) {
      const double v = s.base.state[q] + s.signs[q] * s.amplitude * psi;
      if (v < 0) {
        std::ostringstream os;
        os << "initial " << kFieldNames[q] << " is negative (" << v << ") at cell " << c
           << "; reduce amplitude or noise_scale";
        throw std::invalid_argument(os.str());
      }
      f[q][c] = v;
    }
  }
  return f;
}

std::optional<std::string> init_warning(const InitSpec& s) {
  double smallest = std::numeric_limits<double>::infinity();
  for (double x : s.base.state)
    if (x > 0) smallest = std::min(smallest, x);
  const double spread = std::abs(s.amplitude) * s.noise_scale;
  if (std::isfinite(smallest) && spread > 0.5 * smallest) {
    std::ostringstream os;
    os << "perturbation amplitude*noise_scale = " << spread
       << " is not small next to the smallest equilibrium component " << smallest;
    return os.str();
  }
  return std::nullopt;
}

double cfl_number(const ModelParams& p, const GridSpec& g, double dt) {
  const double r = std::max({std::abs(p.d11) + std::abs(p.d12), std::abs(p.d21) + std::abs(p.d22),
                             std::abs(p.d3), std::abs(p.d4)});
  return dt * (2.0 / (g.dx * g.dx) + 2.0 / (g.dy * g.dy)) * r;
}

namespace {

void check_cfl(const ModelParams& p, const GridSpec& g, double dt, bool unsafe) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  const double c = cfl_number(p, g, dt);
  if (!unsafe && !(c <= kCflLimit)) {
    std::ostringstream os;
    os << "CFL guard failed: dt*(2/dx^2+2/dy^2)*R = " << c << " > " << kCflLimit
       << " (set unsafe to override)";
    throw std::invalid_argument(os.str());
  }
}

[[noreturn]] void report_abort(const FieldSet& f, const GridSpec& g) {
  for (int q = 0; q < 4; ++q) {
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const double x = f[q][c];
      if (!(x >= kernels::kAbortThreshold) || !std::isfinite(x)) {
        std::ostringstream os;
        os << "simulation aborted at t=" << f.time << ": " << kFieldNames[q] << "("
           << c % static_cast<std::size_t>(g.nx) << ", " << c / static_cast<std::size_t>(g.nx)
           << ") = " << x << " (blow-up or CFL violation)";
        throw SimulationAbort(os.str());
      }
    }
  }
  throw SimulationAbort("simulation aborted: non-finite state");
}

kernels::StepStats advance(const ModelParams& p, const GridSpec& g, double dt, const FieldSet& in,
                           FieldSet& out, KernelKind kind) {
  return kind == KernelKind::Reference ? kernels::step_reference(p, g, dt, in, out)
                                       : kernels::step_parallel(p, g, dt, in, out);
}

double field_min(const FieldSet& f) {
  double m = std::numeric_limits<double>::infinity();
  for (int q = 0; q < 4; ++q)
    for (double x : f[q]) m = std::min(m, x);
  return m;
}

}  // namespace

FieldSet step(const ModelParams& p, const FieldSet& f, double dt, const GridSpec& g, bool unsafe,
              KernelKind kernel) {
  validate_grid(g);
  check_cfl(p, g, dt, unsafe);
  FieldSet out(g);
  if (advance(p, g, dt, f, out, kernel).bad) report_abort(out, g);
  return out;
}

DiagnosticsRecord diagnose(const FieldSet& f, const GridSpec& g, const State4& reference,
                           const FunctionalTracker& tracker) {
  DiagnosticsRecord r{};
  r.time = f.time;
  const double n = static_cast<double>(g.cells());
  for (int q = 0; q < 4; ++q) {
    const auto& x = f[q];
    double lo = x[0], hi = x[0], sum = 0, dist = 0;
    for (double v : x) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
      const double d = v - reference[q];
      dist += d * d;
    }
    r.stats[q] = {lo, hi, sum / n};
    r.l2sq[q] = dist * g.cell_area();
  }
  r.mass_u1 = integrate(f.u1, g);
  r.mass_u2 = integrate(f.u2, g);
  const double mean = r.stats[0].mean;
  double var = 0;
  for (double v : f.u1) var += (v - mean) * (v - mean);
  r.std_u1 = std::sqrt(var / n);
  if (tracker) r.lyapunov = tracker(f);
  return r;
}

RunResult run_from(const ModelParams& p, const GridSpec& g, FieldSet init, const State4& base,
                   double dt, double t_end, const RunOptions& opt) {
  validate_grid(g);
  check_cfl(p, g, dt, opt.unsafe);
  if (!(t_end >= 0)) throw std::invalid_argument("t_end must be nonnegative");
  if (opt.sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");

  const long long steps = std::llround(t_end / dt);
  const double t0 = init.time;
  const State4 reference = opt.reference.value_or(base);

  std::vector<std::pair<long long, double>> snap_at;
  for (double t : opt.snapshot_times)
    snap_at.emplace_back(std::clamp<long long>(std::llround((t - t0) / dt), 0, steps), t);
  std::sort(snap_at.begin(), snap_at.end());

  RunResult res;
  res.steps = steps;
  res.diagnostics.grid = g;
  res.diagnostics.reference = reference;
  res.min_value_seen = field_min(init);

  FieldSet cur = std::move(init);
  FieldSet next(g);
  std::size_t snap_idx = 0;
  auto take_snapshots = [&](long long n) {
    while (snap_idx < snap_at.size() && snap_at[snap_idx].first == n)
      res.snapshots.push_back({snap_at[snap_idx++].second, cur});
  };

  res.diagnostics.records.push_back(diagnose(cur, g, reference, opt.tracker));
  take_snapshots(0);
  for (long long n = 1; n <= steps; ++n) {
    const auto st = advance(p, g, dt, cur, next, opt.kernel);
    // Times are n*dt exactly rather than accumulated.
    next.time = t0 + static_cast<double>(n) * dt;
    if (st.bad) report_abort(next, g);
    res.min_value_seen = std::min(res.min_value_seen, st.min_value);
    std::swap(cur, next);
    if (n % opt.sample_every == 0 || n == steps)
      res.diagnostics.records.push_back(diagnose(cur, g, reference, opt.tracker));
    take_snapshots(n);
  }
  res.final_fields = std::move(cur);
  return res;
}

RunResult run(const ModelParams& p, const GridSpec& g, const InitSpec& s, double dt, double t_end,
              const RunOptions& opt) {
  require_valid(p);
  if (!(relative_residual(p, s.base.state) <= kEquilibriumTolerance))
    throw std::invalid_argument("initial base state is not an equilibrium of the model");
  return run_from(p, g, init_fields(g, s), s.base.state, dt, t_end, opt);
}

MassBoundReport mass_bound_check(const DiagnosticsSeries& d, const ModelParams& p) {
  MassBoundReport rep;
  if (d.records.empty()) return rep;
  constexpr double kSlack = 1 + 1e-6;
  const double area = d.grid.area();
  const auto& first = d.records.front();

  const double m2 = std::max(first.mass_u2, p.sigma2 * area / p.lambda2) * kSlack;
  const bool combined = p.eta2 > 0;
  const double w = combined ? p.eta1 / p.eta2 : 0.0;
  const double m1 =
      combined ? std::max(first.mass_u1 + w * first.mass_u2,
                          area / 4 *
                              ((p.sigma1 + 1) * (p.sigma1 + 1) / p.lambda1 +
                               w / p.lambda2 * (p.sigma2 + 1) * (p.sigma2 + 1))) *
                     kSlack
               : std::numeric_limits<double>::quiet_NaN();

  rep.worst_ratio_combined = combined ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  double worst = -1;
  for (std::size_t i = 0; i < d.records.size(); ++i) {
    const auto& r = d.records[i];
    const double r2 = r.mass_u2 / m2;
    rep.worst_ratio_u2 = std::max(rep.worst_ratio_u2, r2);
    double local = r2;
    if (combined) {
      const double r1 = (r.mass_u1 + w * r.mass_u2) / m1;
      rep.worst_ratio_combined = std::max(rep.worst_ratio_combined, r1);
      local = std::max(local, r1);
    }
    if (local > worst) {
      worst = local;
      rep.worst_record = i;
    }
  }
  rep.ok = rep.worst_ratio_u2 <= 1 && (!combined || rep.worst_ratio_combined <= 1);
  return rep;
}

}  // namespace turing
