// Acceptance checks 1-11. `acceptance N` runs one criterion, no argument runs all.
// Each criterion prints exactly one line: "criterion N PASS|FAIL: details".

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "support.hpp"
#include "turing/app.hpp"
#include "turing/config.hpp"
#include "turing/experiments.hpp"
#include "turing/kernels.hpp"
#include "turing/lyapunov.hpp"
#include "turing/ode.hpp"
#include "turing/pde.hpp"
#include "turing/stability.hpp"

using namespace turing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

// Lyapunov sup-norm estimates from the initial fields, as the CLI does.
LyapunovConfig constants_for(const ModelParams& p, const GridSpec& g, const InitSpec& s) {
  const auto f = init_fields(g, s);
  const double s1 = *std::max_element(f.u1.begin(), f.u1.end());
  const double s2 = *std::max_element(f.u2.begin(), f.u2.end());
  return default_lyapunov_config(p, SupBounds{s1, std::max(s2, 1e-12)}).config;
}

// Shared simulations, each computed at most once per process.
struct StableRun {
  RunResult result;
  double initial_dev, final_dev, seconds;
  bool band_reported;
};

const StableRun& stable_run() {
  static const StableRun r = [] {
    Timer t;
    const auto p = fixtures::self_diffusion();
    const GridSpec g{64, 64, 1, 1};
    InitSpec s;
    s.base = *coexistence(p);
    RunOptions opt;
    opt.sample_every = 100;
    opt.tracker = make_tracker(p, constants_for(p, g, s), g, true);
    StableRun out{run(p, g, s, 0.01, 500, opt), 0, 0, 0, false};
    const auto f0 = init_fields(g, s);
    for (std::size_t k = 0; k < g.cells(); ++k) {
      out.initial_dev = std::max(out.initial_dev, std::abs(f0.u1[k] - s.base.u1()));
      out.final_dev = std::max(out.final_dev, std::abs(out.result.final_fields.u1[k] - s.base.u1()));
    }
    out.band_reported = !unstable_band(p, s.base).empty();
    out.seconds = t.seconds();
    return out;
  }();
  return r;
}

const RunResult& borderline_run() {
  static const RunResult r = [] {
    auto p = fixtures::self_diffusion();
    p.eta2 = p.lambda1 * p.sigma2 / p.sigma1;
    const GridSpec g{64, 64, 1, 1};
    InitSpec s;
    s.base = predator_only(p);
    RunOptions opt;
    opt.sample_every = 100;
    opt.tracker = make_tracker(p, constants_for(p, g, s), g, false);
    return run(p, g, s, 0.01, 500, opt);
  }();
  return r;
}

// Empty result with the abort message when the run stops early.
struct PatternRun {
  std::optional<RunResult> result;
  std::string abort;
  double seconds;
};

const PatternRun& pattern_run() {
  static const PatternRun r = [] {
    Timer t;
    const auto p = fixtures::cross_diffusion();
    const GridSpec g{128, 128, 1, 1};
    InitSpec s;
    s.base = *coexistence(p);
    RunOptions opt;
    opt.sample_every = 1000;
    PatternRun out;
    try {
      out.result = run(p, g, s, 0.01, 2000, opt);
    } catch (const SimulationAbort& e) {
      out.abort = e.what();
    }
    out.seconds = t.seconds();
    return out;
  }();
  return r;
}

Outcome c1_table() {
  Timer t;
  const auto& rows = reference_table_rows();
  const auto res = run_table_reproduction(parse_config("mode = table\n"), rows);
  const double secs = t.seconds();
  double worst = 0;
  int ok = 0, tabulated = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].reference) continue;
    ++tabulated;
    if (res[i].status != "ok" || !res[i].band) {
      worst = INFINITY;
      continue;
    }
    const double d = std::max(std::abs(res[i].band->lo - rows[i].reference->lo),
                              std::abs(res[i].band->hi - rows[i].reference->hi));
    worst = std::max(worst, d);
    if (d <= 1e-3) ++ok;
  }
  const bool pass = tabulated == 15 && ok == 15 && secs < 5;
  return {pass, std::to_string(ok) + "/" + std::to_string(tabulated) +
                    " rows within 1e-3, max endpoint error " + fmt(worst) + ", " + fmt(secs) + " s"};
}

Outcome c2_equilibria() {
  std::mt19937_64 rng(2024);
  double worst = 0;
  int iff_fail = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = fixtures::random_params(rng);
    bool has = false;
    for (const auto& e : equilibria(p)) {
      worst = std::max(worst, relative_residual(p, e.state));
      has = has || e.kind == EquilibriumKind::Coexistence;
    }
    if (has != (p.lambda1 * p.sigma2 > p.eta2 * p.sigma1)) ++iff_fail;
  }
  return {worst < 1e-12 && iff_fail == 0, "1000 draws, max relative residual " + fmt(worst) +
                                              ", coexistence mismatches " + std::to_string(iff_fail)};
}

Outcome c3_determinant() {
  std::mt19937_64 rng(3030);
  std::uniform_real_distribution<double> k2d(0, 10);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = fixtures::random_coexistence_params(rng);
    const auto e = *coexistence(p);
    const auto c = quartic_coeffs(p, e);
    const Matrix4 J = jacobian_at(p, e).J, D = diffusion_matrix(p);
    for (int j = 0; j < 10; ++j) {
      const double k2 = k2d(rng);
      const double want = (k2 * D - J).determinant();
      worst = std::max(worst, std::abs(h_of_k2(c, k2) - want) / std::abs(want));
    }
  }
  return {worst < 1e-10, "10000 evaluations, max relative error " + fmt(worst)};
}

Outcome c4_roots() {
  std::mt19937_64 rng(4040);
  int agree = 0, degenerate = 0, fail = 0;
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = fixtures::random_coexistence_params(rng);
    const auto c = quartic_coeffs(p, *coexistence(p));
    const auto comp = quartic_roots_companion(c);
    const auto cf = quartic_roots_closed_form(c);
    if (!cf) {
      ++degenerate;
      // The band computation must still succeed on the companion path.
      try {
        unstable_band(c);
      } catch (...) {
        ++fail;
      }
      continue;
    }
    // Greedy nearest matching, relative to max(1, |root|).
    std::array<bool, 4> used{};
    double d = 0;
    for (const auto& r : *cf) {
      int best = 0;
      double dist = INFINITY;
      for (int j = 0; j < 4; ++j)
        if (!used[j] && std::abs(r - comp[j]) < dist) dist = std::abs(r - comp[j]), best = j;
      used[best] = true;
      d = std::max(d, dist / std::max(1.0, std::abs(r)));
    }
    worst = std::max(worst, d);
    if (d <= 1e-8) ++agree;
    else ++fail;
  }
  return {fail == 0, std::to_string(agree) + " agreeing, " + std::to_string(degenerate) +
                         " degenerate routed to companion, " + std::to_string(fail) +
                         " failures, max deviation " + fmt(worst)};
}

Outcome c5_ode() {
  Timer t;
  const auto p = fixtures::reaction_base();
  const auto tr = integrate(p, {1, 2, 0, 0}, 1000, 0.001, 1000000);
  const double secs = t.seconds();
  const State4 want = {16.0 / 11, 1.0 / 11, 1.0 / 11, 16.0 / 11};
  double d = 0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(tr.states.back()[i] - want[i]));
  return {d < 1e-6 && secs < 5, "distance at t=1000 " + fmt(d) + ", " + fmt(secs) + " s"};
}

Outcome c6_self_diffusion() {
  const auto& r = stable_run();
  const double ratio = r.final_dev / r.initial_dev;
  return {ratio <= 0.01 && !r.band_reported && r.seconds < 120,
          "max|u1-u1*| " + fmt(r.initial_dev) + " -> " + fmt(r.final_dev) + " (ratio " + fmt(ratio) +
              "), band " + (r.band_reported ? "reported" : "none") + ", " + fmt(r.seconds) + " s"};
}

Outcome c7_pattern() {
  const auto& r = pattern_run();
  if (!r.result) return {false, r.abort + ", " + fmt(r.seconds) + " s"};
  const GridSpec& g = r.result->diagnostics.grid;
  const double std0 = r.result->diagnostics.records.front().std_u1;
  const double std1 = r.result->diagnostics.records.back().std_u1;
  const auto spec = radial_spectrum(r.result->final_fields.u1, g);
  const double lo = 0.253661, hi = 0.925807;
  const double wlo = std::pow(std::max(0.0, std::sqrt(lo) - spec.dk), 2);
  const double whi = std::pow(std::sqrt(hi) + spec.dk, 2);
  const auto k2 = spec.dominant_k2();
  const bool in_band = k2 && *k2 >= wlo && *k2 <= whi;
  return {std1 > 10 * std0 && in_band && r.seconds < 600,
          "std(u1) " + fmt(std0) + " -> " + fmt(std1) + ", dominant k2 " + (k2 ? fmt(*k2) : "none") +
              " in [" + fmt(wlo) + ", " + fmt(whi) + "]: " + (in_band ? "yes" : "no") + ", " +
              fmt(r.seconds) + " s"};
}

Outcome c8_linear() {
  const auto p = fixtures::cross_diffusion();
  const auto e = *coexistence(p);
  const GridSpec g{128, 8, 0.25, 0.25};
  const double dt = 0.004, eps = 1e-8;
  double worst = 0;
  int inside = 0, outside = 0;
  std::string rates;
  for (int m : {2, 6, 7, 8, 12, 16}) {
    const double k2 = std::pow(m * std::numbers::pi / g.lx(), 2);
    const auto lam = dispersion_eigenvalues(p, e, k2);
    const double rate = lam[0].real();
    (rate > 0 ? inside : outside) += 1;
    Eigen::EigenSolver<Matrix4> es(jacobian_at(p, e).J - k2 * diffusion_matrix(p));
    int best = 0;
    for (int i = 1; i < 4; ++i)
      if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
    Eigen::Vector4d v = es.eigenvectors().col(best).real();
    v /= v(0);

    FieldSet f(g);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double c = std::cos(m * std::numbers::pi * (i + 0.5) / g.nx);
        for (int q = 0; q < 4; ++q) f[q][g.index(i, j)] = e.state[q] + eps * v(q) * c;
      }
    std::vector<double> dev(g.cells());
    auto amp = [&](const FieldSet& x) {
      for (std::size_t c = 0; c < g.cells(); ++c) dev[c] = x.u1[c] - e.u1();
      return cosine_mode_amplitude(dev, g, m, 0);
    };
    const double a0 = amp(f);
    for (int n = 0; n < 100; ++n) f = step(p, f, dt, g);
    const double measured = (std::pow(amp(f) / a0, 0.01) - 1) / dt;
    const double rel = std::abs(measured - rate) / std::abs(rate);
    worst = std::max(worst, rel);
    rates += " m" + std::to_string(m) + ":" + fmt(measured) + "/" + fmt(rate);
  }
  return {worst <= 0.05 && inside >= 3 && outside >= 3,
          std::to_string(inside) + " modes inside, " + std::to_string(outside) +
              " outside, max relative error " + fmt(worst) + " (measured/predicted" + rates + ")"};
}

Outcome c9_lyapunov() {
  const auto& s = stable_run().result.diagnostics;
  const auto a = decay_report(s, Regime::CoexistenceStable);
  const auto& b = borderline_run().diagnostics;
  auto p = fixtures::self_diffusion();
  p.eta2 = p.lambda1 * p.sigma2 / p.sigma1;
  const Regime reg = classify_regime(p).regime;
  const auto r = decay_report(b, reg);
  const bool pass = a.monotone_fraction == 1 && a.exponential.r2 > 0.99 && a.exponential.slope < 0 &&
                    reg == Regime::Borderline && r.algebraic.r2 > 0.95;
  return {pass, "E1 monotone fraction " + fmt(a.monotone_fraction) + ", ln E1 slope " +
                    fmt(a.exponential.slope) + " R2 " + fmt(a.exponential.r2) + " (" +
                    std::to_string(a.fit_samples) + " fit samples); borderline " +
                    (reg == Regime::Borderline ? "classified" : "NOT classified") + ", 1/E2 R2 " +
                    fmt(r.algebraic.r2)};
}

Outcome c10_conservation() {
  // Pure diffusion, with and without the cross terms.
  double worst_mass = 0;
  for (bool cross : {false, true}) {
    ModelParams p;
    p.d11 = 0.3, p.d21 = 1, p.d3 = 2, p.d4 = 0.5;
    if (cross) p.d12 = 0.5, p.d22 = 0.5;
    const GridSpec g{32, 24, 1, 1};
    InitSpec s;
    s.base = {EquilibriumKind::Trivial, {1, 1, 1, 1}};
    s.amplitude = 1e-3;
    const auto f0 = init_fields(g, s);
    RunOptions opt;
    opt.sample_every = 10000;
    const auto r = run_from(p, g, f0, s.base.state, 0.1, 1000, opt);
    for (int q = 0; q < 4; ++q) {
      const double m0 = integrate(f0[q], g);
      worst_mass = std::max(worst_mass, std::abs(integrate(r.final_fields[q], g) - m0) / m0);
    }
  }
  double worst_ratio = 0, min_seen = INFINITY;
  bool ok = true;
  auto check = [&](const RunResult& r, const ModelParams& p) {
    const auto m = mass_bound_check(r.diagnostics, p);
    ok = ok && m.ok;
    worst_ratio = std::max({worst_ratio, m.worst_ratio_u2, m.worst_ratio_combined});
    min_seen = std::min(min_seen, r.min_value_seen);
  };
  check(stable_run().result, fixtures::self_diffusion());
  auto bp = fixtures::self_diffusion();
  bp.eta2 = bp.lambda1 * bp.sigma2 / bp.sigma1;
  check(borderline_run(), bp);
  const auto& pr = pattern_run();
  if (pr.result) check(*pr.result, fixtures::cross_diffusion());
  const bool pass =
      worst_mass <= 1e-10 && ok && worst_ratio <= 1 && min_seen >= -1e-10 && pr.result.has_value();
  return {pass, "mass drift per 1e4 steps " + fmt(worst_mass) + ", worst mass-bound ratio " +
                    fmt(worst_ratio) + ", minimum field value " + fmt(min_seen) +
                    (pr.result ? std::string() : "; cross-diffusion run: " + pr.abort)};
}

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out[fs::relative(e.path(), dir).string()] = s.str();
  }
  return out;
}

Outcome c11_determinism() {
  auto c = parse_config(R"(mode = simulate
[params]
sigma1 = 2
sigma2 = 3
lambda1 = 2
lambda2 = 1
eta1 = 10
eta2 = 2
a1 = 0.5
a2 = 0.5
b1 = 0.5
b2 = 0.5
d11 = 0.1
d12 = 1
d3 = 3
d21 = 1
d22 = 2
d4 = 2
[grid]
nx = 48
ny = 40
[init]
seed = 77
[run]
t_end = 40
sample_every = 500
snapshot_times = 10, 20
[output]
pgm = true
)");
  const auto root = fs::temp_directory_path() / "turing_lab_acceptance_c11";
  fs::remove_all(root);
  std::vector<std::map<std::string, std::string>> trees;
  const std::vector<int> threads = {1, 1, 2, 3, 4};
  std::ostringstream log;
  for (std::size_t i = 0; i < threads.size(); ++i) {
    kernels::set_threads(threads[i]);
    const auto dir = root / ("run" + std::to_string(i));
    execute(c, dir, log);
    trees.push_back(read_tree(dir));
  }
  kernels::set_threads(0);
  std::size_t pgms = 0, csvs = 0;
  for (const auto& [name, _] : trees[0]) {
    if (name.ends_with(".pgm")) ++pgms;
    if (name.ends_with(".csv")) ++csvs;
  }
  bool same = true;
  for (std::size_t i = 1; i < trees.size(); ++i) same = same && trees[i] == trees[0];
  fs::remove_all(root);
  return {same && pgms > 0 && csvs > 0,
          std::to_string(trees[0].size()) + " files (" + std::to_string(csvs) + " CSV, " +
              std::to_string(pgms) + " graymaps) " + (same ? "identical" : "DIFFER") +
              " across 5 runs with 1, 1, 2, 3, 4 workers"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      c1_table, c2_equilibria, c3_determinant, c4_roots,    c5_ode,           c6_self_diffusion,
      c7_pattern, c8_linear, c9_lyapunov,    c10_conservation, c11_determinism};
  std::vector<int> which;
  if (argc > 1) {
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::cerr << "usage: acceptance [1-11]\n";
      return 2;
    }
    which.push_back(n);
  } else {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) which.push_back(i);
  }
  int failed = 0;
  for (int n : which) {
    Outcome o;
    try {
      o = criteria[n - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << n << (o.pass ? " PASS: " : " FAIL: ") << o.detail << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
