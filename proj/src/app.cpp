#include "turing/app.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "turing/experiments.hpp"
#include "turing/io.hpp"
#include "turing/kernels.hpp"
#include "turing/pde.hpp"
#include "turing/stability.hpp"

namespace turing {

namespace fs = std::filesystem;

namespace {

template <class F>
std::string render(F&& f) {
  std::ostringstream os;
  f(os);
  return os.str();
}

Equilibrium require_coexistence(const ModelParams& p) {
  auto e = coexistence(p);
  if (!e) throw std::invalid_argument("coexistence equilibrium does not exist (eta2*sigma1 >= lambda1*sigma2)");
  return *e;
}

Equilibrium base_state(const ModelParams& p, EquilibriumKind kind) {
  for (const auto& e : equilibria(p))
    if (e.kind == kind) return e;
  throw std::invalid_argument("initial base state '" + std::string(to_string(kind)) +
                              "' does not exist for these parameters");
}

void write_fields(const fs::path& dir, const std::string& stem, const FieldSet& f,
                  const ExperimentConfig& c) {
  for (int q = 0; q < 4; ++q) {
    const std::string name = stem + "_" + std::string(kFieldNames[q]);
    if (c.output.csv)
      write_file(dir / (name + ".csv"), render([&](auto& os) { write_field_csv(os, f[q], c.grid); }));
    if (c.output.pgm) {
      GraymapScaling s{};
      write_file(dir / (name + ".pgm"),
                 render([&](auto& os) { s = write_pgm16(os, f[q], c.grid); }));
      write_file(dir / (name + ".pgm.txt"), render([&](auto& os) {
                   write_pgm_sidecar(os, s, c.grid, kFieldNames[q], f.time);
                 }));
    }
  }
}

void mode_equilibria(const ExperimentConfig& c, const fs::path& dir, std::ostream& log) {
  const auto eqs = equilibria(c.params);
  const std::string csv = render([&](auto& os) {
    os << "kind,u1,u2,v1,v2,relative_residual\n";
    for (const auto& e : eqs) {
      os << to_string(e.kind);
      for (double x : e.state) os << ',' << format_double(x);
      os << ',' << format_double(relative_residual(c.params, e.state)) << '\n';
    }
  });
  const auto rep = classify_regime(c.params);
  const std::string regime = render([&](auto& os) {
    os << "regime = " << to_string(rep.regime) << '\n'
       << "threshold_eta2 = " << format_double(rep.threshold) << '\n'
       << "sup_u1 = " << format_double(rep.sup.u1) << '\n'
       << "sup_u2 = " << format_double(rep.sup.u2) << '\n';
    for (const auto& s : rep.smallness_checks)
      os << "check " << s.name << " = " << (s.satisfied ? "satisfied" : "violated") << " ("
         << format_double(s.lhs) << " vs " << format_double(s.rhs) << ")\n";
  });
  if (c.output.csv) write_file(dir / "equilibria.csv", csv);
  write_file(dir / "regime.txt", regime);
  log << csv << regime;
}

void mode_band(const ExperimentConfig& c, const fs::path& dir, std::ostream& log) {
  std::vector<Interval> bands;
  std::string note;
  if (auto e = coexistence(c.params)) {
    bands = unstable_band(c.params, *e);
    const auto v = self_diffusion_stable(c.params, *e);
    note = std::string("self_diffusion_stable = ") + (v.stable ? "true" : "false") + '\n';
    if (bands.empty()) note += "no unstable band\n";
  } else {
    note = "no coexistence equilibrium; no band\n";
  }
  const std::string csv = render([&](auto& os) {
    os << "k2_lo,k2_hi\n";
    for (const auto& b : bands) os << format_double(b.lo) << ',' << format_double(b.hi) << '\n';
  });
  write_file(dir / "band.csv", csv);
  log << csv << note;
}

void mode_dispersion(const ExperimentConfig& c, const fs::path& dir, std::ostream& log) {
  const auto e = require_coexistence(c.params);
  const auto scan = dispersion_scan(c.params, e, c.run.k2_max, c.run.k2_samples);
  if (c.output.csv)
    write_file(dir / "dispersion.csv", render([&](auto& os) { write_dispersion_csv(os, scan); }));
  if (c.output.json)
    write_file(dir / "dispersion.json", render([&](auto& os) { write_dispersion_json(os, scan); }));
  log << "samples = " << scan.samples.size() << '\n' << "bands = " << scan.band.size() << '\n';
  for (const auto& b : scan.band)
    log << "band = " << format_double(b.lo) << ", " << format_double(b.hi) << '\n';
}

void mode_ode(const ExperimentConfig& c, const fs::path& dir, std::ostream& log) {
  require_valid(c.params);
  const auto tr = integrate(c.params, c.run.ode_init, *c.run.t_end, c.run.dt, c.run.record_every);
  double u1max = 0, u2max = 0;
  for (const auto& s : tr.states) {
    u1max = std::max(u1max, s[0]);
    u2max = std::max(u2max, s[1]);
  }
  const auto nc = nullclines(c.params, {0, 1.5 * u1max}, {0, 1.5 * u2max}, 200);
  if (c.output.csv) {
    write_file(dir / "trajectory.csv", render([&](auto& os) { write_trajectory_csv(os, tr); }));
    write_file(dir / "nullclines.csv", render([&](auto& os) { write_nullclines_csv(os, nc); }));
  }
  const auto& last = tr.states.back();
  log << "t = " << format_double(tr.times.back()) << '\n';
  for (int q = 0; q < 4; ++q) log << kFieldNames[q] << " = " << format_double(last[q]) << '\n';
  if (auto x = polyline_intersection(nc.predator, nc.prey))
    log << "nullcline_intersection = " << format_double(x->x) << ", " << format_double(x->y) << '\n';
}

void mode_simulate(const ExperimentConfig& c, const fs::path& dir, std::ostream& log,
                   bool lyapunov_check) {
  require_valid(c.params);
  const InitSpec s{base_state(c.params, c.init.base), c.init.amplitude, c.init.noise_scale,
                   c.init.seed, c.init.signs};
  if (auto w = init_warning(s)) log << "warning: " << *w << '\n';

  RunOptions opt;
  opt.sample_every = c.run.sample_every;
  opt.snapshot_times = c.run.snapshot_times;
  opt.unsafe = c.run.unsafe;
  opt.kernel = c.run.reference_kernel ? KernelKind::Reference : KernelKind::Parallel;

  const RegimeReport regime = classify_regime(c.params);
  std::optional<LyapunovConfig> lc;
  bool coexistence_target = false;
  if (c.lyapunov || lyapunov_check) {
    LyapunovSection sec = c.lyapunov.value_or(LyapunovSection{});
    // Sup-norm estimates default to the maxima of the initial fields.
    const FieldSet init = init_fields(c.grid, s);
    sec.values.try_emplace("sup_u1", *std::max_element(init.u1.begin(), init.u1.end()));
    sec.values.try_emplace("sup_u2", *std::max_element(init.u2.begin(), init.u2.end()));
    lc = resolve_lyapunov(c.params, sec);
    coexistence_target = sec.target == "coexistence" ||
                         (sec.target == "auto" && coexistence_exists(c.params) &&
                          regime.regime != Regime::Borderline);
    opt.tracker = make_tracker(c.params, *lc, c.grid, coexistence_target);
    if (coexistence_target) opt.reference = require_coexistence(c.params).state;
    else opt.reference = predator_only(c.params).state;
  }

  const RunResult res = run(c.params, c.grid, s, c.run.dt, *c.run.t_end, opt);
  const auto& recs = res.diagnostics.records;

  if (c.output.csv)
    write_file(dir / "diagnostics.csv",
               render([&](auto& os) { write_diagnostics_csv(os, res.diagnostics); }));
  for (std::size_t i = 0; i < res.snapshots.size(); ++i)
    write_fields(dir, "snapshot_t" + format_double(res.snapshots[i].requested_time),
                 res.snapshots[i].fields, c);
  write_fields(dir, "final", res.final_fields, c);

  const auto spec = radial_spectrum(res.final_fields.u1, c.grid);
  if (c.output.csv)
    write_file(dir / "spectrum_u1.csv", render([&](auto& os) {
                 os << "k2,power,modes\n";
                 for (const auto& b : spec.bins)
                   os << format_double(b.k2) << ',' << format_double(b.power) << ',' << b.modes << '\n';
               }));

  const auto mass = mass_bound_check(res.diagnostics, c.params);
  std::string summary = render([&](auto& os) {
    os << "mode = " << to_string(c.mode) << '\n'
       << "regime = " << to_string(regime.regime) << '\n'
       << "steps = " << res.steps << '\n'
       << "t_final = " << format_double(recs.back().time) << '\n'
       << "min_value_seen = " << format_double(res.min_value_seen) << '\n'
       << "std_u1_initial = " << format_double(recs.front().std_u1) << '\n'
       << "std_u1_final = " << format_double(recs.back().std_u1) << '\n'
       << "dominant_k2_u1 = " << (spec.dominant_k2() ? format_double(*spec.dominant_k2()) : "none") << '\n'
       << "spectrum_dk = " << format_double(spec.dk) << '\n'
       << "mass_ratio_u2 = " << format_double(mass.worst_ratio_u2) << '\n'
       << "mass_ratio_combined = " << format_double(mass.worst_ratio_combined) << '\n'
       << "mass_bounds_ok = " << (mass.ok ? "true" : "false") << '\n';
  });
  write_file(dir / "summary.txt", summary);
  log << summary;

  if (lc) {
    const std::string intervals = render([&](auto& os) {
      os << "target = " << (coexistence_target ? "coexistence" : "prey_vanishing") << '\n';
      for (const auto& iv : admissible_intervals(c.params, *lc))
        os << iv.name << " = " << format_double(iv.value) << " in (" << format_double(iv.lo)
           << ", " << format_double(iv.hi) << ")" << (iv.inside ? "" : " NOT ADMISSIBLE")
           << '\n';
    });
    write_file(dir / "lyapunov_constants.txt", intervals);
    log << intervals;
  }
  if (lyapunov_check) {
    const auto rep = decay_report(res.diagnostics, regime.regime);
    write_file(dir / "decay_report.txt", to_text(rep));
    log << to_text(rep);
  }
}

void mode_table(const ExperimentConfig& c, const fs::path& dir, std::ostream& log) {
  const std::string csv = table_csv(run_table_reproduction(c, reference_table_rows()));
  write_file(dir / "table.csv", csv);
  log << csv;
}

void mode_sweep(const ExperimentConfig& c, const fs::path& dir, std::ostream& log) {
  const std::string csv = sweep_csv(run_sweep(c, c.run.sweep_axis, c.run.sweep_values));
  write_file(dir / "sweep.csv", csv);
  log << csv;
}

}  // namespace

LyapunovConfig resolve_lyapunov(const ModelParams& p, const LyapunovSection& s) {
  std::optional<SupBounds> sup;
  if (s.values.count("sup_u1") || s.values.count("sup_u2")) {
    const auto d = default_lyapunov_config(p).config;
    sup = SupBounds{s.values.count("sup_u1") ? s.values.at("sup_u1") : d.sup_u1,
                    s.values.count("sup_u2") ? s.values.at("sup_u2") : d.sup_u2};
  }
  LyapunovConfig c = default_lyapunov_config(p, sup).config;
  for (const auto& [k, v] : s.values) {
    if (k == "delta1") c.delta1 = v;
    else if (k == "delta2") c.delta2 = v;
    else if (k == "delta3") c.delta3 = v;
    else if (k == "delta4") c.delta4 = v;
    else if (k == "gamma1") c.gamma1 = v;
    else if (k == "gamma2") c.gamma2 = v;
    else if (k == "eta3") c.eta3 = v;
    else if (k == "eta4") c.eta4 = v;
  }
  return c;
}

void execute(const ExperimentConfig& c, const fs::path& out_dir, std::ostream& log) {
  fs::create_directories(out_dir);
  write_file(out_dir / "config.ini", to_text(c));
  switch (c.mode) {
    case Mode::Equilibria: mode_equilibria(c, out_dir, log); break;
    case Mode::Dispersion: mode_dispersion(c, out_dir, log); break;
    case Mode::Band: mode_band(c, out_dir, log); break;
    case Mode::Ode: mode_ode(c, out_dir, log); break;
    case Mode::Simulate: mode_simulate(c, out_dir, log, false); break;
    case Mode::LyapunovCheck: mode_simulate(c, out_dir, log, true); break;
    case Mode::Sweep: mode_sweep(c, out_dir, log); break;
    case Mode::Table: mode_table(c, out_dir, log); break;
  }
}

int run_app(const AppArgs& a, std::ostream& out, std::ostream& err) {
  try {
    kernels::set_threads(0);
    if (!parse_mode(a.mode)) {
      err << "error: unknown mode '" << a.mode << "'\n";
      return kExitConfig;
    }
    std::ifstream in(a.config_path, std::ios::binary);
    if (!in) {
      err << "error: cannot read config '" << a.config_path << "'\n";
      return kExitConfig;
    }
    std::ostringstream text;
    text << in.rdbuf();
    std::vector<std::string> overrides{"mode=" + a.mode};
    overrides.insert(overrides.end(), a.sets.begin(), a.sets.end());
    const ExperimentConfig c = parse_config(text.str(), overrides);
    execute(c, a.out_dir.value_or(c.output.dir), out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SimulationAbort& e) {
    err << "simulation aborted: " << e.what() << '\n';
    return kExitAbort;
  } catch (const std::invalid_argument& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitOther;
  }
}

}  // namespace turing
