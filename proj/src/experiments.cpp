#include "turing/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "turing/io.hpp"
#include "turing/pde.hpp"

namespace turing {

namespace {

using Overrides = std::map<std::string, double>;

Overrides with(Overrides base, const Overrides& changes) {
  for (const auto& [k, v] : changes) base[k] = v;
  return base;
}

const Overrides kSetA = {{"d11", 0.1},   {"d12", 1},     {"d3", 3},      {"d21", 1},
                         {"d22", 2},     {"d4", 2},      {"sigma1", 2},  {"sigma2", 3},
                         {"lambda1", 2}, {"lambda2", 1}, {"eta1", 10},   {"eta2", 2},
                         {"a1", 0.5},    {"a2", 0.5},    {"b1", 0.5},    {"b2", 0.5}};
const Overrides kSetB = {{"d11", 3.25},  {"d12", 3},     {"d3", 0.75},   {"d21", 5},
                         {"d22", 3},     {"d4", 0.75},   {"sigma1", 2},  {"sigma2", 1},
                         {"lambda1", 2}, {"lambda2", 1}, {"eta1", 10},   {"eta2", 0.25},
                         {"a1", 0.5},    {"a2", 0.5},    {"b1", 0.5},    {"b2", 0.5}};

}  // namespace

const std::vector<TableRow>& reference_table_rows() {
  static const std::vector<TableRow> rows = [] {
    std::vector<TableRow> r;
    auto add = [&](std::string label, Overrides o, std::optional<Interval> ref) {
      r.push_back({std::move(label), std::move(o), ref});
    };
    const std::pair<double, Interval> a[] = {
        {2, {0.253661, 0.925807}},   {2.25, {0.138333, 1.255916}}, {2.5, {0.074781, 1.526103}},
        {2.65, {0.047290, 1.673559}}, {2.75, {0.031782, 1.767353}}, {2.9, {0.011695, 1.902321}}};
    for (const auto& [e2, ref] : a)
      add("A eta2=" + format_double(e2), with(kSetA, {{"eta2", e2}}), ref);

    add("B eta1=5 eta2=0.95", with(kSetB, {{"eta1", 5}, {"eta2", 0.95}}), Interval{0.026322, 0.092956});
    add("B eta1=10 eta2=0.25", with(kSetB, {{"eta1", 10}, {"eta2", 0.25}}), Interval{0.100961, 0.512843});
    add("B eta1=10 eta2=0.75", with(kSetB, {{"eta1", 10}, {"eta2", 0.75}}), Interval{0.027417, 0.442167});

    const Overrides setC = with(kSetB, {{"sigma1", 0.5}, {"sigma2", 0.1}, {"lambda1", 0.5}, {"lambda2", 0.1}});
    add("C eta1=5 eta2=0.075", with(setC, {{"eta1", 5}, {"eta2", 0.075}}), Interval{0.001004, 0.4337821});
    add("C eta1=10 eta2=0.075", with(setC, {{"eta1", 10}, {"eta2", 0.075}}), Interval{0.000455, 0.803716});

    const Overrides setD = with(kSetA, {{"d11", 1}, {"d12", 1}, {"d3", 1}, {"d21", 5}, {"d22", 5}, {"d4", 1.5}});
    add("D eta2=1", with(setD, {{"eta2", 1}}), Interval{0.185205, 0.581330});
    add("D eta2=1.5", with(setD, {{"eta2", 1.5}}), Interval{0.110821, 0.675433});

    const Overrides setE = with(kSetA, {{"a1", 5}, {"a2", 5}, {"b1", 5}, {"b2", 5}, {"eta1", 5}, {"eta2", 1.5}});
    add("E d21=0.1 d22=1 d4=3",
        with(setE, {{"d11", 0.1}, {"d12", 1}, {"d21", 0.1}, {"d22", 1}, {"d3", 3}, {"d4", 3}}),
        Interval{1.102053, 12.303332});
    add("E d21=1 d22=2 d4=2", with(setE, {{"d21", 1}, {"d22", 2}, {"d4", 2}}), Interval{0.485184, 5.105713});

    add("A self-diffusion only", with(kSetA, {{"d12", 0}, {"d22", 0}}), std::nullopt);
    return r;
  }();
  return rows;
}

std::vector<TableResult> run_table_reproduction(const ExperimentConfig& base,
                                                const std::vector<TableRow>& rows) {
  std::vector<TableResult> out;
  for (const auto& row : rows) {
    TableResult res{row.label, "ok", std::nullopt, row.reference, ""};
    ModelParams p = base.params;
    try {
      for (const auto& [k, v] : row.overrides) param_ref(p, k) = v;
      const auto e = coexistence(p);
      if (!e) {
        res.status = "no_coexistence";
        res.message = "eta2*sigma1 >= lambda1*sigma2";
      } else {
        const auto bands = unstable_band(p, *e);
        if (bands.empty()) {
          res.status = "no_band";
        } else {
          res.band = Interval{bands.front().lo, bands.back().hi};
          if (bands.size() > 1) res.message = std::to_string(bands.size()) + " disjoint bands";
        }
      }
    } catch (const std::exception& ex) {
      res.status = "invalid";
      res.message = ex.what();
    }
    out.push_back(std::move(res));
  }
  return out;
}

std::string table_csv(const std::vector<TableResult>& rows) {
  std::ostringstream os;
  os << "label,status,k2_lo,k2_hi,ref_lo,ref_hi,abs_diff_lo,abs_diff_hi\n";
  auto opt = [](bool has, double v) { return has ? format_double(v) : std::string(); };
  for (const auto& r : rows) {
    const bool b = r.band.has_value(), ref = r.reference.has_value();
    os << '"' << r.label << "\"," << r.status << ',' << opt(b, b ? r.band->lo : 0) << ','
       << opt(b, b ? r.band->hi : 0) << ',' << opt(ref, ref ? r.reference->lo : 0) << ','
       << opt(ref, ref ? r.reference->hi : 0) << ','
       << opt(b && ref, b && ref ? std::abs(r.band->lo - r.reference->lo) : 0) << ','
       << opt(b && ref, b && ref ? std::abs(r.band->hi - r.reference->hi) : 0) << '\n';
  }
  return os.str();
}

std::vector<SweepResult> run_sweep(const ExperimentConfig& base, const std::string& axis,
                                   const std::vector<double>& values) {
  const auto& names = param_names();
  if (std::find(names.begin(), names.end(), axis) == names.end())
    throw std::invalid_argument("sweep axis '" + axis + "' is not a model parameter");

  std::vector<SweepResult> out(values.size());
  auto one = [&](std::size_t i) {
    SweepResult& r = out[i];
    r.value = values[i];
    r.status = "ok";
    ModelParams p = base.params;
    param_ref(p, axis) = values[i];
    try {
      r.regime = classify_regime(p).regime;
      const auto e = coexistence(p);
      if (e) r.bands = unstable_band(p, *e);
      if (base.run.sweep_simulate) {
        if (!base.run.t_end) throw std::invalid_argument("sweep_simulate needs run.t_end");
        const auto eqs = equilibria(p);
        auto it = std::find_if(eqs.begin(), eqs.end(),
                               [&](const Equilibrium& q) { return q.kind == base.init.base; });
        if (it == eqs.end()) throw std::invalid_argument("initial base state does not exist");
        InitSpec s{*it, base.init.amplitude, base.init.noise_scale, base.init.seed, base.init.signs};
        RunOptions opt;
        opt.sample_every = base.run.sample_every;
        opt.unsafe = base.run.unsafe;
        opt.kernel = base.run.reference_kernel ? KernelKind::Reference : KernelKind::Parallel;
        const auto res = run(p, base.grid, s, base.run.dt, *base.run.t_end, opt);
        r.dominant_k2 = radial_spectrum(res.final_fields.u1, base.grid).dominant_k2();
        r.amplitude = res.diagnostics.records.back().std_u1;
      }
    } catch (const SimulationAbort& ex) {
      r.status = "abort";
      r.message = ex.what();
    } catch (const std::exception& ex) {
      r.status = "invalid";
      r.message = ex.what();
    }
  };

  // Simulations are parallel inside each run; the cheap analysis rows fan out.
  if (base.run.sweep_simulate) {
    for (std::size_t i = 0; i < values.size(); ++i) one(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < values.size(); ++i) one(i);
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepResult>& rows) {
  std::ostringstream os;
  os << "value,status,regime,n_bands,k2_lo,k2_hi,dominant_k2,amplitude\n";
  for (const auto& r : rows) {
    os << format_double(r.value) << ',' << r.status << ',' << to_string(r.regime) << ','
       << r.bands.size() << ',';
    if (!r.bands.empty())
      os << format_double(r.bands.front().lo) << ',' << format_double(r.bands.back().hi);
    else
      os << ',';
    os << ',' << (r.dominant_k2 ? format_double(*r.dominant_k2) : "") << ','
       << (r.amplitude ? format_double(*r.amplitude) : "") << '\n';
  }
  return os.str();
}

}  // namespace turing
