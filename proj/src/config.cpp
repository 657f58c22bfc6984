#include "turing/config.hpp"

#include <charconv>
#include <sstream>

#include "turing/io.hpp"

namespace turing {

ConfigError::ConfigError(int line, std::string key, const std::string& what)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + what
                                  : "config: " + what),
      line(line),
      key(std::move(key)) {}

namespace {

constexpr std::array<std::pair<Mode, std::string_view>, 8> kModes = {{
    {Mode::Equilibria, "equilibria"},
    {Mode::Dispersion, "dispersion"},
    {Mode::Band, "band"},
    {Mode::Ode, "ode"},
    {Mode::Simulate, "simulate"},
    {Mode::Sweep, "sweep"},
    {Mode::LyapunovCheck, "lyapunov-check"},
    {Mode::Table, "table"},
}};

const std::vector<std::string> kSections = {"", "params", "grid", "init", "run", "output", "lyapunov"};
const std::vector<std::string> kLyapunovKeys = {"delta1", "delta2", "delta3", "delta4", "gamma1",
                                                "gamma2", "eta3",   "eta4",   "sup_u1", "sup_u2"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Entry {
  std::string value;
  int line;
  bool used = false;
};

using Document = std::map<std::string, std::map<std::string, Entry>>;

Document tokenize(std::string_view text) {
  Document doc;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(line, "", "malformed section header '" + s + "'");
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), section) == kSections.end() ||
          section.empty())
        throw ConfigError(line, section, "unknown section [" + section + "]");
      doc[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "", "expected 'key = value', got '" + s + "'");
    const std::string key = trim(std::string_view(s).substr(0, eq));
    if (key.empty()) throw ConfigError(line, "", "empty key");
    auto& sec = doc[section];
    if (auto it = sec.find(key); it != sec.end()) {
      const std::string name = section.empty() ? key : section + "." + key;
      throw ConfigError(line, name,
                        "duplicate key '" + name + "' (first set on line " +
                            std::to_string(it->second.line) + ")");
    }
    sec[key] = {trim(std::string_view(s).substr(eq + 1)), line};
  }
  return doc;
}

void apply_override(Document& doc, const std::string& ov) {
  const auto eq = ov.find('=');
  if (eq == std::string::npos) throw ConfigError(0, ov, "override '" + ov + "' is not key=value");
  const std::string path = trim(std::string_view(ov).substr(0, eq));
  const auto dot = path.find('.');
  const std::string section = dot == std::string::npos ? "" : path.substr(0, dot);
  const std::string key = dot == std::string::npos ? path : path.substr(dot + 1);
  if (std::find(kSections.begin(), kSections.end(), section) == kSections.end())
    throw ConfigError(0, path, "override names unknown section '" + section + "'");
  doc[section][key] = {trim(std::string_view(ov).substr(eq + 1)), 0};
}

class Reader {
 public:
  explicit Reader(Document& d) : doc_(d) {}

  bool has_section(const std::string& s) const { return doc_.count(s) > 0; }

  const Entry* find(const std::string& section, const std::string& key) {
    auto s = doc_.find(section);
    if (s == doc_.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    k->second.used = true;
    return &k->second;
  }

  template <class T, class Parse>
  void read(const std::string& section, const std::string& key, T& out, bool required, Parse parse,
            const char* type) {
    const Entry* e = find(section, key);
    const std::string name = section.empty() ? key : section + "." + key;
    if (!e) {
      if (required) throw ConfigError(0, name, "missing required key '" + name + "'");
      return;
    }
    if (!parse(e->value, out))
      throw ConfigError(e->line, name,
                        "key '" + name + "' expects " + type + ", got '" + e->value + "'");
  }

  void number(const std::string& s, const std::string& k, double& out, bool required = false) {
    read(s, k, out, required, parse_double, "a number");
  }
  void integer(const std::string& s, const std::string& k, int& out) {
    read(s, k, out, false, parse_int<int>, "an integer");
  }
  void flag(const std::string& s, const std::string& k, bool& out) {
    read(s, k, out, false, parse_bool, "true or false");
  }

  void check_unused() const {
    for (const auto& [section, keys] : doc_)
      for (const auto& [key, e] : keys)
        if (!e.used) {
          const std::string name = section.empty() ? key : section + "." + key;
          throw ConfigError(e.line, name, "unknown key '" + name + "'");
        }
  }

  static bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* b = s.data();
    if (*b == '+') ++b;
    const auto r = std::from_chars(b, s.data() + s.size(), out);
    return r.ec == std::errc() && r.ptr == s.data() + s.size();
  }
  template <class I>
  static bool parse_int(const std::string& s, I& out) {
    const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return !s.empty() && r.ec == std::errc() && r.ptr == s.data() + s.size();
  }
  static bool parse_bool(const std::string& s, bool& out) {
    if (s == "true") return out = true, true;
    if (s == "false") return out = false, true;
    return false;
  }
  static bool parse_list(const std::string& s, std::vector<double>& out) {
    out.clear();
    if (trim(s).empty()) return true;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
      double v;
      if (!parse_double(trim(item), v)) return false;
      out.push_back(v);
    }
    return true;
  }

 private:
  Document& doc_;
};

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s;
}

}  // namespace

std::string_view to_string(Mode m) {
  for (const auto& [mode, name] : kModes)
    if (mode == m) return name;
  return "?";
}

std::optional<Mode> parse_mode(std::string_view s) {
  for (const auto& [mode, name] : kModes)
    if (name == s) return mode;
  return std::nullopt;
}

ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  Document doc = tokenize(text);
  for (const auto& ov : overrides) apply_override(doc, ov);
  Reader r(doc);
  ExperimentConfig c;

  r.read("", "mode", c.mode, true,
         [](const std::string& s, Mode& m) {
           auto p = parse_mode(s);
           if (p) m = *p;
           return p.has_value();
         },
         "a mode (equilibria, dispersion, band, ode, simulate, sweep, lyapunov-check, table)");

  // Table rows carry complete parameter sets, so [params] is optional there.
  const bool params_required = c.mode != Mode::Table || r.has_section("params");
  for (const auto& name : param_names())
    r.number("params", name, param_ref(c.params, name), params_required);

  r.integer("grid", "nx", c.grid.nx);
  r.integer("grid", "ny", c.grid.ny);
  r.number("grid", "dx", c.grid.dx);
  r.number("grid", "dy", c.grid.dy);

  r.read("init", "base", c.init.base, false,
         [](const std::string& s, EquilibriumKind& k) {
           for (auto kind : {EquilibriumKind::Trivial, EquilibriumKind::PreyOnly,
                             EquilibriumKind::PredatorOnly, EquilibriumKind::Coexistence})
             if (to_string(kind) == s) return k = kind, true;
           return false;
         },
         "one of trivial, prey_only, predator_only, coexistence");
  r.number("init", "amplitude", c.init.amplitude);
  r.number("init", "noise_scale", c.init.noise_scale);
  r.read("init", "seed", c.init.seed, false, Reader::parse_int<std::uint64_t>,
         "a nonnegative integer");
  r.read("init", "signs", c.init.signs, false,
         [](const std::string& s, std::array<int, 4>& out) {
           std::vector<double> v;
           if (!Reader::parse_list(s, v) || v.size() != 4) return false;
           for (int q = 0; q < 4; ++q) {
             if (v[q] != 1 && v[q] != -1 && v[q] != 0) return false;
             out[q] = static_cast<int>(v[q]);
           }
           return true;
         },
         "four entries from {-1, 0, 1}");

  r.number("run", "dt", c.run.dt);
  const bool needs_t_end =
      c.mode == Mode::Simulate || c.mode == Mode::Ode || c.mode == Mode::LyapunovCheck;
  r.read("run", "t_end", c.run.t_end, needs_t_end,
         [](const std::string& s, std::optional<double>& out) {
           double v;
           if (!Reader::parse_double(s, v)) return false;
           out = v;
           return true;
         },
         "a number");
  r.integer("run", "sample_every", c.run.sample_every);
  r.read("run", "snapshot_times", c.run.snapshot_times, false, Reader::parse_list,
         "a comma-separated list of numbers");
  r.flag("run", "unsafe", c.run.unsafe);
  r.read("run", "kernel", c.run.reference_kernel, false,
         [](const std::string& s, bool& ref) {
           if (s == "reference") return ref = true, true;
           if (s == "parallel") return ref = false, true;
           return false;
         },
         "reference or parallel");
  r.read("run", "ode_init", c.run.ode_init, false,
         [](const std::string& s, State4& out) {
           std::vector<double> v;
           if (!Reader::parse_list(s, v) || v.size() != 4) return false;
           std::copy(v.begin(), v.end(), out.begin());
           return true;
         },
         "four comma-separated numbers");
  r.integer("run", "record_every", c.run.record_every);
  r.number("run", "k2_max", c.run.k2_max);
  r.integer("run", "k2_samples", c.run.k2_samples);
  r.read("run", "sweep_axis", c.run.sweep_axis, c.mode == Mode::Sweep,
         [](const std::string& s, std::string& out) { return out = s, !s.empty(); }, "a name");
  r.read("run", "sweep_values", c.run.sweep_values, c.mode == Mode::Sweep, Reader::parse_list,
         "a comma-separated list of numbers");
  r.flag("run", "sweep_simulate", c.run.sweep_simulate);

  r.read("output", "dir", c.output.dir, false,
         [](const std::string& s, std::string& out) { return out = s, !s.empty(); }, "a path");
  r.flag("output", "csv", c.output.csv);
  r.flag("output", "pgm", c.output.pgm);
  r.flag("output", "json", c.output.json);

  if (r.has_section("lyapunov")) {
    LyapunovSection l;
    r.read("lyapunov", "target", l.target, false,
           [](const std::string& s, std::string& out) {
             out = s;
             return s == "auto" || s == "coexistence" || s == "prey_vanishing";
           },
           "auto, coexistence or prey_vanishing");
    for (const auto& k : kLyapunovKeys) {
      double v;
      bool set = false;
      r.read("lyapunov", k, v, false,
             [&](const std::string& s, double& out) { return set = Reader::parse_double(s, out); },
             "a number");
      if (set) l.values[k] = v;
    }
    c.lyapunov = l;
  }

  r.check_unused();

  if (c.run.sample_every < 1) throw ConfigError(0, "run.sample_every", "run.sample_every must be >= 1");
  if (c.run.record_every < 1) throw ConfigError(0, "run.record_every", "run.record_every must be >= 1");
  if (c.run.k2_samples < 1) throw ConfigError(0, "run.k2_samples", "run.k2_samples must be >= 1");
  if (c.mode == Mode::Sweep) {
    const auto& names = param_names();
    if (std::find(names.begin(), names.end(), c.run.sweep_axis) == names.end())
      throw ConfigError(0, "run.sweep_axis",
                        "run.sweep_axis '" + c.run.sweep_axis + "' is not a model parameter");
  }
  return c;
}

std::string to_text(const ExperimentConfig& c) {
  std::ostringstream os;
  auto kv = [&](std::string_view k, const std::string& v) { os << k << " = " << v << '\n'; };
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  kv("mode", std::string(to_string(c.mode)));
  os << "\n[params]\n";
  for (const auto& n : param_names()) kv(n, format_double(param_value(c.params, n)));
  os << "\n[grid]\n";
  kv("nx", std::to_string(c.grid.nx));
  kv("ny", std::to_string(c.grid.ny));
  kv("dx", format_double(c.grid.dx));
  kv("dy", format_double(c.grid.dy));
  os << "\n[init]\n";
  kv("base", std::string(to_string(c.init.base)));
  kv("amplitude", format_double(c.init.amplitude));
  kv("noise_scale", format_double(c.init.noise_scale));
  kv("seed", std::to_string(c.init.seed));
  kv("signs", join({double(c.init.signs[0]), double(c.init.signs[1]), double(c.init.signs[2]),
                    double(c.init.signs[3])}));
  os << "\n[run]\n";
  kv("dt", format_double(c.run.dt));
  if (c.run.t_end) kv("t_end", format_double(*c.run.t_end));
  kv("sample_every", std::to_string(c.run.sample_every));
  kv("snapshot_times", join(c.run.snapshot_times));
  kv("unsafe", b(c.run.unsafe));
  kv("kernel", c.run.reference_kernel ? "reference" : "parallel");
  kv("ode_init", join({c.run.ode_init.begin(), c.run.ode_init.end()}));
  kv("record_every", std::to_string(c.run.record_every));
  kv("k2_max", format_double(c.run.k2_max));
  kv("k2_samples", std::to_string(c.run.k2_samples));
  if (!c.run.sweep_axis.empty()) kv("sweep_axis", c.run.sweep_axis);
  if (c.mode == Mode::Sweep || !c.run.sweep_values.empty())
    kv("sweep_values", join(c.run.sweep_values));
  kv("sweep_simulate", b(c.run.sweep_simulate));
  os << "\n[output]\n";
  kv("dir", c.output.dir);
  kv("csv", b(c.output.csv));
  kv("pgm", b(c.output.pgm));
  kv("json", b(c.output.json));
  if (c.lyapunov) {
    os << "\n[lyapunov]\n";
    kv("target", c.lyapunov->target);
    for (const auto& [k, v] : c.lyapunov->values) kv(k, format_double(v));
  }
  return os.str();
}

}  // namespace turing
