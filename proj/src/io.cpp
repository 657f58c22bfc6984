#include "turing/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace turing {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void write_diagnostics_csv(std::ostream& os, const DiagnosticsSeries& d) {
  const bool lyap = !d.records.empty() && d.records.front().lyapunov.has_value();
  os << "t";
  for (auto f : kFieldNames) os << ',' << f << "_min," << f << "_max," << f << "_mean";
  os << ",mass_u1,mass_u2";
  for (auto f : kFieldNames) os << ",l2sq_" << f;
  os << ",std_u1";
  if (lyap) os << ",f,E";
  os << '\n';
  for (const auto& r : d.records) {
    os << format_double(r.time);
    for (const auto& s : r.stats)
      os << ',' << format_double(s.min) << ',' << format_double(s.max) << ','
         << format_double(s.mean);
    os << ',' << format_double(r.mass_u1) << ',' << format_double(r.mass_u2);
    for (double v : r.l2sq) os << ',' << format_double(v);
    os << ',' << format_double(r.std_u1);
    if (lyap) {
      if (r.lyapunov)
        os << ',' << format_double(r.lyapunov->f) << ',' << format_double(r.lyapunov->E);
      else
        os << ",,";
    }
    os << '\n';
  }
}

void write_field_csv(std::ostream& os, const std::vector<double>& field, const GridSpec& g) {
  if (field.size() != g.cells()) throw std::invalid_argument("field size does not match grid");
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (i) os << ',';
      os << format_double(field[g.index(i, j)]);
    }
    os << '\n';
  }
}

GraymapScaling write_pgm16(std::ostream& os, const std::vector<double>& field, const GridSpec& g) {
  if (field.size() != g.cells()) throw std::invalid_argument("field size does not match grid");
  const auto [lo, hi] = std::minmax_element(field.begin(), field.end());
  const GraymapScaling s{*lo, *hi};
  os << "P5\n" << g.nx << ' ' << g.ny << "\n65535\n";
  const double span = s.max - s.min;
  std::string bytes;
  bytes.reserve(2 * field.size());
  for (double x : field) {
    const auto v = span > 0 ? static_cast<unsigned>(std::lround(65535.0 * (x - s.min) / span)) : 0u;
    bytes.push_back(static_cast<char>((v >> 8) & 0xff));
    bytes.push_back(static_cast<char>(v & 0xff));
  }
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  return s;
}

void write_pgm_sidecar(std::ostream& os, const GraymapScaling& s, const GridSpec& g,
                       std::string_view field, double time) {
  os << "field = " << field << '\n'
     << "time = " << format_double(time) << '\n'
     << "nx = " << g.nx << '\n'
     << "ny = " << g.ny << '\n'
     << "min = " << format_double(s.min) << '\n'
     << "max = " << format_double(s.max) << '\n'
     << "value = min + pixel * (max - min) / 65535\n";
}

void write_dispersion_csv(std::ostream& os, const DispersionScan& s) {
  os << "k2,re_lambda_1,re_lambda_2,re_lambda_3,re_lambda_4,"
        "im_lambda_1,im_lambda_2,im_lambda_3,im_lambda_4,h\n";
  for (const auto& x : s.samples) {
    os << format_double(x.k2);
    for (const auto& l : x.eigenvalues) os << ',' << format_double(l.real());
    for (const auto& l : x.eigenvalues) os << ',' << format_double(l.imag());
    os << ',' << format_double(x.h_value) << '\n';
  }
}

void write_dispersion_json(std::ostream& os, const DispersionScan& s) {
  nlohmann::json j;
  j["band"] = nlohmann::json::array();
  for (const auto& b : s.band) j["band"].push_back({b.lo, b.hi});
  auto& samples = j["samples"] = nlohmann::json::array();
  for (const auto& x : s.samples) {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (const auto& l : x.eigenvalues) {
      re.push_back(l.real());
      im.push_back(l.imag());
    }
    samples.push_back({{"k2", x.k2}, {"re_lambda", re}, {"im_lambda", im}, {"h", x.h_value}});
  }
  os << j.dump(1) << '\n';
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  os << "t,u1,u2,v1,v2\n";
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    os << format_double(t.times[i]);
    for (double v : t.states[i]) os << ',' << format_double(v);
    os << '\n';
  }
}

void write_nullclines_csv(std::ostream& os, const Nullclines& n) {
  os << "curve,x,y\n";
  for (const auto& p : n.predator)
    os << "predator," << format_double(p.x) << ',' << format_double(p.y) << '\n';
  for (const auto& p : n.prey)
    os << "prey," << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << contents;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace turing
