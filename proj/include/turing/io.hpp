#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "turing/grid.hpp"
#include "turing/ode.hpp"
#include "turing/pde.hpp"
#include "turing/stability.hpp"

namespace turing {

/// Shortest text that reads back to the same double (locale independent).
std::string format_double(double x);

/// Diagnostics CSV. Header:
///   t,u1_min,u1_max,u1_mean,...,v2_mean,mass_u1,mass_u2,l2sq_u1,...,l2sq_v2,std_u1
/// followed by f,E when the records carry Lyapunov values.
void write_diagnostics_csv(std::ostream& os, const DiagnosticsSeries& d);

/// One CSV row per grid row j, nx values each, x fastest (storage order).
void write_field_csv(std::ostream& os, const std::vector<double>& field, const GridSpec& g);

/// Binary 16-bit graymap (P5, maxval 65535, big-endian), row j = 0 first.
/// Pixel = round(65535 (x - min) / (max - min)); a constant field maps to 0.
/// The sidecar text holds the min/max scaling.
struct GraymapScaling {
  double min, max;
};
GraymapScaling write_pgm16(std::ostream& os, const std::vector<double>& field, const GridSpec& g);
void write_pgm_sidecar(std::ostream& os, const GraymapScaling& s, const GridSpec& g,
                       std::string_view field, double time);

/// k2,re_lambda_1..4,im_lambda_1..4,h
void write_dispersion_csv(std::ostream& os, const DispersionScan& s);
void write_dispersion_json(std::ostream& os, const DispersionScan& s);

/// t,u1,u2,v1,v2
void write_trajectory_csv(std::ostream& os, const Trajectory& t);

/// curve,x,y with curve in {predator, prey}; x = u1, y = u2.
void write_nullclines_csv(std::ostream& os, const Nullclines& n);

/// Writes text to a file, creating parent directories. Throws std::runtime_error.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace turing
