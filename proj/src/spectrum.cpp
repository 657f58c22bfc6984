#include <cmath>
#include <numbers>
#include <stdexcept>

#include "turing/pde.hpp"

namespace turing {

namespace {

// basis[m * n + i] = cos(pi m (i + 1/2) / n): DCT-II rows, the eigenvectors of
// the mirror-ghost Laplacian.
std::vector<double> cosine_basis(int n) {
  std::vector<double> b(static_cast<std::size_t>(n) * n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      b[static_cast<std::size_t>(m) * n + i] = std::cos(std::numbers::pi * m * (i + 0.5) / n);
  return b;
}

// Amplitude normalisation of a DCT-II coefficient of length n.
double norm(int m, int n) { return (m == 0 ? 1.0 : 2.0) / n; }

}  // namespace

RadialSpectrum radial_spectrum(const std::vector<double>& field, const GridSpec& g) {
  validate_grid(g);
  if (field.size() != g.cells()) throw std::invalid_argument("field size does not match grid");
  const int nx = g.nx, ny = g.ny;

  double mean = 0;
  for (double v : field) mean += v;
  mean /= static_cast<double>(field.size());

  const auto bx = cosine_basis(nx);
  const auto by = cosine_basis(ny);

  // Separable transform: rows first (x), then columns (y).
  std::vector<double> tmp(g.cells());
  for (int j = 0; j < ny; ++j)
    for (int m = 0; m < nx; ++m) {
      double s = 0;
      for (int i = 0; i < nx; ++i)
        s += (field[g.index(i, j)] - mean) * bx[static_cast<std::size_t>(m) * nx + i];
      tmp[g.index(m, j)] = s;
    }

  RadialSpectrum out;
  out.dk = std::numbers::pi / std::max(g.lx(), g.ly());
  std::vector<double> power;
  std::vector<int> count;
  for (int n = 0; n < ny; ++n)
    for (int m = 0; m < nx; ++m) {
      if (m == 0 && n == 0) continue;
      double s = 0;
      for (int j = 0; j < ny; ++j) s += tmp[g.index(m, j)] * by[static_cast<std::size_t>(n) * ny + j];
      const double amp = s * norm(m, nx) * norm(n, ny);
      const double k = std::numbers::pi * std::hypot(m / g.lx(), n / g.ly());
      const auto b = static_cast<std::size_t>(std::llround(k / out.dk));
      if (b >= power.size()) {
        power.resize(b + 1, 0.0);
        count.resize(b + 1, 0);
      }
      power[b] += amp * amp;
      count[b] += 1;
    }

  double best = 0;
  for (std::size_t b = 0; b < power.size(); ++b) {
    if (count[b] == 0) continue;
    const double kc = static_cast<double>(b) * out.dk;
    out.bins.push_back({kc * kc, power[b], count[b]});
    if (power[b] > best) {
      best = power[b];
      out.dominant = out.bins.size() - 1;
    }
  }
  return out;
}

double cosine_mode_amplitude(const std::vector<double>& field, const GridSpec& g, int m, int n) {
  if (field.size() != g.cells()) throw std::invalid_argument("field size does not match grid");
  double s = 0;
  for (int j = 0; j < g.ny; ++j) {
    const double cy = std::cos(std::numbers::pi * n * (j + 0.5) / g.ny);
    for (int i = 0; i < g.nx; ++i)
      s += field[g.index(i, j)] * std::cos(std::numbers::pi * m * (i + 0.5) / g.nx) * cy;
  }
  return s * norm(m, g.nx) * norm(n, g.ny);
}

}  // namespace turing
