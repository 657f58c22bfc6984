#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace turing {

/// Uniform cell-centred grid on [0, nx*dx] x [0, ny*dy]. Cell (i, j) has its
/// centre at ((i + 1/2) dx, (j + 1/2) dy) and is stored at j*nx + i
/// (row-major, x fastest).
struct GridSpec {
  int nx = 64;
  int ny = 64;
  double dx = 1.0;
  double dy = 1.0;

  double lx() const { return nx * dx; }
  double ly() const { return ny * dy; }
  double area() const { return lx() * ly(); }
  double cell_area() const { return dx * dy; }
  std::size_t cells() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }

  bool operator==(const GridSpec&) const = default;
};

/// Throws std::invalid_argument unless nx, ny >= 8 and dx, dy > 0.
void validate_grid(const GridSpec& g);

enum class FieldId { U1 = 0, U2 = 1, V1 = 2, V2 = 3 };

inline constexpr std::array<std::string_view, 4> kFieldNames = {"u1", "u2", "v1", "v2"};

/// The four unknowns on a grid, plus the simulation time they belong to.
struct FieldSet {
  std::vector<double> u1, u2, v1, v2;
  double time = 0;

  FieldSet() = default;
  explicit FieldSet(const GridSpec& g)
      : u1(g.cells()), u2(g.cells()), v1(g.cells()), v2(g.cells()) {}

  std::vector<double>& operator[](FieldId f) {
    switch (f) {
      case FieldId::U1: return u1;
      case FieldId::U2: return u2;
      case FieldId::V1: return v1;
      default: return v2;
    }
  }
  const std::vector<double>& operator[](FieldId f) const {
    return const_cast<FieldSet&>(*this)[f];
  }
  std::vector<double>& operator[](int f) { return (*this)[static_cast<FieldId>(f)]; }
  const std::vector<double>& operator[](int f) const { return (*this)[static_cast<FieldId>(f)]; }

  bool operator==(const FieldSet&) const = default;
};

/// Sum over cells times dx*dy. On the mirror-extended grid this is exactly the
/// trapezoidal rule, and it is the quantity the Neumann stencil conserves.
double integrate(std::span<const double> f, const GridSpec& g);

}  // namespace turing
