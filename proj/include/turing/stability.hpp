#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "turing/model.hpp"

namespace turing {

using Matrix4 = Eigen::Matrix4d;
using Complex = std::complex<double>;
using Roots4 = std::array<Complex, 4>;

struct Jacobian4 {
  Matrix4 J;
  double trace;
  double det;
};

/// Reaction Jacobian at an equilibrium. Throws std::invalid_argument when the
/// state is not an equilibrium of p.
Jacobian4 jacobian_at(const ModelParams& p, const Equilibrium& e);

/// Diffusion operator matrix: row i gives the fluxes entering equation i.
///   [[d11, 0, d12, 0], [0, d21, 0, -d22], [0, 0, d3, 0], [0, 0, 0, d4]]
Matrix4 diffusion_matrix(const ModelParams& p);

struct SelfDiffusionVerdict {
  bool stable;
  std::optional<double> first_failing_k2;
};

/// Trace/determinant test on the 2x2 species block of J - k^2 D, ignoring
/// cross-diffusion, over n_samples uniform k^2 in [0, k2_max].
SelfDiffusionVerdict self_diffusion_stable(const ModelParams& p, const Equilibrium& e,
                                           double k2_max = 100.0, int n_samples = 10000);

/// Determinant of the species block at k^2 via the factored expression
/// (k^2 d11 + lambda1 u1)(k^2 d21 + lambda2 u2) + eta1 eta2 u1 u2.
double self_diffusion_det(const ModelParams& p, const Equilibrium& e, double k2);

/// h(x) = omega1 x^4 + omega2 x^3 + omega3 x^2 + omega4 x + omega5, x = k^2,
/// the constant term of the characteristic polynomial det(lambda I - (J - k^2 D)).
struct QuarticCoeffs {
  double omega1, omega2, omega3, omega4, omega5;

  std::array<double, 5> as_array() const { return {omega1, omega2, omega3, omega4, omega5}; }
};

/// Throws std::invalid_argument unless e is the coexistence state.
QuarticCoeffs quartic_coeffs(const ModelParams& p, const Equilibrium& e);

double h_of_k2(const QuarticCoeffs& c, double k2);

/// Growth rates at wavenumber k^2: eigenvalues of J - k^2 D, sorted by
/// descending real part (ties by descending imaginary part).
Roots4 dispersion_eigenvalues(const ModelParams& p, const Equilibrium& e, double k2);

/// Companion-matrix eigenvalues of the quartic.
Roots4 quartic_roots_companion(const QuarticCoeffs& c);

/// Ferrari-type closed form built from beta1..beta4. Returns nullopt when the
/// expression degenerates (beta3 or beta4 vanishing numerically), in which case
/// callers should use quartic_roots_companion.
std::optional<Roots4> quartic_roots_closed_form(const QuarticCoeffs& c);

struct Interval {
  double lo;
  double hi;
};

/// All maximal intervals of k^2 > 0 with h(k^2) < 0, ordered. Empty when the
/// quartic is nonnegative on (0, inf). Endpoints are refined by bisection.
std::vector<Interval> unstable_band(const ModelParams& p, const Equilibrium& e);
std::vector<Interval> unstable_band(const QuarticCoeffs& c);

struct DispersionSample {
  double k2;
  Roots4 eigenvalues;
  double max_real_part;
  double h_value;
};

struct DispersionScan {
  std::vector<DispersionSample> samples;
  std::vector<Interval> band;
};

/// Uniform scan over k^2 in [0, k2_max] with n_samples points (n_samples >= 1).
DispersionScan dispersion_scan(const ModelParams& p, const Equilibrium& e, double k2_max,
                               int n_samples);

}  // namespace turing
