#include "turing/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace turing {

namespace {

void sort_descending_real(Roots4& r) {
  std::sort(r.begin(), r.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

Complex horner(const QuarticCoeffs& c, Complex x) {
  return (((c.omega1 * x + c.omega2) * x + c.omega3) * x + c.omega4) * x + c.omega5;
}

Complex horner_derivative(const QuarticCoeffs& c, Complex x) {
  return ((4.0 * c.omega1 * x + 3.0 * c.omega2) * x + 2.0 * c.omega3) * x + c.omega4;
}

// A few Newton steps, kept only while |h| keeps shrinking.
Complex polish(const QuarticCoeffs& c, Complex x) {
  Complex best = x;
  double best_res = std::abs(horner(c, x));
  for (int it = 0; it < 4 && best_res > 0; ++it) {
    const Complex d = horner_derivative(c, best);
    if (d == Complex(0, 0)) break;
    const Complex next = best - horner(c, best) / d;
    const double res = std::abs(horner(c, next));
    if (!(res < best_res)) break;
    best = next;
    best_res = res;
  }
  return best;
}

double bisect_root(const QuarticCoeffs& c, double lo, double hi) {
  double hlo = h_of_k2(c, lo);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double hm = h_of_k2(c, mid);
    if (hm == 0) return mid;
    if ((hm < 0) == (hlo < 0)) {
      lo = mid;
      hlo = hm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Brackets a sign change of h around an approximate root and bisects it.
double refine_root(const QuarticCoeffs& c, double r) {
  const double base = std::max(1.0, std::abs(r));
  for (double delta = 1e-9 * base; delta < 1e-2 * base; delta *= 4) {
    const double lo = std::max(0.0, r - delta);
    const double hi = r + delta;
    const double hl = h_of_k2(c, lo), hh = h_of_k2(c, hi);
    if ((hl < 0) != (hh < 0)) return bisect_root(c, lo, hi);
  }
  return r;
}

}  // namespace

Matrix4 diffusion_matrix(const ModelParams& p) {
  Matrix4 D;
  D << p.d11, 0, p.d12, 0,  //
      0, p.d21, 0, -p.d22,  //
      0, 0, p.d3, 0,        //
      0, 0, 0, p.d4;
  return D;
}

Jacobian4 jacobian_at(const ModelParams& p, const Equilibrium& e) {
  if (!(relative_residual(p, e.state) <= kEquilibriumTolerance))
    throw std::invalid_argument("jacobian_at: state is not an equilibrium");
  const auto [u1, u2, v1, v2] = e.state;
  Matrix4 J = Matrix4::Zero();
  if (e.kind == EquilibriumKind::Coexistence) {
    // sigma1 - lambda1 u1 + eta1 u2 = 0 and sigma2 - lambda2 u2 - eta2 u1 = 0 here.
    J(0, 0) = -p.lambda1 * u1;
    J(1, 1) = -p.lambda2 * u2;
  } else {
    J(0, 0) = p.sigma1 - 2 * p.lambda1 * u1 + p.eta1 * u2;
    J(1, 1) = p.sigma2 - 2 * p.lambda2 * u2 - p.eta2 * u1;
  }
  J(0, 1) = p.eta1 * u1;
  J(1, 0) = -p.eta2 * u2;
  J(2, 1) = p.a1;
  J(2, 2) = -p.b1;
  J(3, 0) = p.a2;
  J(3, 3) = -p.b2;
  return {J, J.trace(), J.determinant()};
}

double self_diffusion_det(const ModelParams& p, const Equilibrium& e, double k2) {
  return (k2 * p.d11 + p.lambda1 * e.u1()) * (k2 * p.d21 + p.lambda2 * e.u2()) +
         p.eta1 * p.eta2 * e.u1() * e.u2();
}

SelfDiffusionVerdict self_diffusion_stable(const ModelParams& p, const Equilibrium& e,
                                           double k2_max, int n_samples) {
  const Jacobian4 jac = jacobian_at(p, e);
  const auto& J = jac.J;
  const int n = (k2_max > 0 && n_samples > 1) ? n_samples : 1;
  for (int i = 0; i < n; ++i) {
    const double k2 = n == 1 ? 0.0 : k2_max * i / (n - 1);
    const double a11 = J(0, 0) - k2 * p.d11;
    const double a22 = J(1, 1) - k2 * p.d21;
    const double tr = a11 + a22;
    const double det = a11 * a22 - J(0, 1) * J(1, 0);
    if (!(tr < 0 && det > 0)) return {false, k2};
  }
  return {true, std::nullopt};
}

QuarticCoeffs quartic_coeffs(const ModelParams& p, const Equilibrium& e) {
  if (e.kind != EquilibriumKind::Coexistence)
    throw std::invalid_argument("quartic_coeffs requires the coexistence equilibrium");
  const double u1 = e.u1(), u2 = e.u2();
  const double l1 = p.lambda1, l2 = p.lambda2, e1 = p.eta1, e2 = p.eta2;
  const double b1 = p.b1, b2 = p.b2, a1 = p.a1, a2 = p.a2;
  const double d11 = p.d11, d12 = p.d12, d21 = p.d21, d22 = p.d22, d3 = p.d3, d4 = p.d4;
  const double uu = u1 * u2;

  QuarticCoeffs c{};
  c.omega1 = d3 * d4 * d11 * d21;
  c.omega2 = l1 * d3 * d4 * d21 * u1 + l2 * d3 * d4 * d11 * u2 + b1 * d4 * d11 * d21 +
             b2 * d3 * d11 * d21;
  c.omega3 = l2 * b1 * d4 * d11 * u2 + l2 * b2 * d3 * d11 * u2 + l1 * b1 * d4 * d21 * u1 +
             l1 * b2 * d3 * d21 * u1 + l1 * l2 * d3 * d4 * uu + a1 * a2 * d12 * d22 +
             b1 * b2 * d11 * d21 + d3 * d4 * e1 * e2 * uu - a1 * d4 * d12 * e2 * u2 -
             a2 * d3 * d22 * e1 * u1;
  c.omega4 = l1 * l2 * b1 * d4 * uu + l1 * b1 * b2 * d21 * u1 + l2 * b1 * b2 * d11 * u2 +
             l1 * l2 * b2 * d3 * uu + b1 * d4 * e1 * e2 * uu + b2 * d3 * e1 * e2 * uu -
             a2 * b1 * d22 * e1 * u1 - a1 * b2 * d12 * e2 * u2;
  c.omega5 = l1 * l2 * b1 * b2 * uu + b1 * b2 * e1 * e2 * uu;
  return c;
}

double h_of_k2(const QuarticCoeffs& c, double k2) {
  return (((c.omega1 * k2 + c.omega2) * k2 + c.omega3) * k2 + c.omega4) * k2 + c.omega5;
}

Roots4 dispersion_eigenvalues(const ModelParams& p, const Equilibrium& e, double k2) {
  const Matrix4 M = jacobian_at(p, e).J - k2 * diffusion_matrix(p);
  Eigen::EigenSolver<Matrix4> solver(M, false);
  Roots4 out;
  for (int i = 0; i < 4; ++i) out[i] = solver.eigenvalues()[i];
  sort_descending_real(out);
  return out;
}

Roots4 quartic_roots_companion(const QuarticCoeffs& c) {
  if (c.omega1 == 0) throw std::invalid_argument("quartic leading coefficient is zero");
  Matrix4 C = Matrix4::Zero();
  C(0, 0) = -c.omega2 / c.omega1;
  C(0, 1) = -c.omega3 / c.omega1;
  C(0, 2) = -c.omega4 / c.omega1;
  C(0, 3) = -c.omega5 / c.omega1;
  C(1, 0) = C(2, 1) = C(3, 2) = 1.0;
  Eigen::EigenSolver<Matrix4> solver(C, false);
  Roots4 out;
  for (int i = 0; i < 4; ++i) out[i] = polish(c, solver.eigenvalues()[i]);
  sort_descending_real(out);
  return out;
}

std::optional<Roots4> quartic_roots_closed_form(const QuarticCoeffs& c) {
  if (c.omega1 == 0) throw std::invalid_argument("quartic leading coefficient is zero");
  constexpr double kDegenerate = 1e-9;
  const double a = c.omega1, b = c.omega2, cc = c.omega3, d = c.omega4, e = c.omega5;
  const Complex cbrt2 = std::cbrt(2.0);

  const double beta1 = cc * cc - 3 * b * d + 12 * a * e;
  const double beta2 = 2 * cc * cc * cc - 9 * b * d * cc - 72 * a * e * cc + 27 * a * d * d +
                       27 * b * b * e;
  const Complex disc = std::sqrt(Complex(-4 * beta1 * beta1 * beta1 + beta2 * beta2, 0));
  const Complex beta3 = beta2 + disc;
  if (std::abs(beta3) <= kDegenerate * (std::abs(beta2) + std::abs(disc)) ||
      std::abs(beta3) == 0)
    return std::nullopt;
  const Complex cbrt_beta3 = std::pow(beta3, 1.0 / 3.0);

  const Complex y = cbrt2 * beta1 / (3.0 * a * cbrt_beta3) + cbrt_beta3 / (3.0 * cbrt2 * a);
  const double head = b * b / (4 * a * a) - 2 * cc / (3 * a);
  const Complex beta4 = std::sqrt(head + y);
  if (std::abs(beta4) <= kDegenerate * (std::abs(head) + std::abs(y)) || std::abs(beta4) == 0)
    return std::nullopt;

  const Complex common = b * b / (2 * a * a) - 4 * cc / (3 * a) - y;
  const Complex q = (b * b * b / (a * a * a) - 4 * cc * b / (a * a) + 8 * d / a) / (4.0 * beta4);
  const Complex shift = -b / (4 * a);
  const Complex s12 = 0.5 * std::sqrt(common + q);
  const Complex s34 = 0.5 * std::sqrt(common - q);

  Roots4 out = {shift - 0.5 * beta4 + s12, shift - 0.5 * beta4 - s12,
                shift + 0.5 * beta4 + s34, shift + 0.5 * beta4 - s34};
  sort_descending_real(out);
  return out;
}

std::vector<Interval> unstable_band(const QuarticCoeffs& c) {
  std::vector<double> cand;
  for (const Complex& r : quartic_roots_companion(c)) {
    if (r.real() > 0 && std::abs(r.imag()) <= 1e-6 * std::max(1.0, std::abs(r)))
      cand.push_back(refine_root(c, r.real()));
  }
  std::sort(cand.begin(), cand.end());

  std::vector<Interval> bands;
  double left = 0.0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const double right = cand[i];
    if (right > left && h_of_k2(c, 0.5 * (left + right)) < 0) {
      if (!bands.empty() && bands.back().hi == left)
        bands.back().hi = right;
      else
        bands.push_back({left, right});
    }
    left = right;
  }
  return bands;
}

std::vector<Interval> unstable_band(const ModelParams& p, const Equilibrium& e) {
  return unstable_band(quartic_coeffs(p, e));
}

DispersionScan dispersion_scan(const ModelParams& p, const Equilibrium& e, double k2_max,
                               int n_samples) {
  if (n_samples < 1) throw std::invalid_argument("dispersion_scan needs at least one sample");
  const QuarticCoeffs c = quartic_coeffs(p, e);
  DispersionScan scan;
  scan.samples.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double k2 = n_samples == 1 ? 0.0 : k2_max * i / (n_samples - 1);
    DispersionSample s{k2, dispersion_eigenvalues(p, e, k2), 0, h_of_k2(c, k2)};
    s.max_real_part = s.eigenvalues[0].real();
    scan.samples.push_back(s);
  }
  scan.band = unstable_band(c);
  return scan;
}

}  // namespace turing
