#include "turing/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cfloat>
#include <cstdlib>
#include <limits>

namespace turing::kernels {

namespace {

struct Coeffs {
  double dt, idx2, idy2;
  double d11, d12, d21, d22, d3, d4;
  double s1, s2, l1, l2, e1, e2, a1, a2, b1, b2;
};

Coeffs make_coeffs(const ModelParams& p, const GridSpec& g, double dt) {
  return {dt,       1.0 / (g.dx * g.dx), 1.0 / (g.dy * g.dy),
          p.d11,    p.d12,     p.d21,     p.d22,     p.d3,      p.d4,
          p.sigma1, p.sigma2,  p.lambda1, p.lambda2, p.eta1,    p.eta2,
          p.a1,     p.a2,      p.b1,      p.b2};
}

struct Neighbours {
  double c, w, e, s, n;
};

inline double laplacian(const Coeffs& k, const Neighbours& x) {
  return ((x.w + x.e) - 2.0 * x.c) * k.idx2 + ((x.s + x.n) - 2.0 * x.c) * k.idy2;
}

// Shared by both kernels so the arithmetic is identical operation for operation.
inline void update_cell(const Coeffs& k, const Neighbours& u1, const Neighbours& u2,
                        const Neighbours& v1, const Neighbours& v2, double& o1, double& o2,
                        double& o3, double& o4) {
  const double lu1 = laplacian(k, u1);
  const double lu2 = laplacian(k, u2);
  const double lv1 = laplacian(k, v1);
  const double lv2 = laplacian(k, v2);
  const double r1 = u1.c * (k.s1 - k.l1 * u1.c + k.e1 * u2.c);
  const double r2 = u2.c * (k.s2 - k.l2 * u2.c - k.e2 * u1.c);
  o1 = u1.c + k.dt * (k.d11 * lu1 + k.d12 * lv1 + r1);
  o2 = u2.c + k.dt * (k.d21 * lu2 - k.d22 * lv2 + r2);
  o3 = v1.c + k.dt * (k.d3 * lv1 + k.a1 * u2.c - k.b1 * v1.c);
  o4 = v2.c + k.dt * (k.d4 * lv2 + k.a2 * u1.c - k.b2 * v2.c);
}

inline bool out_of_range(double x) { return !(x >= kAbortThreshold && x <= DBL_MAX); }

}  // namespace

StepStats step_reference(const ModelParams& p, const GridSpec& g, double dt, const FieldSet& in,
                         FieldSet& out) {
  const Coeffs k = make_coeffs(p, g, dt);
  const int nx = g.nx, ny = g.ny;
  auto at = [&](const std::vector<double>& f, int i, int j) {
    i = std::clamp(i, 0, nx - 1);
    j = std::clamp(j, 0, ny - 1);
    return f[g.index(i, j)];
  };
  auto hood = [&](const std::vector<double>& f, int i, int j) {
    return Neighbours{at(f, i, j), at(f, i - 1, j), at(f, i + 1, j), at(f, i, j - 1),
                      at(f, i, j + 1)};
  };

  StepStats st{std::numeric_limits<double>::infinity(), false};
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = g.index(i, j);
      update_cell(k, hood(in.u1, i, j), hood(in.u2, i, j), hood(in.v1, i, j), hood(in.v2, i, j),
                  out.u1[c], out.u2[c], out.v1[c], out.v2[c]);
      for (double x : {out.u1[c], out.u2[c], out.v1[c], out.v2[c]}) {
        st.min_value = std::min(st.min_value, x);
        st.bad = st.bad || out_of_range(x);
      }
    }
  }
  out.time = in.time + dt;
  return st;
}

StepStats step_parallel(const ModelParams& p, const GridSpec& g, double dt, const FieldSet& in,
                        FieldSet& out) {
  const Coeffs k = make_coeffs(p, g, dt);
  const int nx = g.nx, ny = g.ny;
  double min_value = std::numeric_limits<double>::infinity();
  bool bad = false;

#pragma omp parallel for schedule(static) reduction(min : min_value) reduction(|| : bad)
  for (int j = 0; j < ny; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * nx;
    const std::size_t south = static_cast<std::size_t>(j > 0 ? j - 1 : 0) * nx;
    const std::size_t north = static_cast<std::size_t>(j < ny - 1 ? j + 1 : ny - 1) * nx;
    const double* f[4] = {in.u1.data(), in.u2.data(), in.v1.data(), in.v2.data()};
    double* o1 = out.u1.data() + row;
    double* o2 = out.u2.data() + row;
    double* o3 = out.v1.data() + row;
    double* o4 = out.v2.data() + row;

    auto hood = [&](int q, int i, int w, int e) {
      const double* r = f[q];
      return Neighbours{r[row + i], r[row + w], r[row + e], r[south + i], r[north + i]};
    };
    auto cell = [&](int i, int w, int e) {
      update_cell(k, hood(0, i, w, e), hood(1, i, w, e), hood(2, i, w, e), hood(3, i, w, e),
                  o1[i], o2[i], o3[i], o4[i]);
    };

    cell(0, 0, 1);
    for (int i = 1; i < nx - 1; ++i) cell(i, i - 1, i + 1);
    cell(nx - 1, nx - 2, nx - 1);

    double row_min = min_value;
    bool row_bad = false;
    for (int i = 0; i < nx; ++i) {
      const double m = std::min(std::min(o1[i], o2[i]), std::min(o3[i], o4[i]));
      row_min = std::min(row_min, m);
      row_bad = row_bad || out_of_range(o1[i]) || out_of_range(o2[i]) || out_of_range(o3[i]) ||
                out_of_range(o4[i]);
    }
    min_value = std::min(min_value, row_min);
    bad = bad || row_bad;
  }
  out.time = in.time + dt;
  return {min_value, bad};
}

int default_threads() {
  static const int initial = omp_get_max_threads();
  if (const char* env = std::getenv("TURING_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return std::min(n, initial);
  }
  return initial;
}

void set_threads(int n) { omp_set_num_threads(n > 0 ? n : default_threads()); }

}  // namespace turing::kernels
