#include "turing/ode.hpp"

#include <cmath>
#include <sstream>

namespace turing {

namespace {

State4 axpy(const State4& x, double a, const State4& k) {
  return {x[0] + a * k[0], x[1] + a * k[1], x[2] + a * k[2], x[3] + a * k[3]};
}

}  // namespace

Trajectory integrate(const ModelParams& p, const State4& init, double t_end, double dt,
                     int record_every) {
  if (!(dt > 0) || !(t_end > 0)) throw std::invalid_argument("integrate: dt and t_end must be > 0");
  if (record_every < 1) throw std::invalid_argument("integrate: record_every must be >= 1");
  for (double x : init)
    if (!(x >= 0)) throw std::invalid_argument("integrate: initial state must be nonnegative");

  const auto steps = static_cast<long long>(std::llround(t_end / dt));
  Trajectory tr;
  tr.dt = dt;
  tr.times.push_back(0.0);
  tr.states.push_back(init);

  State4 y = init;
  for (long long n = 1; n <= steps; ++n) {
    const State4 k1 = reaction_rhs(p, y);
    const State4 k2 = reaction_rhs(p, axpy(y, 0.5 * dt, k1));
    const State4 k3 = reaction_rhs(p, axpy(y, 0.5 * dt, k2));
    const State4 k4 = reaction_rhs(p, axpy(y, dt, k3));
    for (int i = 0; i < 4; ++i) y[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);

    for (int i = 0; i < 4; ++i) {
      if (!(y[i] >= -1e-9) || !std::isfinite(y[i])) {
        std::ostringstream os;
        os << "ODE state left the admissible region at t=" << n * dt << " (component " << i
           << " = " << y[i] << "); reduce dt";
        throw SimulationAbort(os.str());
      }
    }
    if (n % record_every == 0 || n == steps) {
      tr.times.push_back(static_cast<double>(n) * dt);
      tr.states.push_back(y);
    }
  }
  return tr;
}

Nullclines nullclines(const ModelParams& p, Point2 u1_range, Point2 u2_range, int n) {
  if (n < 2) throw std::invalid_argument("nullclines: need at least two points");
  Nullclines out;
  out.predator.reserve(static_cast<std::size_t>(n));
  out.prey.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / (n - 1);
    const double u2 = u2_range.x + s * (u2_range.y - u2_range.x);
    out.predator.push_back({(p.sigma1 + p.eta1 * u2) / p.lambda1, u2});
    const double u1 = u1_range.x + s * (u1_range.y - u1_range.x);
    out.prey.push_back({u1, (p.sigma2 - p.eta2 * u1) / p.lambda2});
  }
  return out;
}

std::optional<Point2> polyline_intersection(const Polyline& a, const Polyline& b) {
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const Point2 p = a[i], r = {a[i + 1].x - p.x, a[i + 1].y - p.y};
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      const Point2 q = b[j], s = {b[j + 1].x - q.x, b[j + 1].y - q.y};
      const double denom = r.x * s.y - r.y * s.x;
      if (denom == 0) continue;
      const double qpx = q.x - p.x, qpy = q.y - p.y;
      const double t = (qpx * s.y - qpy * s.x) / denom;
      const double u = (qpx * r.y - qpy * r.x) / denom;
      if (t >= 0 && t <= 1 && u >= 0 && u <= 1) return Point2{p.x + t * r.x, p.y + t * r.y};
    }
  }
  return std::nullopt;
}

}  // namespace turing
