#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "turing/model.hpp"

namespace turing {

/// Raised when a time integration leaves the admissible state space
/// (negative densities, NaN/Inf).
class SimulationAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<State4> states;
  double dt = 0;
};

/// Classical fixed-step RK4 on the reaction system. Every record_every-th step
/// is stored, plus the final state. Aborts if any component drops below -1e-9.
Trajectory integrate(const ModelParams& p, const State4& init, double t_end, double dt,
                     int record_every = 1);

struct Point2 {
  double x;
  double y;
};

using Polyline = std::vector<Point2>;

/// Zero-growth lines in the (u1, u2) plane, as (u1, u2) points:
///   predator: sigma1 - lambda1 u1 + eta1 u2 = 0, sampled over u2_range
///   prey:     sigma2 - lambda2 u2 - eta2 u1 = 0, sampled over u1_range
struct Nullclines {
  Polyline predator;
  Polyline prey;
};

Nullclines nullclines(const ModelParams& p, Point2 u1_range, Point2 u2_range, int n);

/// First crossing of two polylines, if any.
std::optional<Point2> polyline_intersection(const Polyline& a, const Polyline& b);

}  // namespace turing
