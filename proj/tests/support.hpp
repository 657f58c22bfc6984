#pragma once

#include <cmath>
#include <random>

#include "turing/model.hpp"

namespace fixtures {

// Reaction set shared by most experiments; coexistence (16/11, 1/11, 1/11, 16/11).
inline turing::ModelParams reaction_base() {
  turing::ModelParams p;
  p.sigma1 = 2, p.sigma2 = 3, p.lambda1 = 2, p.lambda2 = 1, p.eta1 = 10, p.eta2 = 2;
  p.a1 = p.a2 = p.b1 = p.b2 = 0.5;
  p.d11 = 0.1, p.d12 = 1, p.d3 = 3, p.d21 = 1, p.d22 = 2, p.d4 = 2;
  return p;
}

// Cross-diffusion instability set (band [0.253661, 0.925807]).
inline turing::ModelParams cross_diffusion() { return reaction_base(); }

// Same with the cross-diffusion switched off.
inline turing::ModelParams self_diffusion() {
  auto p = reaction_base();
  p.d12 = 0, p.d22 = 0;
  return p;
}

// Random valid parameters, always satisfying the parabolicity inequalities.
inline turing::ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.05, 5.0), frac(0.0, 0.95);
  turing::ModelParams p;
  p.d11 = pos(rng), p.d3 = pos(rng), p.d21 = pos(rng), p.d4 = pos(rng);
  p.d12 = frac(rng) * 2 * std::sqrt(p.d11 * p.d3);
  p.d22 = frac(rng) * 2 * std::sqrt(p.d21 * p.d4);
  p.sigma1 = pos(rng), p.sigma2 = pos(rng), p.lambda1 = pos(rng), p.lambda2 = pos(rng);
  p.eta1 = pos(rng), p.eta2 = pos(rng);
  p.a1 = pos(rng), p.a2 = pos(rng), p.b1 = pos(rng), p.b2 = pos(rng);
  return p;
}

// Random valid parameters for which coexistence exists.
inline turing::ModelParams random_coexistence_params(std::mt19937_64& rng) {
  for (;;) {
    auto p = random_params(rng);
    if (turing::coexistence_exists(p)) return p;
  }
}

}  // namespace fixtures
