#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "support.hpp"
#include "turing/lyapunov.hpp"

using namespace turing;

namespace {

FieldSet uniform(const GridSpec& g, const State4& s) {
  FieldSet f(g);
  for (int q = 0; q < 4; ++q) std::fill(f[q].begin(), f[q].end(), s[q]);
  return f;
}

}  // namespace

TEST_CASE("entropy density") {
  CHECK(entropy_density(2.0, 2.0) == 0);
  for (double ue : {0.01, 1.0, 16.0 / 11})
    for (double r : {-0.5, -1e-4, -1e-7, 1e-9, 5e-4, 0.1, 3.0}) {
      const double u = ue * (1 + r);
      const double h = entropy_density(u, ue);
      CHECK(h >= 0);
      // Direct formula where cancellation is harmless.
      if (std::abs(r) > 1e-2) CHECK(h == doctest::Approx(u - ue - ue * std::log(u / ue)).epsilon(1e-12));
      // Quadratic leading term near the equilibrium.
      if (std::abs(r) < 1e-3) CHECK(h == doctest::Approx(0.5 * ue * r * r).epsilon(1e-3));
    }
}

TEST_CASE("functionals at and near their reference states") {
  const auto p = fixtures::cross_diffusion();
  const auto e = *coexistence(p);
  const GridSpec g{16, 12, 0.5, 0.5};
  const auto c = default_lyapunov_config(p).config;
  const double area = g.area();

  CHECK(E1(uniform(g, e.state), p, e, c, g) == 0);
  CHECK(f1(uniform(g, e.state), e, g) == 0);
  const auto s = predator_only(p);
  CHECK(E2(uniform(g, s.state), p, c, g) == 0);
  CHECK(f2(uniform(g, s.state), p, g) == 0);

  SUBCASE("shift in v1 only") {
    auto x = e.state;
    x[2] += 1;
    CHECK(E1(uniform(g, x), p, e, c, g) == doctest::Approx(0.5 * c.delta1 * area));
    CHECK(f1(uniform(g, x), e, g) == doctest::Approx(area));
  }
  SUBCASE("prey density in E2 is linear") {
    auto x = s.state;
    x[1] = 0.3;
    CHECK(E2(uniform(g, x), p, c, g) == doctest::Approx(p.eta1 / p.eta2 * 0.3 * area));
  }
  SUBCASE("sandwich bounds for small relative perturbations") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> r(-0.1, 0.1);
    for (int trial = 0; trial < 50; ++trial) {
      FieldSet f = uniform(g, e.state);
      for (std::size_t k = 0; k < g.cells(); ++k) f.u1[k] = e.u1() * (1 + r(rng));
      double lo = 0, hi = 0, h = 0;
      for (double u : f.u1) {
        const double d2 = (u - e.u1()) * (u - e.u1());
        lo += d2 / (4 * e.u1());
        hi += 3 * d2 / (4 * e.u1());
        h += entropy_density(u, e.u1());
      }
      CHECK(lo <= h);
      CHECK(h <= hi);
    }
  }
  SUBCASE("nonpositive densities are rejected") {
    auto x = e.state;
    x[0] = 0;
    CHECK_THROWS_AS(E1(uniform(g, x), p, e, c, g), std::invalid_argument);
    CHECK_THROWS_AS(E2(uniform(g, x), p, c, g), std::invalid_argument);
  }
}

TEST_CASE("functionals are nonnegative on random fields") {
  const auto p = fixtures::cross_diffusion();
  const auto e = *coexistence(p);
  const GridSpec g{10, 10, 1, 1};
  const auto c = default_lyapunov_config(p).config;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(1e-3, 5);
  for (int trial = 0; trial < 200; ++trial) {
    FieldSet f(g);
    for (int q = 0; q < 4; ++q)
      for (double& x : f[q]) x = u(rng);
    CHECK(E1(f, p, e, c, g) >= 0);
    CHECK(E2(f, p, c, g) >= 0);
    CHECK(f1(f, e, g) >= 0);
    CHECK(f2(f, p, g) >= 0);
  }
}

TEST_CASE("default constants") {
  SUBCASE("self-diffusion: every interval non-empty and the value inside") {
    const auto d = default_lyapunov_config(fixtures::self_diffusion());
    CHECK_FALSE(d.flagged);
    CHECK(d.intervals.size() == 8);
    for (const auto& iv : d.intervals) {
      INFO(iv.name);
      CHECK(iv.inside);
      CHECK_FALSE(iv.empty);
    }
    // Lower end zero: arithmetic midpoint.
    CHECK(d.config.gamma1 == doctest::Approx(0.5));
    CHECK(d.config.eta4 == doctest::Approx(1.0));
  }
  SUBCASE("without coexistence only the prey-vanishing constants appear") {
    auto p = fixtures::self_diffusion();
    p.eta2 = 4;
    const auto d = default_lyapunov_config(p);
    CHECK(d.intervals.size() == 4);
    CHECK(d.config.sup_u1 == doctest::Approx(p.sigma1 / p.lambda1));
  }
  SUBCASE("strong cross-diffusion with tiny sup bounds empties delta1") {
    const auto d = default_lyapunov_config(fixtures::cross_diffusion(), SupBounds{1e-3, 1e-3});
    CHECK(d.flagged);
    bool found = false;
    for (const auto& iv : d.intervals)
      if (iv.name == "delta1") {
        found = true;
        CHECK(iv.empty);
        CHECK(iv.value == doctest::Approx(iv.lo * 1.01));
      }
    CHECK(found);
  }
  SUBCASE("geometric midpoint") {
    const auto d = default_lyapunov_config(fixtures::cross_diffusion());
    for (const auto& iv : d.intervals)
      if (!iv.empty && iv.lo > 0) CHECK(iv.value == doctest::Approx(std::sqrt(iv.lo * iv.hi)));
  }
}

TEST_CASE("line fits and decay reports") {
  std::vector<double> t, E;
  for (int i = 0; i < 20; ++i) {
    t.push_back(i);
    E.push_back(3.0 * std::exp(-0.2 * i));
  }
  const auto fit = fit_line(t, t);
  CHECK(fit.slope == doctest::Approx(1));
  CHECK(fit.r2 == doctest::Approx(1));

  const auto r = decay_report(t, E, Regime::CoexistenceStable);
  CHECK(r.samples == 20);
  CHECK(r.monotone_fraction == 1);
  CHECK(r.exponential.slope == doctest::Approx(-0.2));
  CHECK(r.exponential.r2 == doctest::Approx(1));
  CHECK(r.epsilon_estimate == doctest::Approx(0.2));
  CHECK(r.expected == DecayKind::Exponential);
  CHECK(to_text(r).find("expected_decay = exponential") != std::string::npos);

  SUBCASE("algebraic") {
    std::vector<double> A;
    for (double x : t) A.push_back(1.0 / (1 + 0.5 * x));
    const auto a = decay_report(t, A, Regime::Borderline);
    CHECK(a.algebraic.slope == doctest::Approx(0.5));
    CHECK(a.algebraic.r2 == doctest::Approx(1));
    CHECK(a.expected == DecayKind::Algebraic);
  }
  SUBCASE("constant") {
    const auto c = decay_report(t, std::vector<double>(20, 2.0), Regime::Indeterminate);
    CHECK(c.exponential.slope == 0);
    CHECK(c.monotone_fraction == 1);
    CHECK(c.expected == DecayKind::None);
  }
  SUBCASE("round-off floor is excluded from the fits") {
    auto F = E;
    for (int i = 15; i < 20; ++i) F[i] = 1e-17;
    const auto f = decay_report(t, F, Regime::CoexistenceStable);
    CHECK(f.fit_samples == 15);
    CHECK(f.exponential.slope == doctest::Approx(-0.2));
  }
  SUBCASE("burn-in and too few samples") {
    DecayOptions o;
    o.burn_in = 5;
    CHECK(decay_report(t, E, Regime::CoexistenceStable, o).samples == 15);
    o.burn_in = 11;
    CHECK_THROWS_AS(decay_report(t, E, Regime::CoexistenceStable, o), std::invalid_argument);
  }
}

TEST_CASE("E1 decreases along a self-diffusion run") {
  const auto p = fixtures::self_diffusion();
  const GridSpec g{16, 16, 1, 1};
  InitSpec s;
  s.base = *coexistence(p);
  RunOptions opt;
  opt.sample_every = 50;
  opt.tracker = make_tracker(p, default_lyapunov_config(p).config, g, true);
  const auto r = run(p, g, s, 0.01, 50, opt);
  const auto rep = decay_report(r.diagnostics, Regime::CoexistenceStable);
  CHECK(rep.monotone_fraction == 1);
  CHECK(rep.exponential.slope < 0);
  CHECK(rep.exponential.r2 > 0.99);
}
