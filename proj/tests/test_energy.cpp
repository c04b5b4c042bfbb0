#include "phasecrack/energy.hpp"

#include "doctest.h"

#include <cmath>

using namespace phasecrack;

namespace {

// Central-difference derivative of the total energy in one nodal value.
double numeric_partial(DiffuseState& s, std::vector<double>& values, std::size_t i, const PotentialSet& P,
                       const ElasticModel& M) {
  const double keep = values[i];
  const double h = 1e-6 * (1 + std::abs(keep));
  values[i] = keep + h;
  const double up = diffuse_energy(s, P, M).e_total;
  values[i] = keep - h;
  const double down = diffuse_energy(s, P, M).e_total;
  values[i] = keep;
  return (up - down) / (2 * h);
}

DiffuseState random_state(const Grid& g, CounterRng& rng) {
  DiffuseState s = uniform_state(g, 0.0, rng.uniform(0.05, 0.3), rng.uniform(0.05, 0.3));
  for (std::size_t i = 0; i < g.size(); ++i) {
    s.c[i] = rng.uniform(-0.2, 1.2);
    s.z[i] = rng.uniform(0.05, 0.95);
    for (int k = 0; k < g.dim; ++k) s.u.comp[k][i] = rng.uniform(-0.5, 0.5);
  }
  return s;
}

}  // namespace

TEST_SUITE("energy") {

TEST_CASE("closed-form energies of uniform states") {
  const auto P = make_default_potentials();
  const ElasticModel M;
  const Grid g = Grid::line(0, 2, 16);
  const double eps = 0.1;
  const double delta = 0.2;
  auto s = uniform_state(g, 0.0, eps, delta);
  CHECK(diffuse_energy(s, P, M).e_total == 0.0);

  s = uniform_state(g, 0.5, eps, delta);
  // (phi(1) + C_delta) W(1/2)/eps over a length-2 domain.
  CHECK(diffuse_energy(s, P, M).e_phase == doctest::Approx(2 * (1 + delta) * (1.0 / 16) / eps));

  s = uniform_state(g, 0.0, eps, delta);
  for (auto& z : s.z.values) z = 0.5;
  CHECK(diffuse_energy(s, P, M).e_crack == doctest::Approx(2 * 0.25 / delta));

  // u = a x with c = 0, z = 1: (1 + delta²)(lambda + 2 mu) a² per unit length.
  s = uniform_state(g, 0.0, eps, delta);
  for (std::size_t i = 0; i < g.size(); ++i) s.u.comp[0][i] = 0.3 * g.center_of(i)[0];
  CHECK(diffuse_energy(s, P, M).e_elastic == doctest::Approx(2 * (1 + delta * delta) * 0.09));
}

TEST_CASE("misfit strain is free when e(u) = c e0") {
  const auto P = make_default_potentials();
  ElasticModel M;
  M.e0 = {0.2, -0.1, 0.05};
  M.lame_lambda = 0.7;
  const Grid g = Grid::box({0, 0}, {1, 1}, 8, 8);
  auto s = uniform_state(g, 1.0, 0.1, 0.1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.center_of(i);
    s.u.comp[0][i] = 0.2 * x[0] + 0.05 * x[1];
    s.u.comp[1][i] = 0.05 * x[0] - 0.1 * x[1];
  }
  CHECK(diffuse_energy(s, P, M).e_elastic == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("stiffness") {
  ElasticModel M;
  M.lame_lambda = 2.0;
  M.lame_mu = 0.5;
  CHECK(M.stiffness(1, 0.3, 0, 0) == doctest::Approx(3.0 * 0.09));
  // λ(tr)² + 2μ(xx² + yy² + 2xy²).
  CHECK(M.stiffness(2, 0.1, 0.2, 0.3) == doctest::Approx(2.0 * 0.09 + 1.0 * (0.01 + 0.04 + 0.18)));
  const auto grad = M.stiffness_gradient(2, 0.1, 0.2, 0.3);
  const double h = 1e-7;
  CHECK(grad.xy == doctest::Approx((M.stiffness(2, 0.1, 0.2, 0.3 + h) - M.stiffness(2, 0.1, 0.2, 0.3 - h)) / (2 * h)));
  ElasticModel bad;
  bad.eta_rule.exponent = 1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("block gradients match central differences in two dimensions") {
  auto P = make_default_potentials();
  P.theta = 0.2;
  CounterRng rng(5);
  ElasticModel M;
  M.lame_lambda = 0.4;
  M.e0 = {0.3, -0.2, 0.1};
  const Grid g = Grid::box({0, 0}, {1, 1}, 5, 4);
  auto s = random_state(g, rng);
  const auto gc = grad_c(s, P, M);
  const auto gz = grad_z(s, P, M);
  const auto gu = grad_u(s, P, M);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(gc[i] == doctest::Approx(numeric_partial(s, s.c.values, i, P, M)).epsilon(1e-6));
    CHECK(gz[i] == doctest::Approx(numeric_partial(s, s.z.values, i, P, M)).epsilon(1e-6));
    for (int k = 0; k < 2; ++k) {
      CHECK(gu.comp[k][i] == doctest::Approx(numeric_partial(s, s.u.comp[k], i, P, M)).epsilon(1e-6));
    }
  }
}

TEST_CASE("grad_u splits into the elastic operator and the load") {
  const auto P = make_default_potentials();
  CounterRng rng(8);
  ElasticModel M;
  M.e0.xx = 0.4;
  const Grid g = Grid::line(0, 1, 12);
  const auto s = random_state(g, rng);
  const auto w = elastic_weights(s, M);
  const auto Au = apply_elastic(s.u, w, M);
  const auto b = elastic_load(s.c, w, M);
  const auto gu = grad_u(s, P, M);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(gu.comp[0][i] == doctest::Approx(Au.comp[0][i] - b.comp[0][i]));
}

TEST_CASE("damage outside the box is clamped") {
  const auto P = make_default_potentials();
  const Grid g = Grid::line(0, 1, 8);
  auto s = uniform_state(g, 0.0, 0.1, 0.1);
  s.z[3] = 1.2;
  s.z[4] = -0.1;
  const auto e = diffuse_energy(s, P, ElasticModel{});
  CHECK(e.clamped == 2);
  CHECK(std::isfinite(e.e_total));
}

TEST_CASE("mass projection") {
  CounterRng rng(2);
  const Grid g = Grid::box({0, 0}, {2, 1}, 6, 3);
  ScalarField c(g);
  for (auto& v : c.values) v = rng.uniform(0.0, 1.0);
  const auto p = project_mass(c, 0.3);
  CHECK(mass(p) == doctest::Approx(0.3).epsilon(1e-14));
  // The projection only shifts by a constant.
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(p[i] - c[i] == doctest::Approx(p[0] - c[0]));
}

TEST_CASE("invalid states are rejected") {
  const auto P = make_default_potentials();
  auto s = uniform_state(Grid::line(0, 1, 4), 0.0, 0.1, 0.1);
  s.c[2] = std::nan("");
  CHECK_THROWS(diffuse_energy(s, P, ElasticModel{}));
  s = uniform_state(Grid::line(0, 1, 4), 0.0, 0.1, 0.0);
  CHECK_THROWS(s.validate());
}

}
