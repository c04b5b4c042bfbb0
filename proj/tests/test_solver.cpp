#include "phasecrack/solver.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>

using namespace phasecrack;

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("u-step solves the linear elasticity block") {
  const auto P = make_default_potentials();
  ElasticModel M;
  M.e0.xx = 1.0;
  const Grid g = Grid::line(0, 1, 64);
  auto s = uniform_state(g, 0.0, 0.05, 0.1);
  for (std::size_t i = 0; i < g.size(); ++i) s.c[i] = g.center_of(i)[0] > 0.5 ? 1.0 : 0.0;
  const SolverPlan plan;
  const auto r = minimize_u(s, P, M, plan);
  CHECK(r.status == BlockStatus::ok);
  const double before = diffuse_energy(s, P, M).e_total;
  const double after = diffuse_energy(r.state, P, M).e_total;
  CHECK(after <= before);
  CHECK(max_abs(grad_u(r.state, P, M).comp[0]) < 1e-7);
}

TEST_CASE("z-step descends and stays in the box") {
  const auto P = make_default_potentials();
  ElasticModel M;
  M.e0.xx = 2.0;
  CounterRng rng(4);
  const Grid g = Grid::line(0, 1, 64);
  auto s = uniform_state(g, 0.0, 0.05, 0.05);
  for (std::size_t i = 0; i < g.size(); ++i) {
    s.c[i] = rng.uniform(0.0, 1.0);
    s.z[i] = rng.uniform(0.0, 1.0);
  }
  const SolverPlan plan;
  StepMemory memory;
  double energy = diffuse_energy(s, P, M).e_total;
  for (int k = 0; k < 5; ++k) {
    const auto r = minimize_z(s, P, M, plan, &memory);
    const double next = diffuse_energy(r.state, P, M).e_total;
    CHECK(next <= energy);
    for (double z : r.state.z.values) {
      CHECK(z >= 0.0);
      CHECK(z <= 1.0);
    }
    energy = next;
    s = r.state;
  }
  CHECK(memory.z > 0.0);
}

TEST_CASE("c-step descends and keeps the mass") {
  const auto P = make_default_potentials();
  const ElasticModel M;
  const Grid g = Grid::line(0, 1, 128);
  SolverPlan plan;
  plan.mass_constraint = 0.4;
  plan.seed = 3;
  auto s = default_initial_state(g, plan, 0.05, 0.1);
  CHECK(mass(s.c) == doctest::Approx(0.4).epsilon(1e-14));
  double energy = diffuse_energy(s, P, M).e_total;
  for (int k = 0; k < 10; ++k) {
    const auto r = minimize_c(s, P, M, plan);
    const double next = diffuse_energy(r.state, P, M).e_total;
    CHECK(next <= energy);
    CHECK(std::abs(mass(r.state.c) - 0.4) < 1e-12);
    energy = next;
    s = r.state;
  }
}

TEST_CASE("alternating minimization is monotone and reproducible") {
  const auto P = make_default_potentials();
  ElasticModel M;
  M.e0.xx = 1.0;
  SolverPlan plan;
  plan.mass_constraint = 0.5;
  plan.seed = 9;
  plan.max_outer = 40;
  const Grid g = Grid::line(0, 1, 256);
  const auto s0 = default_initial_state(g, plan, 1.0 / 32, std::pow(1.0 / 32, 2.0 / 3));
  const auto a = alternate(s0, P, M, plan);
  const auto b = alternate(s0, P, M, plan);
  REQUIRE(a.trajectory.sweeps.size() == b.trajectory.sweeps.size());
  for (std::size_t k = 0; k < a.trajectory.sweeps.size(); ++k) {
    CHECK(a.trajectory.sweeps[k].energy.e_total == b.trajectory.sweeps[k].energy.e_total);
  }
  const auto& sw = a.trajectory.sweeps;
  for (std::size_t k = 1; k < sw.size(); ++k) {
    CHECK(sw[k].energy.e_total <= sw[k - 1].energy.e_total * (1 + 10 * plan.cg_tol));
    CHECK(std::abs(sw[k].mass - 0.5) < 1e-12);
  }
  CHECK(sw.back().energy.e_total < sw.front().energy.e_total);
  CHECK_FALSE(a.trajectory.termination.empty());
}

TEST_CASE("initial state depends on the seed only through the jitter") {
  SolverPlan plan;
  const Grid g = Grid::line(0, 1, 32);
  plan.seed = 1;
  const auto a = default_initial_state(g, plan, 0.1, 0.1);
  plan.seed = 2;
  const auto b = default_initial_state(g, plan, 0.1, 0.1);
  CHECK(a.c.values != b.c.values);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(a.c[i] - 0.5) <= 1.1 * plan.jitter);
    CHECK(a.z[i] == 1.0);
  }
}

TEST_CASE("plan validation") {
  SolverPlan plan;
  plan.backtrack_factor = 1.5;
  CHECK_THROWS_AS(plan.validate(), Error);
  plan = {};
  plan.mass_constraint = 1.5;
  CHECK_THROWS_AS(plan.validate(), Error);
  CHECK(to_string(BlockStatus::no_step) == "no_step");
}

}
