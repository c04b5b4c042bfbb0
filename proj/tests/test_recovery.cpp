#include "phasecrack/recovery.hpp"

#include "doctest.h"

#include <cmath>

using namespace phasecrack;

TEST_SUITE("recovery") {

TEST_CASE("profile inverse is the identity") {
  const auto P = make_default_potentials();
  for (WellKind which : {WellKind::W, WellKind::V}) {
    const OptimalProfile op({1e-4, 0.05, which, false}, P);
    for (int k = 0; k <= 100; ++k) {
      const double s = k / 100.0;
      CHECK(op.g(op.zeta(s)) == doctest::Approx(s).epsilon(1e-9));
    }
    CHECK(op.g(-1.0) == 0.0);
    CHECK(op.g(op.width() + 1.0) == 1.0);
  }
}

TEST_CASE("tabulated zeta agrees with direct quadrature") {
  const auto P = make_default_potentials();
  const ProfileParams pp{1e-4, 0.02, WellKind::W, false};
  const OptimalProfile op(pp, P);
  for (double s : {0.01, 0.3, 0.5, 0.97, 1.0}) CHECK(op.zeta(s) == doctest::Approx(zeta(pp, P, s)).epsilon(1e-9));
  // Without lambda the V profile is 1 - exp(-r/delta); with it the width is finite:
  // ∫_0^1 δ/√(λ + (1-t)²) = δ asinh(1/√λ).
  const ProfileParams pv{1e-4, 0.1, WellKind::V, false};
  CHECK(zeta(pv, P, 1.0) == doctest::Approx(0.1 * std::asinh(100.0)).epsilon(1e-10));
}

TEST_CASE("profile slope solves the equipartition equation") {
  const auto P = make_default_potentials();
  const OptimalProfile op({1e-4, 0.05, WellKind::W, false}, P);
  for (double r : {0.01, 0.1, 0.2}) {
    const double h = 1e-6;
    const double fd = (op.g(r + h) - op.g(r - h)) / (2 * h);
    CHECK(op.slope(r) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("one-dimensional profile energy") {
  const auto P = make_default_potentials();
  // One transition costs alpha_surf for W and alpha_frac/2 for V as lambda -> 0.
  const double lam = 1e-8;
  CHECK(profile_energy_1d({lam, 1.0, WellKind::W, false}, P) == doctest::Approx(1.0 / 3).epsilon(1e-6));
  CHECK(profile_energy_1d({lam, 1.0, WellKind::V, false}, P) == doctest::Approx(1.0).epsilon(1e-6));
  // Independent of the scale and increasing in lambda.
  CHECK(profile_energy_1d({1e-3, 0.1, WellKind::V, false}, P) ==
        doctest::Approx(profile_energy_1d({1e-3, 1.0, WellKind::V, false}, P)));
  CHECK(profile_energy_1d({1e-2, 1.0, WellKind::V, false}, P) > profile_energy_1d({1e-3, 1.0, WellKind::V, false}, P));
}

TEST_CASE("cutoff and the width condition") {
  CHECK(cutoff(-1.0) == 0.0);
  CHECK(cutoff(0.5) == doctest::Approx(0.5));
  CHECK(cutoff(2.0) == 1.0);
  for (int k = 0; k < 100; ++k) CHECK(cutoff(k / 100.0) <= cutoff((k + 1) / 100.0));
  CHECK(width_condition(1e-6, 0.1, 1e-2));
  CHECK_FALSE(width_condition(1e-2, 0.1, 1e-2));
}

TEST_CASE("recovery of a crack in one dimension") {
  const auto P = make_default_potentials();
  SharpGeometry1D g;
  g.crack_points = {0.5};
  const double eps = 1.0 / 64;
  const double delta = std::pow(eps, 2.0 / 3);
  const Grid grid = Grid::line(0, 1, 1 << 13);
  const auto r = build_recovery(g, eps, delta, grid, P);
  for (double z : r.state.z.values) {
    CHECK(z >= 0.0);
    CHECK(z <= 1.0);
  }
  CHECK(r.state.z[grid.size() / 2] < 0.05);
  CHECK(r.state.z[0] == doctest::Approx(1.0));
  for (double c : r.state.c.values) CHECK(c == 0.0);
  const auto e = diffuse_energy(r.state, P, ElasticModel{});
  CHECK(e.e_total == doctest::Approx(2.0).epsilon(0.01));
  CHECK_FALSE(r.width_in_play);
}

TEST_CASE("recovery of a phase boundary in one dimension") {
  const auto P = make_default_potentials();
  SharpGeometry1D g;
  g.phase_points = {0.5};
  const auto r = build_recovery(g, 1.0 / 128, 0.05, Grid::line(0, 1, 1 << 13), P);
  const auto e = diffuse_energy(r.state, P, ElasticModel{});
  // (1 + C_delta) * alpha_surf up to the lambda correction.
  CHECK(e.e_total == doctest::Approx((1 + 0.05) / 3).epsilon(0.01));
  CHECK(r.state.c[0] == doctest::Approx(0.0));
  CHECK(r.state.c[(1 << 13) - 1] == doctest::Approx(1.0));
}

TEST_CASE("width condition in play is enforced or flagged") {
  const auto P = make_default_potentials();
  SharpGeometry1D g;
  g.crack_points = {0.5};
  g.phase_points = {0.5};
  const Grid grid = Grid::line(0, 1, 1 << 12);
  CHECK_THROWS_AS(build_recovery(g, 1.0 / 64, 0.1, grid, P), RecoveryError);
  RecoveryOptions opt;
  opt.enforce_width = false;
  const auto r = build_recovery(g, 1.0 / 64, 0.1, grid, P, opt);
  CHECK(r.width_in_play);
  CHECK_FALSE(r.width_ok);
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("unresolved profiles and mismatched grids are rejected") {
  const auto P = make_default_potentials();
  SharpGeometry1D g;
  g.crack_points = {0.5};
  CHECK_THROWS_AS(build_recovery(g, 1e-4, 1e-3, Grid::line(0, 1, 64), P), RecoveryError);
  CHECK_THROWS_AS(build_recovery(g, 1.0 / 64, 0.1, Grid::line(0, 2, 1024), P), RecoveryError);
}

TEST_CASE("planar recovery keeps u off the damage core") {
  const auto P = make_default_potentials();
  SharpGeometry2D g;
  g.M = {{{0.5, 0.0}, {0.5, 1.0}}};
  g.u_spec.kind = "rigid_sides";
  g.u_spec.t_plus = {0.1, 0.0};
  const double eps = 1.0 / 32;
  const double delta = 0.1;
  const Grid grid = Grid::box({0, 0}, {1, 1}, 128, 128);
  RecoveryOptions opt;
  opt.lambda = 0.1;
  const auto r = build_recovery(g, eps, delta, grid, P, opt);
  bool saw_zero = false;
  bool saw_shift = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = std::abs(grid.center_of(i)[0] - 0.5);
    const double u = r.state.u.comp[0][i];
    CHECK(r.state.u.comp[1][i] == doctest::Approx(0.0));
    if (d >= opt.lambda * delta) {
      CHECK((u == doctest::Approx(0.0) || u == doctest::Approx(0.1)));
      saw_zero = saw_zero || u == doctest::Approx(0.0);
      saw_shift = saw_shift || u == doctest::Approx(0.1);
    } else {
      CHECK(std::abs(u) <= 0.1);
    }
  }
  CHECK(saw_zero);
  CHECK(saw_shift);
}

}
