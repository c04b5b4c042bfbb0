#include "phasecrack/fields.hpp"

#include "doctest.h"

#include <cmath>
#include <sstream>

using namespace phasecrack;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

ScalarField random_scalar(const Grid& g, CounterRng& rng) {
  ScalarField f(g);
  for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);
  return f;
}

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("grid geometry") {
  const Grid g = Grid::box({0, -1}, {2, 1}, 4, 8);
  CHECK(g.size() == 32);
  CHECK(g.spacing(0) == 0.5);
  CHECK(g.spacing(1) == 0.25);
  CHECK(g.cell_volume() == 0.125);
  CHECK(g.volume() == doctest::Approx(4.0));
  CHECK(g.center(0, 0) == 0.25);
  CHECK(g.contains({1.0, 0.0}));
  CHECK_FALSE(g.contains({2.5, 0.0}));
  CHECK(g.diameter() == doctest::Approx(std::sqrt(8.0)));
  CHECK_THROWS_AS(Grid::line(1.0, 0.0, 4), Error);
  CHECK_THROWS_AS(Grid::line(0.0, 1.0, 1), Error);
}

TEST_CASE("gradient is exact on affine fields") {
  const Grid g = Grid::box({0, 0}, {1, 2}, 7, 5);
  ScalarField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.center_of(i);
    f[i] = 3 * x[0] - 2 * x[1] + 1;
  }
  const auto d = gradient(f);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(d.comp[0][i] == doctest::Approx(3.0));
    CHECK(d.comp[1][i] == doctest::Approx(-2.0));
  }
}

TEST_CASE("adjoint operators satisfy <A x, y> = <x, A^T y>") {
  CounterRng rng(11);
  for (const Grid& g : {Grid::line(0, 1, 9), Grid::box({0, 0}, {1, 1}, 6, 5)}) {
    const auto f = random_scalar(g, rng);
    VectorField v(g);
    for (int k = 0; k < g.dim; ++k) {
      for (auto& x : v.comp[k]) x = rng.uniform(-1.0, 1.0);
    }
    const auto Gf = gradient(f);
    const auto GTv = gradient_adjoint(v);
    double lhs = 0.0;
    for (int k = 0; k < g.dim; ++k) lhs += dot(Gf.comp[k], v.comp[k]);
    CHECK(lhs == doctest::Approx(dot(f.values, GTv.values)).epsilon(1e-12));

    SymTensorField s(g);
    for (int k = 0; k < s.components(); ++k) {
      for (auto& x : s.comp[k]) x = rng.uniform(-1.0, 1.0);
    }
    const auto Eu = sym_gradient(v);
    const auto ETs = sym_gradient_adjoint(s);
    double a = 0.0;
    for (int k = 0; k < s.components(); ++k) a += dot(Eu.comp[k], s.comp[k]);
    double b = 0.0;
    for (int k = 0; k < g.dim; ++k) b += dot(v.comp[k], ETs.comp[k]);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("symmetric gradient of an affine displacement") {
  const Grid g = Grid::box({0, 0}, {1, 1}, 6, 6);
  VectorField u(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.center_of(i);
    u.comp[0][i] = 0.5 * x[0] + 0.2 * x[1];
    u.comp[1][i] = -0.4 * x[0] + 0.1 * x[1];
  }
  const auto e = sym_gradient(u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(e.comp[0][i] == doctest::Approx(0.5));
    CHECK(e.comp[1][i] == doctest::Approx(0.1));
    CHECK(e.comp[2][i] == doctest::Approx(-0.1));
  }
}

TEST_CASE("integration and interpolation") {
  const Grid g = Grid::box({0, 0}, {2, 1}, 8, 4);
  ScalarField f(g, 1.5);
  CHECK(integrate(f) == doctest::Approx(3.0));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.center_of(i);
    f[i] = x[0] - 3 * x[1];
  }
  // Midpoint quadrature is exact for affine integrands.
  CHECK(integrate(f) == doctest::Approx(2.0 - 3.0).epsilon(1e-12));
  CHECK(interpolate(g, f.values, {0.8, 0.55}) == doctest::Approx(0.8 - 1.65));
}

TEST_CASE("slices of a linear field are linear") {
  const Grid g = Grid::box({0, 0}, {1, 1}, 64, 64);
  ScalarField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.center_of(i);
    f[i] = 2 * x[0] + x[1];
  }
  const Point xi{std::sqrt(0.5), std::sqrt(0.5)};
  const auto s = slice_extract(f, xi, {0.5, 0.5}, 33);
  REQUIRE_FALSE(s.missed);
  REQUIRE(s.t.size() == s.values.size());
  for (std::size_t k = 0; k < s.t.size(); ++k) {
    CHECK(s.values[k] == doctest::Approx(1.5 + s.t[k] * 3 * std::sqrt(0.5)).epsilon(1e-9));
  }
}

TEST_CASE("field dumps round trip") {
  CounterRng rng(3);
  const Grid g = Grid::box({0, 0}, {1, 2}, 3, 4);
  VectorField u(g);
  for (int k = 0; k < 2; ++k) {
    for (auto& x : u.comp[k]) x = rng.uniform(-1.0, 1.0);
  }
  std::stringstream ss;
  write_field(ss, u);
  const auto d = read_field(ss);
  CHECK(d.grid == g);
  REQUIRE(d.components.size() == 2);
  CHECK(d.components[0] == u.comp[0]);
  CHECK(d.components[1] == u.comp[1]);
}

}
