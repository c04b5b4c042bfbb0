#include "phasecrack/sharp.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace phasecrack;

TEST_SUITE("sharp") {

TEST_CASE("one-dimensional configurations") {
  const auto P = make_default_potentials();
  ElasticModel M;

  SharpGeometry1D interface;
  interface.phase_points = {0.5};
  M.e0.xx = 1.0;
  interface.u_pieces = {{0.0, 0.0}, {1.0, -0.5}};
  CHECK(sharp_energy_1d(interface, P, M).e_total == doctest::Approx(1.0 / 3));

  M.e0.xx = 0.0;
  SharpGeometry1D coincident;
  coincident.phase_points = {0.5};
  coincident.crack_points = {0.5};
  auto e = sharp_energy_1d(coincident, P, M);
  CHECK(e.e_phase == 0.0);
  CHECK(e.e_total == doctest::Approx(2.0));

  SharpGeometry1D disjoint;
  disjoint.phase_points = {0.75};
  disjoint.crack_points = {0.25};
  CHECK(sharp_energy_1d(disjoint, P, M).e_total == doctest::Approx(7.0 / 3));

  // Theta mode charges a coincident interface theta * alpha_surf.
  auto Q = P;
  Q.theta = 0.5;
  CHECK(sharp_energy_1d(coincident, Q, M).e_total == doctest::Approx(2.0 + 0.5 / 3));
}

TEST_CASE("elastic energy of affine pieces") {
  const auto P = make_default_potentials();
  ElasticModel M;
  M.e0.xx = 0.5;
  SharpGeometry1D g;
  g.crack_points = {0.4};
  g.u_pieces = {{0.2, 0.0}, {-0.1, 3.0}};
  // (lambda + 2mu) = 1; c = 0 everywhere, so the misfit does not enter.
  const double expected = 0.4 * 0.04 + 0.6 * 0.01;
  CHECK(sharp_energy_1d(g, P, M).e_elastic == doctest::Approx(expected));
}

TEST_CASE("invalid one-dimensional geometries") {
  SharpGeometry1D g;
  g.phase_points = {0.5};
  g.u_pieces = {{0.0, 0.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(g.validate(), Error);
  g.u_pieces = {};
  g.phase_points = {0.7, 0.3};
  CHECK_THROWS_AS(g.validate(), Error);
  g.phase_points = {1.5};
  CHECK_THROWS_AS(g.validate(), Error);
}

TEST_CASE("planar configurations") {
  const auto P = make_default_potentials();
  const ElasticModel M;
  SharpGeometry2D half;
  half.A = {{0.5, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.5, 1.0}};
  CHECK(sharp_energy_2d(half, P, M).e_total == doctest::Approx(1.0 / 3));

  auto cracked = half;
  cracked.M = {{{0.5, 0.25}, {0.5, 0.75}}};
  const auto e = sharp_energy_2d(cracked, P, M);
  CHECK(e.e_phase == doctest::Approx(1.0 / 6));
  CHECK(e.e_crack == doctest::Approx(1.0));
  CHECK(e.e_total == doctest::Approx(7.0 / 6));

  CHECK(sharp_energy_2d(SharpGeometry2D{}, P, M).e_total == 0.0);

  SharpGeometry2D bowtie;
  bowtie.A = {{0.1, 0.1}, {0.9, 0.9}, {0.9, 0.1}, {0.1, 0.9}};
  CHECK_THROWS_AS(sharp_energy_2d(bowtie, P, M), Error);
}

TEST_CASE("planar elastic energy is integrated exactly") {
  const auto P = make_default_potentials();
  ElasticModel M;
  M.lame_lambda = 1.0;
  SharpGeometry2D g;
  g.u_spec.kind = "affine";
  g.u_spec.G = {0.1, 0.0, 0.0, 0.0};
  // C = λ·0.01 + 2μ·0.01 = 0.02 over the unit square.
  CHECK(sharp_energy_2d(g, P, M).e_elastic == doctest::Approx(0.02));

  g.u_spec.kind = "quadratic";
  g.u_spec.G = {0.0, 0.0, 0.0, 0.0};
  g.u_spec.H0 = {1.0, 0.0, 0.0};
  // e_xx = x, C = 2x², ∫ over the unit square = 2/3.
  CHECK(sharp_energy_2d(g, P, M).e_elastic == doctest::Approx(2.0 / 3).epsilon(1e-10));
}

TEST_CASE("polygon utilities") {
  const std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(polygon_area(square) == doctest::Approx(1.0));
  CHECK(point_in_polygon({0.5, 0.5}, square));
  CHECK_FALSE(point_in_polygon({1.5, 0.5}, square));
  CHECK(distance_to_polygon({0.5, 0.5}, square) == 0.0);
  CHECK(distance_to_polygon({2.0, 0.5}, square) == doctest::Approx(1.0));
  CHECK(std::isinf(distance_to_polygon({0.0, 0.0}, {})));
  CHECK(polygon_is_simple(square));
  CHECK_FALSE(polygon_is_simple({{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
  const std::vector<Point> big{{-1, -1}, {2, -1}, {2, 0.5}, {-1, 0.5}};
  CHECK(polygon_area(clip_to_box(big, {0, 0}, {1, 1})) == doctest::Approx(0.5));
}

TEST_CASE("distances to segments") {
  const Segment s{{0, 0}, {1, 0}};
  CHECK(point_segment_distance({0.5, 2.0}, s) == doctest::Approx(2.0));
  CHECK(point_segment_distance({-3.0, 4.0}, s) == doctest::Approx(5.0));
  CHECK(s.length() == doctest::Approx(1.0));
  const Grid g = Grid::box({0, 0}, {1, 1}, 16, 16);
  const auto d = distance_field(std::vector<Segment>{{{0.5, 0.0}, {0.5, 1.0}}}, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(d[i] == doctest::Approx(std::abs(g.center_of(i)[0] - 0.5)));
}

TEST_CASE("Minkowski content of a segment") {
  const std::vector<Segment> M{{{0.5, 0.25}, {0.5, 0.75}}};
  const Grid g = Grid::box({0, 0}, {1, 1}, 1 << 9, 1 << 9);
  const double r = 1.0 / 16;
  const double est = minkowski_content_estimate(M, r, g);
  CHECK(std::abs(est - (0.5 + std::numbers::pi * r / 2)) <= 4 * g.h() / r * 0.5);
  CHECK_THROWS_AS(minkowski_content_estimate(M, g.h(), g), Error);
}

TEST_CASE("rigid sides need a segment that cuts the domain") {
  const auto P = make_default_potentials();
  SharpGeometry2D g;
  g.M = {{{0.5, 0.25}, {0.5, 0.75}}};
  g.u_spec.kind = "rigid_sides";
  g.u_spec.t_plus = {0.1, 0.0};
  CHECK_THROWS_AS(g.validate(), Error);
  g.M = {{{0.5, 0.0}, {0.5, 1.0}}};
  CHECK_NOTHROW(g.validate());
  // Rigid motions carry no elastic energy.
  CHECK(sharp_energy_2d(g, P, ElasticModel{}).e_elastic == doctest::Approx(0.0));
  CHECK(sharp_energy_2d(g, P, ElasticModel{}).e_crack == doctest::Approx(2.0));
}

}
