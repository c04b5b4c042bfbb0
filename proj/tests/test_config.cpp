#include "phasecrack/config.hpp"

#include "doctest.h"

#include <string>

using namespace phasecrack;

namespace {

std::vector<std::string> violations_of(const std::string& text) {
  try {
    parse_config_string(text);
  } catch (const ConfigError& e) {
    return e.violations();
  }
  return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults round trip") {
  const auto cfg = parse_config_string("");
  CHECK(parse_config_string(emit_config(cfg)) == cfg);
}

TEST_CASE("a full configuration round trips") {
  const std::string text = R"(
# comment
[potential]
W_scale = 2
samples = 500

[elastic]
e0_xx = 0.25
lame_lambda = 1.5
theta = 0.3

[geometry]
dim = 2
polygon = 0.5 0, 1 0, 1 1, 0.5 1
segments = 0.5 0.25 0.5 0.75

[solver]
mass = 0.4
max_outer = 20

[sweep]
eps = 0.0625, 0.03125
delta_rule = sqrt
lambda = 0.001
enforce_width = false

[grid]
rule = resolve
cells_per_width = 4

[run]
seed = 12
out = results
)";
  const auto cfg = parse_config_string(text);
  CHECK(cfg.potential.W_scale == 2.0);
  CHECK(cfg.elastic.e0.xx == 0.25);
  CHECK(cfg.theta == doctest::Approx(0.3));
  CHECK(cfg.solver.mass_constraint.value() == doctest::Approx(0.4));
  CHECK(cfg.solver.seed == 12);
  CHECK(cfg.sweep.delta_rule.p == doctest::Approx(0.5));
  CHECK(cfg.sweep.grid_rule.kind == "resolve");
  const auto* g = std::get_if<SharpGeometry2D>(&cfg.geometry);
  REQUIRE(g);
  CHECK(g->A.size() == 4);
  REQUIRE(g->M.size() == 1);
  CHECK(g->M[0].b[1] == 0.75);
  CHECK(parse_config_string(emit_config(cfg)) == cfg);
}

TEST_CASE("theta outside [0, 1] is rejected") {
  CHECK(mentions(violations_of("[elastic]\ntheta = 1.5\n"), "theta"));
}

TEST_CASE("a delta rule without eps/delta -> 0 is rejected") {
  const auto v = violations_of("[sweep]\ndelta_rule = power\ndelta_k = 1\ndelta_p = 2\n");
  CHECK(mentions(v, "eps/delta"));
}

TEST_CASE("violations are aggregated") {
  const auto v = violations_of("[elastic]\ntheta = -1\nlame_mu = abc\n[bogus]\nx = 1\n[solver]\nunknown = 3\n");
  CHECK(v.size() >= 4);
  CHECK(mentions(v, "bogus"));
  CHECK(mentions(v, "unknown"));
}

TEST_CASE("geometry keys must match the dimension") {
  CHECK_FALSE(violations_of("[geometry]\ndim = 1\npolygon = 0 0, 1 0, 1 1\n").empty());
  CHECK_FALSE(violations_of("[geometry]\ndim = 2\ncrack_points = 0.5\n").empty());
  CHECK(violations_of("[geometry]\ndim = 1\ncrack_points = 0.5\nphase_points = 0.25\n[sweep]\nenforce_width = false\n").empty());
}

TEST_CASE("malformed lines") {
  CHECK_FALSE(violations_of("[run]\nseed\n").empty());
  CHECK_FALSE(violations_of("seed = 3\n").empty());
  CHECK_FALSE(violations_of("[geometry]\ndim = 3\n").empty());
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(parse_config("/nonexistent/config.ini"), ConfigError);
}

TEST_CASE("width condition in play") {
  const auto P = make_default_potentials();
  const SharpGeometry near = SharpGeometry1D{.phase_points = {0.5}, .crack_points = {0.5}};
  const SharpGeometry far = SharpGeometry1D{.phase_points = {0.9}, .crack_points = {0.1}};
  CHECK(width_condition_in_play(near, 1e-3, 1e-2, 1e-4, P));
  CHECK_FALSE(width_condition_in_play(far, 1e-3, 1e-2, 1e-4, P));
}

}
