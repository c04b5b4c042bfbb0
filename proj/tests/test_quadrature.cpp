#include "phasecrack/quadrature.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <set>

using namespace phasecrack;

TEST_SUITE("quadrature") {

TEST_CASE("simpson integrates cubics exactly") {
  const auto f = [](double x) { return 4 * x * x * x - 3 * x * x + 2 * x - 1; };
  // Antiderivative x^4 - x^3 + x^2 - x on [-1, 2].
  const double exact = (16 - 8 + 4 - 2) - (1 + 1 + 1 + 1);
  CHECK(simpson(f, -1.0, 2.0, 2) == doctest::Approx(exact).epsilon(1e-14));
  CHECK(simpson(f, -1.0, 2.0, 3) == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("adaptive integral of smooth and peaked integrands") {
  CHECK(adaptive_integral([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // ∫ 1/√(a² + x²) on [0, 1] = asinh(1/a).
  const double a = 1e-3;
  CHECK(adaptive_integral([a](double x) { return 1 / std::sqrt(a * a + x * x); }, 0.0, 1.0) ==
        doctest::Approx(std::asinh(1 / a)).epsilon(1e-10));
  CHECK(adaptive_integral([](double) { return 1.0; }, 3.0, 3.0) == 0.0);
}

TEST_CASE("eight-point Gauss-Legendre is exact to degree 15") {
  const auto f = [](double x) { return std::pow(x, 15) + std::pow(x, 14); };
  CHECK(gauss_legendre8(f, 0.0, 1.0) == doctest::Approx(1.0 / 16 + 1.0 / 15).epsilon(1e-14));
}

TEST_CASE("cumulative integral and its inverse") {
  const CumulativeIntegral F([](double x) { return std::cos(x); }, 0.0, 1.5, 64);
  for (double x : {0.0, 0.1, 0.77, 1.2, 1.5}) {
    // Cubic Hermite on 64 cells: error about h^4/384.
    CHECK(F(x) == doctest::Approx(std::sin(x)).epsilon(1e-8));
    CHECK(F.inverse(std::sin(x)) == doctest::Approx(x).epsilon(1e-8));
  }
  CHECK(F.total() == doctest::Approx(std::sin(1.5)).epsilon(1e-13));
  CHECK(F.inverse(-1.0) == 0.0);
  CHECK(F.inverse(10.0) == 1.5);
  // Outside the table the value comes from direct quadrature.
  CHECK(F(2.0) == doctest::Approx(std::sin(2.0)).epsilon(1e-10));
  CHECK(F(-0.5) == doctest::Approx(std::sin(-0.5)).epsilon(1e-10));
  CHECK_THROWS_AS(CumulativeIntegral([](double) { return 1.0; }, 1.0, 1.0, 4), Error);
}

TEST_CASE("counter rng is a pure function of seed, stream and counter") {
  CounterRng a(42, 3);
  CounterRng b(42, 3);
  CounterRng other_stream(42, 4);
  CounterRng other_seed(43, 3);
  std::set<std::uint64_t> seen;
  for (int k = 0; k < 1000; ++k) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != other_stream.next_u64());
    CHECK(x != other_seed.next_u64());
    seen.insert(x);
  }
  CHECK(seen.size() == 1000);
  CHECK(a.counter() == 1000);

  CounterRng u(7);
  double sum = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const double v = u.uniform();
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
    sum += v;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

}
