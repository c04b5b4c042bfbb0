#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace phasecrack {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using RealFunction = std::function<double(double)>;

/// Composite Simpson rule with `panels` (rounded up to even) subintervals.
double simpson(const RealFunction& f, double a, double b, int panels);

/// Adaptive Gauss-Kronrod (15 point) integration to a relative tolerance.
/// The Kronrod error estimate bottoms out near 1e-14 absolute, so much
/// tighter tolerances only buy full-depth bisection.
double adaptive_integral(const RealFunction& f, double a, double b, double rel_tol = 1e-10);

/// Fixed 8-point Gauss-Legendre rule on [a, b].
double gauss_legendre8(const RealFunction& f, double a, double b);

/// Tabulated running integral F(x) = ∫_a^x g over [a, b].
///
/// Node values come from adaptive quadrature on each cell, so they carry no
/// accumulated interpolation error. Between nodes F is the cubic Hermite
/// interpolant that uses the exact integrand g as its slope, which keeps the
/// table fourth-order accurate wherever g is smooth. `inverse` requires g > 0.
class CumulativeIntegral {
 public:
  CumulativeIntegral() = default;
  CumulativeIntegral(RealFunction integrand, double a, double b, std::size_t cells);

  double operator()(double x) const;
  /// Solves F(x) = y for x in [a, b]; y is clamped to [F(a), F(b)].
  double inverse(double y) const;

  double lower() const { return a_; }
  double upper() const { return b_; }
  double total() const { return values_.empty() ? 0.0 : values_.back(); }
  std::size_t cells() const { return values_.empty() ? 0 : values_.size() - 1; }

 private:
  double hermite(std::size_t cell, double x) const;

  RealFunction g_;
  double a_ = 0.0;
  double b_ = 0.0;
  double step_ = 0.0;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

/// Counter-based generator: the k-th draw of stream s under seed is a pure
/// function of (seed, s, k). Same seed gives the same numbers on any platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace phasecrack
