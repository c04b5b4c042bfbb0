#include "phasecrack/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace phasecrack {

double simpson(const RealFunction& f, double a, double b, int panels) {
  if (panels < 2) panels = 2;
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < panels; ++i) {
    const double v = f(a + i * h);
    if (i % 2 != 0) {
      odd += v;
    } else {
      even += v;
    }
  }
  return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

double adaptive_integral(const RealFunction& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, rel_tol, &err);
}

double gauss_legendre8(const RealFunction& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 8>::integrate(f, a, b);
}

CumulativeIntegral::CumulativeIntegral(RealFunction integrand, double a, double b, std::size_t cells)
    : g_(std::move(integrand)), a_(a), b_(b) {
  if (!(b > a) || cells == 0) throw Error("CumulativeIntegral: empty interval");
  step_ = (b - a) / static_cast<double>(cells);
  values_.assign(cells + 1, 0.0);
  slopes_.assign(cells + 1, 0.0);
  for (std::size_t i = 0; i <= cells; ++i) slopes_[i] = g_(a + step_ * static_cast<double>(i));
  for (std::size_t i = 0; i < cells; ++i) {
    const double lo = a + step_ * static_cast<double>(i);
    const double hi = (i + 1 == cells) ? b : lo + step_;
    values_[i + 1] = values_[i] + adaptive_integral(g_, lo, hi);
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error("CumulativeIntegral: non-finite integrand");
  }
}

double CumulativeIntegral::hermite(std::size_t cell, double x) const {
  const double x0 = a_ + step_ * static_cast<double>(cell);
  const double t = (x - x0) / step_;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * values_[cell] + h10 * step_ * slopes_[cell] + h01 * values_[cell + 1] +
         h11 * step_ * slopes_[cell + 1];
}

double CumulativeIntegral::operator()(double x) const {
  if (x <= a_) return x == a_ ? 0.0 : -adaptive_integral(g_, x, a_);
  if (x >= b_) return values_.back() + (x == b_ ? 0.0 : adaptive_integral(g_, b_, x));
  const std::size_t n = cells();
  auto cell = static_cast<std::size_t>((x - a_) / step_);
  cell = std::min(cell, n - 1);
  return hermite(cell, x);
}

double CumulativeIntegral::inverse(double y) const {
  if (y <= values_.front()) return a_;
  if (y >= values_.back()) return b_;
  const auto it = std::upper_bound(values_.begin(), values_.end(), y);
  const auto cell = static_cast<std::size_t>(std::distance(values_.begin(), it)) - 1;
  double lo = a_ + step_ * static_cast<double>(cell);
  double hi = lo + step_;
  // Newton on the Hermite cubic, safeguarded by the bracket.
  double x = lo + step_ * (y - values_[cell]) / (values_[cell + 1] - values_[cell]);
  for (int it_count = 0; it_count < 100; ++it_count) {
    const double fx = hermite(cell, x) - y;
    if (fx > 0) {
      hi = x;
    } else {
      lo = x;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(x))) break;
    const double t = (x - (a_ + step_ * static_cast<double>(cell))) / step_;
    const double dh00 = (6 * t * t - 6 * t) / step_;
    const double dh10 = 3 * t * t - 4 * t + 1;
    const double dh01 = (-6 * t * t + 6 * t) / step_;
    const double dh11 = 3 * t * t - 2 * t;
    const double dfx = dh00 * values_[cell] + dh10 * slopes_[cell] + dh01 * values_[cell + 1] +
                       dh11 * slopes_[cell + 1];
    double next = (dfx > 0) ? x - fx / dfx : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  return x;
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t CounterRng::next_u64() {
  const std::uint64_t key = splitmix64(seed_ ^ splitmix64(stream_ + 0x632BE59BD9B4E019ULL));
  return splitmix64(key + splitmix64(counter_++));
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

}  // namespace phasecrack
