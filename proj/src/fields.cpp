#include "phasecrack/fields.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace phasecrack {

Grid Grid::line(double a, double b, int n) {
  Grid g;
  g.dim = 1;
  g.origin = {a, 0.0};
  g.extent = {b - a, 1.0};
  g.cells = {n, 1};
  g.validate();
  return g;
}

Grid Grid::box(Point lo, Point hi, int nx, int ny) {
  Grid g;
  g.dim = 2;
  g.origin = lo;
  g.extent = {hi[0] - lo[0], hi[1] - lo[1]};
  g.cells = {nx, ny};
  g.validate();
  return g;
}

void Grid::validate() const {
  if (dim != 1 && dim != 2) throw Error("grid: dim must be 1 or 2");
  for (int a = 0; a < dim; ++a) {
    if (cells[a] < 2) throw Error("grid: need at least 2 cells per axis");
    if (!(extent[a] > 0) || !std::isfinite(extent[a])) throw Error("grid: extent must be positive");
  }
}

double Grid::h() const { return dim == 1 ? spacing(0) : std::min(spacing(0), spacing(1)); }

std::size_t Grid::size() const {
  return dim == 1 ? static_cast<std::size_t>(cells[0])
                  : static_cast<std::size_t>(cells[0]) * static_cast<std::size_t>(cells[1]);
}

double Grid::cell_volume() const { return dim == 1 ? spacing(0) : spacing(0) * spacing(1); }

double Grid::volume() const { return dim == 1 ? extent[0] : extent[0] * extent[1]; }

double Grid::face_area(int axis) const {
  if (dim == 1) return 1.0;
  return spacing(1 - axis);
}

Point Grid::center_of(std::size_t index) const {
  if (dim == 1) return {center(0, static_cast<int>(index)), 0.0};
  const auto n0 = static_cast<std::size_t>(cells[0]);
  return {center(0, static_cast<int>(index % n0)), center(1, static_cast<int>(index / n0))};
}

double Grid::diameter() const { return dim == 1 ? extent[0] : std::hypot(extent[0], extent[1]); }

bool Grid::contains(const Point& x) const {
  for (int a = 0; a < dim; ++a) {
    if (x[a] < origin[a] || x[a] > origin[a] + extent[a]) return false;
  }
  return true;
}

ScalarField::ScalarField(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw Error("ScalarField: value count does not match grid");
}

VectorField::VectorField(const Grid& g, double fill) : grid(g) {
  for (int c = 0; c < g.dim; ++c) comp[c].assign(g.size(), fill);
}

SymTensorField::SymTensorField(const Grid& g, double fill) : grid(g) {
  const int n = g.dim == 1 ? 1 : 3;
  for (int c = 0; c < n; ++c) comp[c].assign(g.size(), fill);
}

namespace {

// Visits every line of cells parallel to `axis`: f(first index, stride, count).
template <typename F>
void for_each_line(const Grid& g, int axis, F&& f) {
  const auto n0 = static_cast<std::size_t>(g.cells[0]);
  if (g.dim == 1) {
    f(std::size_t{0}, std::size_t{1}, n0);
    return;
  }
  const auto n1 = static_cast<std::size_t>(g.cells[1]);
  if (axis == 0) {
    for (std::size_t j = 0; j < n1; ++j) f(j * n0, std::size_t{1}, n0);
  } else {
    for (std::size_t i = 0; i < n0; ++i) f(i, n0, n1);
  }
}

}  // namespace

std::vector<double> axis_derivative(const Grid& g, std::span<const double> f, int axis) {
  std::vector<double> out(f.size(), 0.0);
  const double h = g.spacing(axis);
  for_each_line(g, axis, [&](std::size_t first, std::size_t stride, std::size_t n) {
    auto at = [&](std::size_t k) { return first + k * stride; };
    out[at(0)] = (f[at(1)] - f[at(0)]) / h;
    for (std::size_t k = 1; k + 1 < n; ++k) out[at(k)] = (f[at(k + 1)] - f[at(k - 1)]) / (2 * h);
    out[at(n - 1)] = (f[at(n - 1)] - f[at(n - 2)]) / h;
  });
  return out;
}

void axis_derivative_adjoint(const Grid& g, std::span<const double> v, int axis, std::span<double> out) {
  const double h = g.spacing(axis);
  for_each_line(g, axis, [&](std::size_t first, std::size_t stride, std::size_t n) {
    auto at = [&](std::size_t k) { return first + k * stride; };
    out[at(1)] += v[at(0)] / h;
    out[at(0)] -= v[at(0)] / h;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      out[at(k + 1)] += v[at(k)] / (2 * h);
      out[at(k - 1)] -= v[at(k)] / (2 * h);
    }
    out[at(n - 1)] += v[at(n - 1)] / h;
    out[at(n - 2)] -= v[at(n - 1)] / h;
  });
}

VectorField gradient(const ScalarField& f) {
  VectorField out(f.grid);
  for (int a = 0; a < f.grid.dim; ++a) out.comp[a] = axis_derivative(f.grid, f.values, a);
  return out;
}

ScalarField gradient_adjoint(const VectorField& v) {
  ScalarField out(v.grid);
  for (int a = 0; a < v.grid.dim; ++a) axis_derivative_adjoint(v.grid, v.comp[a], a, out.values);
  return out;
}

SymTensorField sym_gradient(const VectorField& u) {
  const Grid& g = u.grid;
  SymTensorField e(g);
  e.comp[0] = axis_derivative(g, u.comp[0], 0);
  if (g.dim == 2) {
    e.comp[1] = axis_derivative(g, u.comp[1], 1);
    const auto d1u0 = axis_derivative(g, u.comp[0], 1);
    const auto d0u1 = axis_derivative(g, u.comp[1], 0);
    for (std::size_t i = 0; i < g.size(); ++i) e.comp[2][i] = 0.5 * (d1u0[i] + d0u1[i]);
  }
  return e;
}

VectorField sym_gradient_adjoint(const SymTensorField& s) {
  const Grid& g = s.grid;
  VectorField out(g);
  axis_derivative_adjoint(g, s.comp[0], 0, out.comp[0]);
  if (g.dim == 2) {
    axis_derivative_adjoint(g, s.comp[1], 1, out.comp[1]);
    std::vector<double> half(s.comp[2].size());
    for (std::size_t i = 0; i < half.size(); ++i) half[i] = 0.5 * s.comp[2][i];
    axis_derivative_adjoint(g, half, 1, out.comp[0]);
    axis_derivative_adjoint(g, half, 0, out.comp[1]);
  }
  return out;
}

double integrate(const Grid& g, std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return g.cell_volume() * sum;
}

double integrate(const ScalarField& f) { return integrate(f.grid, f.values); }

double interpolate(const Grid& g, std::span<const double> values, const Point& x) {
  auto locate = [&](int axis, int& k, double& w) {
    const double q = (x[axis] - g.origin[axis]) / g.spacing(axis) - 0.5;
    k = std::clamp(static_cast<int>(std::floor(q)), 0, g.cells[axis] - 2);
    w = q - k;
  };
  int i = 0;
  double wx = 0.0;
  locate(0, i, wx);
  if (g.dim == 1) return (1 - wx) * values[i] + wx * values[i + 1];
  int j = 0;
  double wy = 0.0;
  locate(1, j, wy);
  const auto n0 = static_cast<std::size_t>(g.cells[0]);
  auto at = [&](int a, int b) { return values[static_cast<std::size_t>(b) * n0 + static_cast<std::size_t>(a)]; };
  return (1 - wx) * (1 - wy) * at(i, j) + wx * (1 - wy) * at(i + 1, j) + (1 - wx) * wy * at(i, j + 1) +
         wx * wy * at(i + 1, j + 1);
}

namespace {

bool chord(const Grid& g, const Point& xi, const Point& y, double& t0, double& t1) {
  t0 = -std::numeric_limits<double>::infinity();
  t1 = std::numeric_limits<double>::infinity();
  for (int a = 0; a < g.dim; ++a) {
    const double lo = g.origin[a];
    const double hi = g.origin[a] + g.extent[a];
    if (std::abs(xi[a]) < 1e-300) {
      if (y[a] < lo || y[a] > hi) return false;
      continue;
    }
    double ta = (lo - y[a]) / xi[a];
    double tb = (hi - y[a]) / xi[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  }
  return t1 > t0;
}

template <typename Sample>
Slice slice_impl(const Grid& g, const Point& xi, const Point& y, int samples, Sample&& sample) {
  const double norm = g.dim == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
  if (std::abs(norm - 1.0) > 1e-12) throw Error("slice_extract: direction must be a unit vector");
  if (samples < 2) throw Error("slice_extract: need at least 2 samples");
  Slice s;
  double t0 = 0.0;
  double t1 = 0.0;
  if (!chord(g, xi, y, t0, t1)) {
    s.missed = true;
    return s;
  }
  s.t.resize(static_cast<std::size_t>(samples));
  s.values.resize(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double t = t0 + (t1 - t0) * k / (samples - 1);
    const Point x{y[0] + t * xi[0], g.dim == 2 ? y[1] + t * xi[1] : 0.0};
    s.t[static_cast<std::size_t>(k)] = t;
    s.values[static_cast<std::size_t>(k)] = sample(x);
  }
  return s;
}

}  // namespace

Slice slice_extract(const ScalarField& f, const Point& xi, const Point& y, int samples) {
  return slice_impl(f.grid, xi, y, samples, [&](const Point& x) { return interpolate(f.grid, f.values, x); });
}

Slice slice_extract(const VectorField& u, const Point& xi, const Point& y, int samples) {
  return slice_impl(u.grid, xi, y, samples, [&](const Point& x) {
    double v = 0.0;
    for (int a = 0; a < u.grid.dim; ++a) v += xi[a] * interpolate(u.grid, u.comp[a], x);
    return v;
  });
}

void write_field(std::ostream& os, const Grid& g, const std::vector<std::span<const double>>& components) {
  const auto old = os.precision(17);
  os << "dim " << g.dim << '\n' << "cells";
  for (int a = 0; a < g.dim; ++a) os << ' ' << g.cells[a];
  os << '\n' << "origin";
  for (int a = 0; a < g.dim; ++a) os << ' ' << g.origin[a];
  os << '\n' << "extent";
  for (int a = 0; a < g.dim; ++a) os << ' ' << g.extent[a];
  os << '\n' << "components " << components.size() << '\n';
  for (const auto& c : components) {
    for (double v : c) os << v << '\n';
  }
  os.precision(old);
}

void write_field(std::ostream& os, const ScalarField& f) { write_field(os, f.grid, {f.values}); }

void write_field(std::ostream& os, const VectorField& u) {
  std::vector<std::span<const double>> comps;
  for (int a = 0; a < u.grid.dim; ++a) comps.emplace_back(u.comp[a]);
  write_field(os, u.grid, comps);
}

FieldDump read_field(std::istream& is) {
  FieldDump d;
  auto expect = [&](const char* key) {
    std::string k;
    if (!(is >> k) || k != key) throw Error(std::string("read_field: expected '") + key + "'");
  };
  expect("dim");
  is >> d.grid.dim;
  if (d.grid.dim != 1 && d.grid.dim != 2) throw Error("read_field: bad dim");
  expect("cells");
  for (int a = 0; a < d.grid.dim; ++a) is >> d.grid.cells[a];
  expect("origin");
  for (int a = 0; a < d.grid.dim; ++a) is >> d.grid.origin[a];
  expect("extent");
  for (int a = 0; a < d.grid.dim; ++a) is >> d.grid.extent[a];
  if (d.grid.dim == 1) {
    d.grid.cells[1] = 1;
    d.grid.origin[1] = 0.0;
    d.grid.extent[1] = 1.0;
  }
  d.grid.validate();
  expect("components");
  std::size_t ncomp = 0;
  is >> ncomp;
  d.components.assign(ncomp, std::vector<double>(d.grid.size()));
  for (auto& c : d.components) {
    for (double& v : c) {
      std::string token;
      if (!(is >> token)) throw Error("read_field: truncated values");
      v = std::stod(token);
    }
  }
  return d;
}

}  // namespace phasecrack
