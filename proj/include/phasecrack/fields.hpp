#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "phasecrack/quadrature.hpp"

namespace phasecrack {

using Point = std::array<double, 2>;

/// Axis-aligned box in 1 or 2 dimensions, divided into uniform cells.
/// Linear cell index is i0 + cells[0] * i1 (axis 0 fastest).
struct Grid {
  int dim = 1;
  Point origin{0.0, 0.0};
  Point extent{1.0, 1.0};
  std::array<int, 2> cells{2, 1};

  static Grid line(double a, double b, int n);
  static Grid box(Point lo, Point hi, int nx, int ny);

  /// Throws unless dim ∈ {1,2}, cells >= 2 per axis and extents > 0.
  void validate() const;

  double spacing(int axis) const { return extent[axis] / cells[axis]; }
  /// Smallest spacing over the active axes.
  double h() const;
  std::size_t size() const;
  double cell_volume() const;
  double volume() const;
  /// Measure of one cell face normal to `axis` (1 in one dimension).
  double face_area(int axis) const;
  double center(int axis, int k) const { return origin[axis] + (k + 0.5) * spacing(axis); }
  Point center_of(std::size_t index) const;
  double diameter() const;
  bool contains(const Point& x) const;

  bool operator==(const Grid&) const = default;
};

struct ScalarField {
  Grid grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}
  ScalarField(const Grid& g, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

/// One component per spatial dimension.
struct VectorField {
  Grid grid;
  std::array<std::vector<double>, 2> comp;

  VectorField() = default;
  explicit VectorField(const Grid& g, double fill = 0.0);
  int components() const { return grid.dim; }
  std::size_t size() const { return grid.size(); }
};

/// Symmetric tensor field; components xx, yy, xy (only xx in one dimension).
struct SymTensorField {
  Grid grid;
  std::array<std::vector<double>, 3> comp;

  SymTensorField() = default;
  explicit SymTensorField(const Grid& g, double fill = 0.0);
  int components() const { return grid.dim == 1 ? 1 : 3; }
  std::size_t size() const { return grid.size(); }
};

/// Centered differences along `axis`, one-sided at the first and last cell.
std::vector<double> axis_derivative(const Grid& g, std::span<const double> f, int axis);
/// Transpose of axis_derivative, accumulated into `out`.
void axis_derivative_adjoint(const Grid& g, std::span<const double> v, int axis, std::span<double> out);

VectorField gradient(const ScalarField& f);
ScalarField gradient_adjoint(const VectorField& v);
SymTensorField sym_gradient(const VectorField& u);
/// Transpose of sym_gradient with respect to the plain componentwise pairing
/// Σ_cells (xx·xx' + yy·yy' + xy·xy').
VectorField sym_gradient_adjoint(const SymTensorField& s);

/// Midpoint rule: cell volume times the row-major sum.
double integrate(const ScalarField& f);
double integrate(const Grid& g, std::span<const double> values);

/// Bilinear interpolation of cell-centered values; linear extrapolation in
/// the half cell between the outermost centers and the boundary.
double interpolate(const Grid& g, std::span<const double> values, const Point& x);

struct Slice {
  std::vector<double> t;
  std::vector<double> values;
  bool missed = false;
};

/// Samples f along {y + tξ} ∩ Ω at `samples` equally spaced parameters
/// including both endpoints of the chord.
Slice slice_extract(const ScalarField& f, const Point& xi, const Point& y, int samples);
/// Same, returning the projection ⟨u(y + tξ), ξ⟩.
Slice slice_extract(const VectorField& u, const Point& xi, const Point& y, int samples);

/// Plain-text dump: header (dim, cells, origin, extent, components) then one
/// value per line, component-major, each component in row-major order.
void write_field(std::ostream& os, const Grid& g, const std::vector<std::span<const double>>& components);
void write_field(std::ostream& os, const ScalarField& f);
void write_field(std::ostream& os, const VectorField& u);

struct FieldDump {
  Grid grid;
  std::vector<std::vector<double>> components;
};
FieldDump read_field(std::istream& is);

}  // namespace phasecrack
