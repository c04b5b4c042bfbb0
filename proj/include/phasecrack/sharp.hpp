#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "phasecrack/energy.hpp"
#include "phasecrack/fields.hpp"
#include "phasecrack/potentials.hpp"

namespace phasecrack {

struct AffinePiece {
  double slope = 0.0;
  double offset = 0.0;
  bool operator==(const AffinePiece&) const = default;
};

/// Sharp configuration on an interval. Pieces are indexed by the subintervals
/// cut out by the merged, sorted phase and crack points (coincident points
/// cut once).
struct SharpGeometry1D {
  double a = 0.0;
  double b = 1.0;
  std::vector<double> phase_points;
  std::vector<double> crack_points;
  /// Empty means u ≡ 0.
  std::vector<AffinePiece> u_pieces;
  /// Empty means: c_left on the first piece, toggled at every phase point.
  std::vector<int> c_pieces;
  int c_left = 0;
  /// 0 selects 1e-9 * (b - a).
  double tol_geom = 0.0;

  double tolerance() const { return tol_geom > 0 ? tol_geom : 1e-9 * (b - a); }
  std::vector<double> breakpoints() const;
  /// c on each piece, derived or checked against the phase points.
  std::vector<int> phase_values() const;
  /// Throws on points outside (a, b), unsorted lists or inconsistent pieces.
  void validate() const;
  /// The set {c = 1} as disjoint closed intervals.
  std::vector<std::pair<double, double>> phase_intervals() const;
  double u(double x) const;

  bool operator==(const SharpGeometry1D&) const = default;
};

struct Segment {
  Point a{0.0, 0.0};
  Point b{0.0, 0.0};
  double length() const;
  bool operator==(const Segment&) const = default;
};

/// Closed-form displacement on a planar domain.
///   zero
///   affine       u = shift + G x
///   quadratic    u = shift + G x + ½ (xᵀ H0 x, xᵀ H1 x)
///   rigid_sides  a rigid motion (translation t, rotation w) on each side of
///                segment `segment`, which must cut the whole domain
struct DisplacementSpec {
  std::string kind = "zero";
  Point shift{0.0, 0.0};
  std::array<double, 4> G{0.0, 0.0, 0.0, 0.0};  // row-major
  std::array<double, 3> H0{0.0, 0.0, 0.0};      // xx, yy, xy
  std::array<double, 3> H1{0.0, 0.0, 0.0};
  int segment = 0;
  Point t_minus{0.0, 0.0};
  double w_minus = 0.0;
  Point t_plus{0.0, 0.0};
  double w_plus = 0.0;

  Point value(const Point& x, const std::vector<Segment>& M) const;
  /// Symmetric gradient off the crack.
  SymTensor strain(const Point& x) const;
  /// True when e(u) is the same at every point off the crack.
  bool constant_strain() const { return kind != "quadratic"; }

  bool operator==(const DisplacementSpec&) const = default;
};

struct SharpGeometry2D {
  Point lo{0.0, 0.0};
  Point hi{1.0, 1.0};
  /// Vertices of the phase set {c = 1}; empty means A = ∅.
  std::vector<Point> A;
  std::vector<Segment> M;
  DisplacementSpec u_spec;
  /// 0 selects 1e-9 * diam(Ω).
  double tol_geom = 0.0;

  double tolerance() const;
  void validate() const;

  bool operator==(const SharpGeometry2D&) const = default;
};

using SharpGeometry = std::variant<SharpGeometry1D, SharpGeometry2D>;

struct SharpEnergy : EnergyBreakdown {
  /// Upper bound on the elastic energy inside the tol_geom tube around M.
  double excluded_bound = 0.0;
  std::vector<std::string> warnings;
};

SharpEnergy sharp_energy_1d(const SharpGeometry1D& g, const PotentialSet& P, const ElasticModel& M);
SharpEnergy sharp_energy_2d(const SharpGeometry2D& g, const PotentialSet& P, const ElasticModel& M);
SharpEnergy sharp_energy(const SharpGeometry& g, const PotentialSet& P, const ElasticModel& M);

double point_segment_distance(const Point& x, const Segment& s);
double distance_to_segments(const Point& x, const std::vector<Segment>& M);
bool point_in_polygon(const Point& x, const std::vector<Point>& poly);
/// 0 inside the polygon, Euclidean distance to its boundary outside;
/// +∞ for the empty polygon.
double distance_to_polygon(const Point& x, const std::vector<Point>& poly);
double polygon_area(const std::vector<Point>& poly);
/// Polygon ∩ axis-aligned box (Sutherland-Hodgman).
std::vector<Point> clip_to_box(const std::vector<Point>& poly, const Point& lo, const Point& hi);
bool polygon_is_simple(const std::vector<Point>& poly);

ScalarField distance_field(const std::vector<Point>& polygon, const Grid& grid);
ScalarField distance_field(const std::vector<Segment>& M, const Grid& grid);
/// One-dimensional analogues: distance to a point set and to a union of intervals.
ScalarField distance_field_points(const std::vector<double>& points, const Grid& grid);
ScalarField distance_field_intervals(const std::vector<std::pair<double, double>>& intervals, const Grid& grid);

/// h^d · #{cells with dist(x, M) < r} / (2r). Requires r > 2h.
double minkowski_content_estimate(const std::vector<Segment>& M, double r, const Grid& grid);

}  // namespace phasecrack
