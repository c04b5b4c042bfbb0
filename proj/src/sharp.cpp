#include "phasecrack/sharp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace phasecrack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool near_any(double x, const std::vector<double>& pts, double tol) {
  return std::any_of(pts.begin(), pts.end(), [&](double p) { return std::abs(p - x) <= tol; });
}

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double dist(const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

}  // namespace

// ---------------------------------------------------------------- 1D ----

std::vector<double> SharpGeometry1D::breakpoints() const {
  std::vector<double> all = phase_points;
  all.insert(all.end(), crack_points.begin(), crack_points.end());
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double p : all) {
    if (out.empty() || p - out.back() > tolerance()) out.push_back(p);
  }
  return out;
}

std::vector<int> SharpGeometry1D::phase_values() const {
  const auto cuts = breakpoints();
  const double tol = tolerance();
  if (c_pieces.empty()) {
    std::vector<int> out{c_left};
    for (double p : cuts) out.push_back(near_any(p, phase_points, tol) ? 1 - out.back() : out.back());
    return out;
  }
  if (c_pieces.size() != cuts.size() + 1) throw Error("geometry: c_pieces needs one value per subinterval");
  for (std::size_t k = 0; k < c_pieces.size(); ++k) {
    if (c_pieces[k] != 0 && c_pieces[k] != 1) throw Error("geometry: c_pieces values must be 0 or 1");
    if (k > 0 && (c_pieces[k] != c_pieces[k - 1]) != near_any(cuts[k - 1], phase_points, tol)) {
      throw Error("geometry: c_pieces must change exactly at the phase points");
    }
  }
  return c_pieces;
}

void SharpGeometry1D::validate() const {
  if (!(b > a)) throw Error("geometry: empty interval");
  for (const auto* pts : {&phase_points, &crack_points}) {
    if (!std::is_sorted(pts->begin(), pts->end())) throw Error("geometry: points must be sorted");
    for (double p : *pts) {
      if (!(p > a && p < b)) throw Error("geometry: points must lie inside the interval");
    }
  }
  if (c_left != 0 && c_left != 1) throw Error("geometry: c_left must be 0 or 1");
  const auto cuts = breakpoints();
  if (!u_pieces.empty() && u_pieces.size() != cuts.size() + 1) {
    throw Error("geometry: u_pieces needs one entry per subinterval");
  }
  if (!u_pieces.empty()) {
    // u may only jump at crack points.
    const double tol = tolerance();
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      if (near_any(cuts[k], crack_points, tol)) continue;
      const double x = cuts[k];
      const double left = u_pieces[k].slope * x + u_pieces[k].offset;
      const double right = u_pieces[k + 1].slope * x + u_pieces[k + 1].offset;
      if (std::abs(left - right) > 1e-9 * (1 + std::abs(left))) {
        throw Error("geometry: u jumps at a point that is not a crack point");
      }
    }
  }
  (void)phase_values();
}

std::vector<std::pair<double, double>> SharpGeometry1D::phase_intervals() const {
  const auto cuts = breakpoints();
  const auto c = phase_values();
  std::vector<std::pair<double, double>> out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] != 1) continue;
    const double lo = k == 0 ? a : cuts[k - 1];
    const double hi = k == cuts.size() ? b : cuts[k];
    if (!out.empty() && std::abs(out.back().second - lo) <= tolerance()) {
      out.back().second = hi;
    } else {
      out.emplace_back(lo, hi);
    }
  }
  return out;
}

double SharpGeometry1D::u(double x) const {
  if (u_pieces.empty()) return 0.0;
  const auto cuts = breakpoints();
  const std::size_t k = std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin();
  return u_pieces[k].slope * x + u_pieces[k].offset;
}

SharpEnergy sharp_energy_1d(const SharpGeometry1D& g, const PotentialSet& P, const ElasticModel& M) {
  g.validate();
  const double tol = g.tolerance();
  SharpEnergy out;
  double interfaces = 0.0;
  for (double p : g.phase_points) {
    if (near_any(p, g.crack_points, tol)) {
      interfaces += P.theta;
    } else {
      interfaces += 1.0;
      if (near_any(p, g.crack_points, 1e3 * tol)) {
        out.warnings.push_back("phase point " + std::to_string(p) + " nearly coincides with a crack point");
      }
    }
  }
  out.e_phase = surface_density(P) * interfaces;
  out.e_crack = fracture_density(P) * static_cast<double>(g.crack_points.size());
  const auto cuts = g.breakpoints();
  const auto c = g.phase_values();
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double lo = k == 0 ? g.a : cuts[k - 1];
    const double hi = k == cuts.size() ? g.b : cuts[k];
    const double slope = g.u_pieces.empty() ? 0.0 : g.u_pieces[k].slope;
    out.e_elastic += (hi - lo) * M.stiffness(1, slope - c[k] * M.e0.xx, 0.0, 0.0);
  }
  out.e_total = out.e_phase + out.e_elastic + out.e_crack;
  return out;
}

// ---------------------------------------------------------------- 2D ----

double Segment::length() const { return dist(a, b); }

Point DisplacementSpec::value(const Point& x, const std::vector<Segment>& M) const {
  if (kind == "zero") return {0.0, 0.0};
  if (kind == "rigid_sides") {
    const Segment& s = M.at(segment);
    const bool plus = cross(s.a, s.b, x) >= 0;
    const Point& t = plus ? t_plus : t_minus;
    const double w = plus ? w_plus : w_minus;
    return {t[0] - w * x[1], t[1] + w * x[0]};
  }
  Point u{shift[0] + G[0] * x[0] + G[1] * x[1], shift[1] + G[2] * x[0] + G[3] * x[1]};
  if (kind == "quadratic") {
    u[0] += 0.5 * (H0[0] * x[0] * x[0] + H0[1] * x[1] * x[1] + 2 * H0[2] * x[0] * x[1]);
    u[1] += 0.5 * (H1[0] * x[0] * x[0] + H1[1] * x[1] * x[1] + 2 * H1[2] * x[0] * x[1]);
  }
  return u;
}

SymTensor DisplacementSpec::strain(const Point& x) const {
  if (kind == "zero" || kind == "rigid_sides") return {};
  double d00 = G[0], d01 = G[1], d10 = G[2], d11 = G[3];
  if (kind == "quadratic") {
    d00 += H0[0] * x[0] + H0[2] * x[1];
    d01 += H0[2] * x[0] + H0[1] * x[1];
    d10 += H1[0] * x[0] + H1[2] * x[1];
    d11 += H1[2] * x[0] + H1[1] * x[1];
  }
  return {d00, d11, 0.5 * (d01 + d10)};
}

double SharpGeometry2D::tolerance() const {
  return tol_geom > 0 ? tol_geom : 1e-9 * std::hypot(hi[0] - lo[0], hi[1] - lo[1]);
}

void SharpGeometry2D::validate() const {
  if (!(hi[0] > lo[0] && hi[1] > lo[1])) throw Error("geometry: empty domain box");
  const double tol = tolerance();
  auto inside = [&](const Point& p) {
    return p[0] >= lo[0] - tol && p[0] <= hi[0] + tol && p[1] >= lo[1] - tol && p[1] <= hi[1] + tol;
  };
  auto on_boundary = [&](const Point& p) {
    return std::abs(p[0] - lo[0]) <= tol || std::abs(p[0] - hi[0]) <= tol || std::abs(p[1] - lo[1]) <= tol ||
           std::abs(p[1] - hi[1]) <= tol;
  };
  if (!A.empty()) {
    if (A.size() < 3) throw Error("geometry: polygon needs at least three vertices");
    if (!polygon_is_simple(A)) throw Error("geometry: polygon is self-intersecting");
  }
  for (const auto& s : M) {
    if (!inside(s.a) || !inside(s.b)) throw Error("geometry: crack segment leaves the domain");
    if (!(s.length() > tol)) throw Error("geometry: degenerate crack segment");
  }
  const auto& k = u_spec.kind;
  if (k != "zero" && k != "affine" && k != "quadratic" && k != "rigid_sides") {
    throw Error("geometry: unknown displacement '" + k + "'");
  }
  if (k == "rigid_sides") {
    if (u_spec.segment < 0 || static_cast<std::size_t>(u_spec.segment) >= M.size()) {
      throw Error("geometry: rigid_sides refers to a missing segment");
    }
    const Segment& s = M[u_spec.segment];
    const bool same = u_spec.t_minus == u_spec.t_plus && u_spec.w_minus == u_spec.w_plus;
    if (!same && !(on_boundary(s.a) && on_boundary(s.b))) {
      throw Error("geometry: rigid_sides needs a segment that cuts the whole domain");
    }
  }
}

double point_segment_distance(const Point& x, const Segment& s) {
  const double dx = s.b[0] - s.a[0];
  const double dy = s.b[1] - s.a[1];
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((x[0] - s.a[0]) * dx + (x[1] - s.a[1]) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(x[0] - (s.a[0] + t * dx), x[1] - (s.a[1] + t * dy));
}

double distance_to_segments(const Point& x, const std::vector<Segment>& M) {
  double d = kInf;
  for (const auto& s : M) d = std::min(d, point_segment_distance(x, s));
  return d;
}

bool point_in_polygon(const Point& x, const std::vector<Point>& poly) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& p = poly[i];
    const Point& q = poly[j];
    if ((p[1] > x[1]) != (q[1] > x[1])) {
      const double xc = p[0] + (x[1] - p[1]) * (q[0] - p[0]) / (q[1] - p[1]);
      if (x[0] < xc) in = !in;
    }
  }
  return in;
}

double distance_to_polygon(const Point& x, const std::vector<Point>& poly) {
  if (poly.empty()) return kInf;
  if (point_in_polygon(x, poly)) return 0.0;
  double d = kInf;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    d = std::min(d, point_segment_distance(x, {poly[i], poly[(i + 1) % poly.size()]}));
  }
  return d;
}

double polygon_area(const std::vector<Point>& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    s += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * std::abs(s);
}

std::vector<Point> clip_to_box(const std::vector<Point>& poly, const Point& lo, const Point& hi) {
  std::vector<Point> out = poly;
  for (int side = 0; side < 4 && !out.empty(); ++side) {
    const int axis = side % 2;
    const bool upper = side >= 2;
    const double bound = upper ? hi[axis] : lo[axis];
    auto keep = [&](const Point& p) { return upper ? p[axis] <= bound : p[axis] >= bound; };
    std::vector<Point> next;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Point& p = out[i];
      const Point& q = out[(i + 1) % out.size()];
      const bool kp = keep(p);
      const bool kq = keep(q);
      if (kp) next.push_back(p);
      if (kp != kq) {
        const double t = (bound - p[axis]) / (q[axis] - p[axis]);
        next.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

bool on_segment(const Point& p, const Point& q, const Point& x) {
  return std::min(p[0], q[0]) <= x[0] && x[0] <= std::max(p[0], q[0]) && std::min(p[1], q[1]) <= x[1] &&
         x[1] <= std::max(p[1], q[1]);
}

bool segments_touch(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

}  // namespace

bool polygon_is_simple(const std::vector<Point>& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (poly[i] == poly[(i + 1) % n]) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_touch(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return polygon_area(poly) > 0;
}

namespace {

/// Exact integrals of 1, x, y, x², xy, y² over a polygon.
struct Moments {
  double m1 = 0, mx = 0, my = 0, mxx = 0, mxy = 0, myy = 0;
};

Moments polygon_moments(const std::vector<Point>& poly) {
  Moments m;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const double x0 = poly[i][0], y0 = poly[i][1];
    const double x1 = poly[(i + 1) % poly.size()][0], y1 = poly[(i + 1) % poly.size()][1];
    const double c = x0 * y1 - x1 * y0;
    m.m1 += c / 2;
    m.mx += (x0 + x1) * c / 6;
    m.my += (y0 + y1) * c / 6;
    m.mxx += (x0 * x0 + x0 * x1 + x1 * x1) * c / 12;
    m.myy += (y0 * y0 + y0 * y1 + y1 * y1) * c / 12;
    m.mxy += (x0 * y1 + 2 * x0 * y0 + 2 * x1 * y1 + x1 * y0) * c / 24;
  }
  if (m.m1 < 0) m = {-m.m1, -m.mx, -m.my, -m.mxx, -m.mxy, -m.myy};
  return m;
}

double bilinear(const ElasticModel& M, const SymTensor& a, const SymTensor& b) {
  return M.lame_lambda * (a.xx + a.yy) * (b.xx + b.yy) +
         2 * M.lame_mu * (a.xx * b.xx + a.yy * b.yy + 2 * a.xy * b.xy);
}

SymTensor minus(const SymTensor& a, const SymTensor& b) { return {a.xx - b.xx, a.yy - b.yy, a.xy - b.xy}; }

/// ∫ C(e(u) - c e0) over a polygon where c is constant; e(u) is affine in x.
double elastic_over(const std::vector<Point>& poly, const DisplacementSpec& u, double c, const ElasticModel& M) {
  if (poly.size() < 3) return 0.0;
  const SymTensor at0 = u.strain({0.0, 0.0});
  const SymTensor ex = minus(u.strain({1.0, 0.0}), at0);
  const SymTensor ey = minus(u.strain({0.0, 1.0}), at0);
  const SymTensor a = minus(at0, {c * M.e0.xx, c * M.e0.yy, c * M.e0.xy});
  const Moments m = polygon_moments(poly);
  return bilinear(M, a, a) * m.m1 + 2 * bilinear(M, a, ex) * m.mx + 2 * bilinear(M, a, ey) * m.my +
         bilinear(M, ex, ex) * m.mxx + 2 * bilinear(M, ex, ey) * m.mxy + bilinear(M, ey, ey) * m.myy;
}

/// Clips segment p→q to the box; returns the parameter range or false.
bool clip_param(const Point& p, const Point& q, const Point& lo, const Point& hi, double& t0, double& t1) {
  t0 = 0.0;
  t1 = 1.0;
  for (int axis = 0; axis < 2; ++axis) {
    const double d = q[axis] - p[axis];
    if (d == 0.0) {
      if (p[axis] < lo[axis] || p[axis] > hi[axis]) return false;
      continue;
    }
    double a = (lo[axis] - p[axis]) / d;
    double b = (hi[axis] - p[axis]) / d;
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
  }
  return t1 > t0;
}

}  // namespace

SharpEnergy sharp_energy_2d(const SharpGeometry2D& g, const PotentialSet& P, const ElasticModel& M) {
  g.validate();
  const double tol = g.tolerance();
  SharpEnergy out;

  double crack_length = 0.0;
  for (const auto& s : g.M) crack_length += s.length();
  out.e_crack = fracture_density(P) * crack_length;

  double inside = 0.0;
  double overlap = 0.0;
  const std::size_t n = g.A.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = g.A[i];
    const Point& q = g.A[(i + 1) % n];
    double t0 = 0.0, t1 = 0.0;
    if (!clip_param(p, q, g.lo, g.hi, t0, t1)) continue;
    const Point c0{p[0] + t0 * (q[0] - p[0]), p[1] + t0 * (q[1] - p[1])};
    const Point c1{p[0] + t1 * (q[0] - p[0]), p[1] + t1 * (q[1] - p[1])};
    bool on_wall = false;
    for (int axis = 0; axis < 2; ++axis) {
      for (double wall : {g.lo[axis], g.hi[axis]}) {
        if (std::abs(c0[axis] - wall) <= tol && std::abs(c1[axis] - wall) <= tol) on_wall = true;
      }
    }
    if (on_wall) continue;
    const double len = dist(p, q);
    inside += len * (t1 - t0);
    // Portions of this edge covered by crack segments, merged.
    std::vector<std::pair<double, double>> covered;
    for (const auto& s : g.M) {
      const double da = std::abs(cross(p, q, s.a)) / len;
      const double db = std::abs(cross(p, q, s.b)) / len;
      if (da > tol || db > tol) continue;
      auto param = [&](const Point& x) {
        return ((x[0] - p[0]) * (q[0] - p[0]) + (x[1] - p[1]) * (q[1] - p[1])) / (len * len);
      };
      const double lo = std::max(std::min(param(s.a), param(s.b)), t0);
      const double hi = std::min(std::max(param(s.a), param(s.b)), t1);
      if (hi > lo) covered.emplace_back(lo, hi);
    }
    std::sort(covered.begin(), covered.end());
    double end = -kInf;
    for (const auto& [lo, hi] : covered) {
      const double from = std::max(lo, end);
      if (hi > from) overlap += len * (hi - from);
      end = std::max(end, hi);
    }
  }
  out.e_phase = surface_density(P) * (inside - (1.0 - P.theta) * overlap);

  const std::vector<Point> box{g.lo, {g.hi[0], g.lo[1]}, g.hi, {g.lo[0], g.hi[1]}};
  const auto A = clip_to_box(g.A, g.lo, g.hi);
  out.e_elastic = elastic_over(box, g.u_spec, 0.0, M) - elastic_over(A, g.u_spec, 0.0, M) +
                  elastic_over(A, g.u_spec, 1.0, M);

  // The integrand is convex in x, so its maximum over the box sits at a corner.
  double peak = 0.0;
  for (const auto& corner : box) {
    const SymTensor e = g.u_spec.strain(corner);
    for (double c : {0.0, 1.0}) {
      const SymTensor xi = minus(e, {c * M.e0.xx, c * M.e0.yy, c * M.e0.xy});
      peak = std::max(peak, M.stiffness(2, xi.xx, xi.yy, xi.xy));
    }
  }
  for (const auto& s : g.M) out.excluded_bound += peak * (2 * tol * s.length() + std::numbers::pi * tol * tol);

  out.e_total = out.e_phase + out.e_elastic + out.e_crack;
  return out;
}

SharpEnergy sharp_energy(const SharpGeometry& g, const PotentialSet& P, const ElasticModel& M) {
  if (const auto* g1 = std::get_if<SharpGeometry1D>(&g)) return sharp_energy_1d(*g1, P, M);
  return sharp_energy_2d(std::get<SharpGeometry2D>(g), P, M);
}

// ------------------------------------------------------ distance fields ----

ScalarField distance_field(const std::vector<Point>& polygon, const Grid& grid) {
  if (grid.dim != 2) throw Error("distance_field: polygon distance needs a planar grid");
  ScalarField out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = distance_to_polygon(grid.center_of(i), polygon);
  return out;
}

ScalarField distance_field(const std::vector<Segment>& M, const Grid& grid) {
  if (grid.dim != 2) throw Error("distance_field: segment distance needs a planar grid");
  ScalarField out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = distance_to_segments(grid.center_of(i), M);
  return out;
}

ScalarField distance_field_points(const std::vector<double>& points, const Grid& grid) {
  ScalarField out(grid, kInf);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.center_of(i)[0];
    for (double p : points) out[i] = std::min(out[i], std::abs(x - p));
  }
  return out;
}

ScalarField distance_field_intervals(const std::vector<std::pair<double, double>>& intervals, const Grid& grid) {
  ScalarField out(grid, kInf);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.center_of(i)[0];
    for (const auto& [lo, hi] : intervals) {
      const double d = x < lo ? lo - x : (x > hi ? x - hi : 0.0);
      out[i] = std::min(out[i], d);
    }
  }
  return out;
}

double minkowski_content_estimate(const std::vector<Segment>& M, double r, const Grid& grid) {
  if (!(r > 2 * grid.h())) throw Error("minkowski_content_estimate: radius must exceed two cell widths");
  if (M.empty()) return 0.0;
  const auto d = distance_field(M, grid);
  std::size_t count = 0;
  for (double v : d.values) count += v < r ? 1 : 0;
  return grid.cell_volume() * static_cast<double>(count) / (2 * r);
}

}  // namespace phasecrack
