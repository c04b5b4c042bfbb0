#include "phasecrack/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

namespace phasecrack {

DeltaRule DeltaRule::named(const std::string& name, double k, double p) {
  if (name == "sqrt") return {name, 1.0, 0.5};
  if (name == "two_thirds") return {name, 1.0, 2.0 / 3.0};
  if (name == "scaled_two_thirds") return {name, k, 2.0 / 3.0};
  if (name == "power") return {name, k, p};
  throw Error("unknown delta rule '" + name + "'");
}

std::vector<std::string> SweepPlan::violations() const {
  std::vector<std::string> out;
  if (eps_schedule.empty()) out.push_back("sweep: eps schedule is empty");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0)) out.push_back("sweep: eps values must be positive");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1])) out.push_back("sweep: eps schedule must decrease");
  }
  if (!(delta_rule.k > 0)) out.push_back("sweep: delta rule coefficient must be positive");
  if (!(delta_rule.p < 1)) {
    out.push_back("sweep: delta rule violates eps/delta -> 0 (needs exponent below 1, got " +
                  format_number(delta_rule.p) + ")");
  }
  for (std::size_t i = 1; i < eps_schedule.size(); ++i) {
    const double prev = eps_schedule[i - 1] / delta_rule(eps_schedule[i - 1]);
    const double cur = eps_schedule[i] / delta_rule(eps_schedule[i]);
    if (!(cur < prev)) {
      out.push_back("sweep: eps/delta must decrease along the schedule");
      break;
    }
  }
  if (!(lambda > 0 && lambda < 1)) out.push_back("sweep: lambda must lie in (0, 1)");
  if (grid_rule.kind != "fixed" && grid_rule.kind != "resolve") {
    out.push_back("sweep: unknown grid rule '" + grid_rule.kind + "'");
  }
  if (grid_rule.cells < 2) out.push_back("sweep: grid needs at least two cells per axis");
  if (!(grid_rule.cells_per_width > 0)) out.push_back("sweep: cells_per_width must be positive");
  if (grid_rule.max_cells < grid_rule.cells) out.push_back("sweep: max_cells is below cells");
  return out;
}

void SweepPlan::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::string msg;
  for (const auto& s : v) msg += (msg.empty() ? "" : "; ") + s;
  throw Error(msg);
}

Grid grid_for(const SharpGeometry& g, int cells) {
  if (const auto* g1 = std::get_if<SharpGeometry1D>(&g)) return Grid::line(g1->a, g1->b, cells);
  const auto& g2 = std::get<SharpGeometry2D>(g);
  return Grid::box(g2.lo, g2.hi, cells, cells);
}

int cells_for(const SweepPlan& plan, const PotentialSet& P, double eps) {
  if (plan.grid_rule.kind == "fixed") return plan.grid_rule.cells;
  const double delta = plan.delta_rule(eps);
  bool interface = false;
  bool crack = false;
  double extent = 0.0;
  if (const auto* g1 = std::get_if<SharpGeometry1D>(&plan.geometry)) {
    interface = !g1->phase_points.empty();
    crack = !g1->crack_points.empty();
    extent = g1->b - g1->a;
  } else {
    const auto& g2 = std::get<SharpGeometry2D>(plan.geometry);
    interface = !g2.A.empty();
    crack = !g2.M.empty();
    extent = std::max(g2.hi[0] - g2.lo[0], g2.hi[1] - g2.lo[1]);
  }
  double width = std::numeric_limits<double>::infinity();
  if (interface) width = std::min(width, zeta({plan.lambda, eps, WellKind::W, true}, P, 1.0));
  if (crack) {
    width = std::min(width, zeta({plan.lambda, delta, WellKind::V, false}, P, 1.0));
    width = std::min(width, plan.lambda * delta);
  }
  int cells = plan.grid_rule.cells;
  while (extent / cells > width / plan.grid_rule.cells_per_width) {
    if (cells > plan.grid_rule.max_cells / 2) {
      throw Error("sweep: resolving eps = " + format_number(eps) + " needs more than " +
                  std::to_string(plan.grid_rule.max_cells) + " cells");
    }
    cells *= 2;
  }
  return cells;
}

SweepTable gamma_sweep(const SweepPlan& plan, const PotentialSet& P, const ElasticModel& M) {
  plan.validate();
  SweepTable table;
  table.sharp = sharp_energy(plan.geometry, P, M);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double eps : plan.eps_schedule) {
    SweepRow row;
    row.eps = eps;
    row.delta = plan.delta_rule(eps);
    row.e_sharp = table.sharp.e_total;
    try {
      row.cells = cells_for(plan, P, eps);
      RecoveryOptions opt;
      opt.lambda = plan.lambda;
      opt.enforce_width = plan.enforce_width;
      opt.profile_cells = plan.profile_cells;
      const auto rec = build_recovery(plan.geometry, eps, row.delta, grid_for(plan.geometry, row.cells), P, opt);
      row.energy = diffuse_energy(rec.state, P, M);
      if (!rec.width_ok) row.status = "width_violation";
      row.rel_err = (row.energy.e_total - row.e_sharp) / std::max(row.e_sharp, 1e-12);
    } catch (const Error& e) {
      row.energy = {nan, nan, nan, nan, 0};
      row.rel_err = nan;
      row.status = std::string("error: ") + e.what();
    }
    table.rows.push_back(row);
  }
  return table;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  os << "eps,delta,e_phase,e_elastic,e_crack,e_total,e_sharp,rel_err,status\n";
  for (const auto& r : table.rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    for (double v : {r.eps, r.delta, r.energy.e_phase, r.energy.e_elastic, r.energy.e_crack, r.energy.e_total,
                     r.e_sharp, r.rel_err}) {
      os << format_number(v) << ',';
    }
    os << status << '\n';
  }
}

// ------------------------------------------------------------ geodesic ----

namespace {

/// Gauss-Legendre nodes on [a, b] split at 0 and 1 (where the wells and the
/// cap may kink), `panels` panels per piece.
template <class F>
double split_quadrature(F&& f, double a, double b, int panels) {
  if (a == b) return 0.0;
  const double sign = a < b ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  std::vector<double> cuts{lo};
  for (double k : {0.0, 1.0}) {
    if (k > lo && k < hi) cuts.push_back(k);
  }
  cuts.push_back(hi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double step = (cuts[i + 1] - cuts[i]) / panels;
    for (int p = 0; p < panels; ++p) {
      total += gauss_legendre8(f, cuts[i] + p * step, cuts[i] + (p + 1) * step);
    }
  }
  return sign * total;
}

}  // namespace

GeodesicCheck geodesic_inequality_check(const ScalarField& w, WellKind which, double eps, const PotentialSet& P) {
  const Grid& g = w.grid;
  if (g.dim != 1) throw Error("geodesic_inequality_check: needs a one-dimensional field");
  if (!(eps > 0)) throw Error("geodesic_inequality_check: eps must be positive");
  const ScalarPotential& f = P.well(which);
  const double cap = P.cap(which);
  const double h = g.spacing(0);
  const std::size_t n = g.size();
  constexpr int kPanels = 4;
  GeodesicCheck out;
  out.rhs += 0.5 * h * (f(w[0]) + f(w[n - 1])) / eps;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = w[i];
    const double b = w[i + 1];
    const double jump = std::abs(b - a);
    if (jump < 1e-14 * (1 + std::abs(a))) {
      out.rhs += h * f(a) / eps;
      continue;
    }
    // On this face w is linear with slope (b-a)/h; with s = w(x) both
    // integrals become integrals in s over [a, b] on the same nodes, so
    // Young's inequality holds node by node.
    const double young = split_quadrature(
        [&](double s) { return (h / jump) * f(s) / eps + eps * jump / h; }, std::min(a, b), std::max(a, b), kPanels);
    const double tv = split_quadrature([&](double s) { return 2 * std::sqrt(std::min(f(s), cap)); }, std::min(a, b),
                                       std::max(a, b), kPanels);
    out.rhs += young;
    out.lhs += tv;
  }
  out.slack = out.rhs - out.lhs;
  return out;
}

// ---------------------------------------------------------- compactness ----

LevelSetDiagnostic compactness_levelset_diagnostic(const ScalarField& z, const PotentialSet& P, double slack,
                                                    int thresholds) {
  const Grid& g = z.grid;
  if (thresholds < 1) throw Error("compactness diagnostic: needs at least one threshold");
  for (double v : z.values) {
    if (!(v >= 0 && v <= 1)) throw Error("compactness diagnostic: z must lie in [0, 1]");
  }
  const GeodesicTable dV(WellKind::V, P);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = dV(z[i]);
  const double t_lo = dV(0.25);
  const double t_hi = dV(0.75);
  std::vector<double> ts(thresholds);
  for (int k = 0; k < thresholds; ++k) ts[k] = t_lo + (t_hi - t_lo) * (k + 0.5) / thresholds;

  // For each face, the thresholds t with exactly one side above t form a
  // contiguous index range; accumulate with a difference array.
  std::vector<double> diff(thresholds + 1, 0.0);
  LevelSetDiagnostic out;
  auto face = [&](std::size_t i, std::size_t j, double area) {
    const double lo = std::min(v[i], v[j]);
    const double hi = std::max(v[i], v[j]);
    out.total_variation += area * (hi - lo);
    // {v > t} separates the face when lo <= t < hi.
    const auto first = std::lower_bound(ts.begin(), ts.end(), lo) - ts.begin();
    const auto last = std::lower_bound(ts.begin(), ts.end(), hi) - ts.begin();
    if (last > first) {
      diff[first] += area;
      diff[last] -= area;
    }
  };
  const int nx = g.cells[0];
  const int ny = g.dim == 2 ? g.cells[1] : 1;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const std::size_t k = static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * j;
      face(k, k + 1, g.face_area(0));
    }
  }
  if (g.dim == 2) {
    for (int j = 0; j + 1 < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t k = static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * j;
        face(k, k + nx, g.face_area(1));
      }
    }
  }
  double running = 0.0;
  out.perimeter = std::numeric_limits<double>::infinity();
  for (int k = 0; k < thresholds; ++k) {
    running += diff[k];
    if (running < out.perimeter) {
      out.perimeter = running;
      out.t_star = ts[k];
    }
  }
  out.bound = out.total_variation / (t_hi - t_lo);
  out.passed = out.perimeter <= out.bound * (1 + slack) + 1e-12;
  return out;
}

// ------------------------------------------------------------- slicing ----

SlicingReport slicing_identity_check(const DisplacementSpec& u, const Grid& grid, int directions,
                                     std::uint64_t seed) {
  if (grid.dim != 2) throw Error("slicing check: needs a planar grid");
  if (directions < 1) throw Error("slicing check: needs at least one direction");
  if (u.kind != "affine" && u.kind != "quadratic" && u.kind != "zero") {
    throw Error("slicing check: displacement must be smooth (zero, affine or quadratic)");
  }
  const std::vector<Segment> none;
  VectorField field(grid);
  SlicingReport out;
  out.h = grid.h();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point x = grid.center_of(i);
    const Point v = u.value(x, none);
    field.comp[0][i] = v[0];
    field.comp[1][i] = v[1];
    const SymTensor e = u.strain(x);
    out.scale = std::max(out.scale, std::sqrt(e.xx * e.xx + e.yy * e.yy + 2 * e.xy * e.xy));
  }
  CounterRng rng(seed, 7);
  const Point mid{grid.origin[0] + 0.5 * grid.extent[0], grid.origin[1] + 0.5 * grid.extent[1]};
  int attempts = 0;
  while (out.directions < directions) {
    if (++attempts > 100 * directions) throw Error("slicing check: could not find enough slices");
    const double theta = rng.uniform(0.0, std::numbers::pi);
    const Point xi{std::cos(theta), std::sin(theta)};
    const Point p{rng.uniform(grid.origin[0], grid.origin[0] + grid.extent[0]),
                  rng.uniform(grid.origin[1], grid.origin[1] + grid.extent[1])};
    // Base point on the hyperplane ξ^⊥ through the domain center.
    const double along = (p[0] - mid[0]) * xi[0] + (p[1] - mid[1]) * xi[1];
    const Point y{p[0] - along * xi[0], p[1] - along * xi[1]};
    const Slice probe = slice_extract(field, xi, y, 2);
    if (probe.missed) continue;
    const double length = probe.t.back() - probe.t.front();
    if (length < 8 * out.h) continue;
    const int samples = static_cast<int>(std::ceil(length / out.h)) + 1;
    const Slice s = slice_extract(field, xi, y, samples);
    for (std::size_t k = 1; k + 1 < s.t.size(); ++k) {
      const double fd = (s.values[k + 1] - s.values[k - 1]) / (s.t[k + 1] - s.t[k - 1]);
      const Point x{y[0] + s.t[k] * xi[0], y[1] + s.t[k] * xi[1]};
      const SymTensor e = u.strain(x);
      const double exact = e.xx * xi[0] * xi[0] + 2 * e.xy * xi[0] * xi[1] + e.yy * xi[1] * xi[1];
      const double err = std::abs(fd - exact) / (out.scale > 0 ? out.scale : 1.0);
      out.max_error = std::max(out.max_error, err);
    }
    ++out.directions;
  }
  out.constant = out.max_error / out.h;
  return out;
}

}  // namespace phasecrack
