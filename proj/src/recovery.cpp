#include "phasecrack/recovery.hpp"

#include <algorithm>
#include <cmath>

namespace phasecrack {

void ProfileParams::validate() const {
  if (!(lambda > 0 && lambda < 1)) throw Error("profile: lambda must lie in (0, 1)");
  if (!(scale > 0)) throw Error("profile: length scale must be positive");
}

namespace {

RealFunction profile_well(const ProfileParams& pp, const PotentialSet& P) {
  const RealFunction f = P.well(pp.which).value;
  if (pp.mirrored) return [f](double s) { return f(1.0 - s); };
  return f;
}

}  // namespace

OptimalProfile::OptimalProfile(const ProfileParams& pp, const PotentialSet& P, std::size_t cells)
    : pp_(pp), f_(profile_well(pp, P)) {
  pp_.validate();
  const double lambda = pp_.lambda;
  const double scale = pp_.scale;
  const RealFunction f = f_;
  table_ = CumulativeIntegral([f, lambda, scale](double t) { return scale / std::sqrt(lambda + f(t)); }, 0.0, 1.0,
                              cells);
  width_ = table_.total();
}

double OptimalProfile::zeta(double s) const { return table_(std::clamp(s, 0.0, 1.0)); }

double OptimalProfile::g(double r) const {
  if (!(r > 0)) return 0.0;
  if (r >= width_) return 1.0;
  return table_.inverse(r);
}

double OptimalProfile::slope(double r) const {
  if (!(r > 0) || r >= width_) return 0.0;
  return std::sqrt(pp_.lambda + f_(g(r))) / pp_.scale;
}

double OptimalProfile::well(double s) const { return f_(s); }

double zeta(const ProfileParams& pp, const PotentialSet& P, double s) {
  pp.validate();
  if (!(s >= 0 && s <= 1)) throw Error("zeta: s must lie in [0, 1]");
  const RealFunction f = profile_well(pp, P);
  return adaptive_integral([&](double t) { return pp.scale / std::sqrt(pp.lambda + f(t)); }, 0.0, s);
}

double g_profile(const OptimalProfile& op, double r) { return op.g(r); }

double profile_energy_1d(const ProfileParams& pp, const PotentialSet& P) {
  pp.validate();
  const RealFunction f = profile_well(pp, P);
  const double lambda = pp.lambda;
  return adaptive_integral(
      [&](double s) {
        const double fs = f(s);
        return (2 * fs + lambda) / std::sqrt(lambda + fs);
      },
      0.0, 1.0);
}

double cutoff(double t) {
  if (t <= 0) return 0.0;
  if (t >= 1) return 1.0;
  return t * t * (3 - 2 * t);
}

bool width_condition(double eps, double delta, double lambda) { return eps / std::sqrt(lambda) <= lambda * delta; }

namespace {

struct SampledGeometry {
  ScalarField dist_A;  // 0 on A, +∞ when A = ∅
  ScalarField dist_M;  // +∞ when M = ∅
  bool has_interface = false;
  bool has_crack = false;
};

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * (1 + std::abs(a) + std::abs(b)); }

SampledGeometry sample(const SharpGeometry& g, const Grid& grid) {
  SampledGeometry out;
  if (const auto* g1 = std::get_if<SharpGeometry1D>(&g)) {
    g1->validate();
    if (grid.dim != 1 || !same(grid.origin[0], g1->a) || !same(grid.origin[0] + grid.extent[0], g1->b)) {
      throw RecoveryError("recovery: grid does not cover the geometry's interval");
    }
    out.dist_A = distance_field_intervals(g1->phase_intervals(), grid);
    out.dist_M = distance_field_points(g1->crack_points, grid);
    out.has_interface = !g1->phase_points.empty();
    out.has_crack = !g1->crack_points.empty();
  } else {
    const auto& g2 = std::get<SharpGeometry2D>(g);
    g2.validate();
    if (grid.dim != 2 || !same(grid.origin[0], g2.lo[0]) || !same(grid.origin[1], g2.lo[1]) ||
        !same(grid.origin[0] + grid.extent[0], g2.hi[0]) || !same(grid.origin[1] + grid.extent[1], g2.hi[1])) {
      throw RecoveryError("recovery: grid does not cover the geometry's box");
    }
    out.dist_A = distance_field(g2.A, grid);
    out.dist_M = distance_field(g2.M, grid);
    out.has_interface = !g2.A.empty();
    out.has_crack = !g2.M.empty();
  }
  return out;
}

}  // namespace

Recovery build_recovery(const SharpGeometry& g, double eps, double delta, const Grid& grid, const PotentialSet& P,
                        const RecoveryOptions& opt) {
  grid.validate();
  if (!(eps > 0) || !(delta > 0)) throw RecoveryError("recovery: eps and delta must be positive");
  const double lambda = opt.lambda;
  if (!(lambda > 0 && lambda < 1)) throw RecoveryError("recovery: lambda must lie in (0, 1)");
  const SampledGeometry geo = sample(g, grid);

  // The phase profile leaves A, where c = 1, so it is built on W(1 - s).
  const OptimalProfile phase({lambda, eps, WellKind::W, true}, P, opt.profile_cells);
  const OptimalProfile damage({lambda, delta, WellKind::V, false}, P, opt.profile_cells);

  Recovery out;
  out.phase_width = phase.width();
  out.damage_width = damage.width();
  const double h = grid.h();
  if (geo.has_interface && phase.width() < 2 * h) {
    throw RecoveryError("recovery: phase profile width " + std::to_string(phase.width()) +
                        " is below two cells; refine the grid");
  }
  if (geo.has_crack && damage.width() < 2 * h) {
    throw RecoveryError("recovery: damage profile width " + std::to_string(damage.width()) +
                        " is below two cells; refine the grid");
  }

  const double tube = lambda * delta;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double dA = geo.dist_A[i];
    const bool transition = dA > 0 && dA < phase.width();
    if (transition && geo.dist_M[i] < tube + damage.width()) {
      out.width_in_play = true;
      break;
    }
  }
  out.width_ok = !out.width_in_play || width_condition(eps, delta, lambda);
  if (!out.width_ok) {
    const std::string msg = "recovery: width condition eps/sqrt(lambda) <= lambda*delta fails (" +
                            std::to_string(eps / std::sqrt(lambda)) + " > " + std::to_string(tube) + ")";
    if (opt.enforce_width) throw RecoveryError(msg);
    out.notes.push_back(msg);
  }

  DiffuseState s = uniform_state(grid, 0.0, eps, delta);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s.c[i] = 1.0 - phase.g(geo.dist_A[i]);
    s.z[i] = damage.g(geo.dist_M[i] - tube);
    const double keep = cutoff(geo.dist_M[i] / tube);
    const Point x = grid.center_of(i);
    if (const auto* g1 = std::get_if<SharpGeometry1D>(&g)) {
      s.u.comp[0][i] = keep * g1->u(x[0]);
    } else {
      const auto& g2 = std::get<SharpGeometry2D>(g);
      const Point u = g2.u_spec.value(x, g2.M);
      s.u.comp[0][i] = keep * u[0];
      s.u.comp[1][i] = keep * u[1];
    }
  }
  out.state = std::move(s);
  return out;
}

}  // namespace phasecrack
