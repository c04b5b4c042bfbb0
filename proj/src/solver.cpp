#include "phasecrack/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace phasecrack {

void SolverPlan::validate() const {
  if (max_outer < 1) throw Error("solver: max_outer must be at least 1");
  if (!(tol_rel_energy > 0) || !(cg_tol > 0) || !(step0 > 0)) throw Error("solver: tolerances must be positive");
  if (cg_max_iters < 1) throw Error("solver: cg_max_iters must be at least 1");
  if (!(backtrack_factor > 0 && backtrack_factor < 1)) throw Error("solver: backtrack_factor must lie in (0, 1)");
  if (!(armijo_c > 0 && armijo_c <= 0.5)) throw Error("solver: armijo_c must lie in (0, 1/2]");
  if (mass_constraint && !(*mass_constraint >= 0 && *mass_constraint <= 1)) {
    throw Error("solver: mass constraint must lie in [0, 1]");
  }
  if (!(jitter >= 0)) throw Error("solver: jitter must be nonnegative");
}

std::string to_string(BlockStatus s) {
  switch (s) {
    case BlockStatus::ok:
      return "ok";
    case BlockStatus::stationary:
      return "stationary";
    case BlockStatus::no_step:
      return "no_step";
    case BlockStatus::cg_not_converged:
      return "cg_not_converged";
    case BlockStatus::reverted:
      return "reverted";
  }
  return "unknown";
}

namespace {

using Vec = std::vector<double>;
using Apply = std::function<Vec(const Vec&)>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

/// Conjugate gradients on A x = b from the given x. Returns true once
/// ‖r‖ ≤ tol·‖r0‖.
bool conjugate_gradient(const Apply& A, const Vec& b, Vec& x, double tol, int max_iters, int& iters) {
  Vec r = A(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  const double r0 = std::sqrt(dot(r, r));
  iters = 0;
  if (r0 == 0.0) return true;
  Vec p = r;
  double rr = dot(r, r);
  while (iters < max_iters) {
    const Vec Ap = A(p);
    const double pAp = dot(p, Ap);
    if (!(pAp > 0)) return false;
    const double alpha = rr / pAp;
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    ++iters;
    const double rr_next = dot(r, r);
    if (std::sqrt(rr_next) <= tol * r0) return true;
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
  }
  return false;
}

Vec flatten(const VectorField& u) {
  Vec out(u.comp[0]);
  if (u.grid.dim == 2) out.insert(out.end(), u.comp[1].begin(), u.comp[1].end());
  return out;
}

VectorField unflatten(const Grid& g, const Vec& v) {
  VectorField u(g);
  const std::size_t n = g.size();
  std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n), u.comp[0].begin());
  if (g.dim == 2) std::copy(v.begin() + static_cast<std::ptrdiff_t>(n), v.end(), u.comp[1].begin());
  return u;
}

void remove_mean(Vec& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  for (double& x : v) x -= m;
}

double start_step(const SolverPlan& plan, double remembered) {
  return remembered > 0 ? std::min(plan.step0, 2 * remembered) : plan.step0;
}

}  // namespace

BlockResult minimize_u(const DiffuseState& s, const PotentialSet& P, const ElasticModel& M, const SolverPlan& plan) {
  const Grid& g = s.c.grid;
  const auto w = elastic_weights(s, M);
  if (std::any_of(w.begin(), w.end(), [](double x) { return !(x > 0); })) {
    throw Error("minimize_u: degradation weights must be positive");
  }
  const Vec b = flatten(elastic_load(s.c, w, M));
  Vec x = flatten(s.u);
  const Apply A = [&](const Vec& v) { return flatten(apply_elastic(unflatten(g, v), w, M)); };
  BlockResult out{s, BlockStatus::ok, 0.0, 0};
  const bool converged = conjugate_gradient(A, b, x, plan.cg_tol, plan.cg_max_iters, out.iterations);
  out.state.u = unflatten(g, x);
  const double before = diffuse_energy(s, P, M).e_total;
  const double after = diffuse_energy(out.state, P, M).e_total;
  if (after > before) {
    out.state = s;
    out.status = BlockStatus::reverted;
  } else if (!converged) {
    out.status = BlockStatus::cg_not_converged;
  }
  out.step = 1.0;
  return out;
}

BlockResult minimize_z(const DiffuseState& s, const PotentialSet& P, const ElasticModel& M, const SolverPlan& plan,
                       StepMemory* memory) {
  const Grid& g = s.c.grid;
  const Vec grad = grad_z(s, P, M).values;
  const double vol = g.cell_volume();
  const double e0 = diffuse_energy(s, P, M).e_total;
  BlockResult out{s, BlockStatus::ok, 0.0, 0};

  // Projected descent: z(α) = Π_[0,1](z − α ∇E / |cell|).
  auto trial = [&](double alpha) {
    Vec z = s.z.values;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::clamp(z[i] - alpha * grad[i] / vol, 0.0, 1.0);
    return z;
  };
  double alpha = start_step(plan, memory ? memory->z : 0.0);
  {
    // A projected step of any length that does not move z means stationarity.
    const Vec z = trial(alpha);
    double moved = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) moved += grad[i] * (z[i] - s.z[i]);
    if (!(moved < 0)) {
      out.status = BlockStatus::stationary;
      return out;
    }
  }
  for (int k = 0; k <= 60; ++k, alpha *= plan.backtrack_factor) {
    ++out.iterations;
    DiffuseState cand = s;
    cand.z.values = trial(alpha);
    double decrease = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i) decrease += grad[i] * (cand.z[i] - s.z[i]);
    if (!(decrease < 0)) break;
    const double e = diffuse_energy(cand, P, M).e_total;
    if (e <= e0 + plan.armijo_c * decrease) {
      out.state = std::move(cand);
      out.step = alpha;
      if (memory) memory->z = alpha;
      return out;
    }
  }
  out.status = BlockStatus::no_step;
  return out;
}

BlockResult minimize_c(const DiffuseState& s, const PotentialSet& P, const ElasticModel& M, const SolverPlan& plan,
                       StepMemory* memory) {
  const Grid& g = s.c.grid;
  const std::size_t n = g.size();
  Vec grad = grad_c(s, P, M).values;
  if (plan.mass_constraint) remove_mean(grad);
  BlockResult out{s, BlockStatus::ok, 0.0, 0};
  if (max_abs(grad) == 0.0) {
    out.status = BlockStatus::stationary;
    return out;
  }

  // Sobolev-preconditioned direction: solve (κ I + 2ε Gᵀ Φ G) d = −∇E / |cell|
  // with Φ the interfacial weights and κ bounding the curvature of W/ε.
  const double c_delta = P.c_delta(s.delta);
  Vec weight(n);
  double max_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    weight[i] = P.phi(std::clamp(s.z[i], 0.0, 1.0)) + c_delta;
    max_weight = std::max(max_weight, weight[i]);
  }
  const double kappa = 2.0 * max_weight / s.eps;
  const Apply precond = [&](const Vec& v) {
    const auto gv = gradient(ScalarField(g, v));
    VectorField flux(g);
    for (int a = 0; a < g.dim; ++a) {
      for (std::size_t i = 0; i < n; ++i) flux.comp[a][i] = 2 * s.eps * weight[i] * gv.comp[a][i];
    }
    Vec out_v = gradient_adjoint(flux).values;
    for (std::size_t i = 0; i < n; ++i) out_v[i] += kappa * v[i];
    return out_v;
  };
  Vec rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = -grad[i] / g.cell_volume();
  Vec d(n, 0.0);
  int cg_iters = 0;
  conjugate_gradient(precond, rhs, d, 1e-6, 500, cg_iters);
  if (plan.mass_constraint) remove_mean(d);
  const double slope = dot(grad, d);
  if (!(slope < 0)) {
    out.status = BlockStatus::stationary;
    return out;
  }

  const double e0 = diffuse_energy(s, P, M).e_total;
  double alpha = start_step(plan, memory ? memory->c : 0.0);
  for (int k = 0; k <= 60; ++k, alpha *= plan.backtrack_factor) {
    ++out.iterations;
    DiffuseState cand = s;
    for (std::size_t i = 0; i < n; ++i) cand.c[i] += alpha * d[i];
    if (plan.mass_constraint) cand.c = project_mass(cand.c, *plan.mass_constraint);
    const double e = diffuse_energy(cand, P, M).e_total;
    if (e <= e0 + plan.armijo_c * alpha * slope) {
      out.state = std::move(cand);
      out.step = alpha;
      if (memory) memory->c = alpha;
      return out;
    }
  }
  out.status = BlockStatus::no_step;
  return out;
}

SolveResult alternate(const DiffuseState& s0, const PotentialSet& P, const ElasticModel& M, const SolverPlan& plan) {
  plan.validate();
  s0.validate();
  SolveResult out{s0, {}};
  if (plan.mass_constraint) out.state.c = project_mass(out.state.c, *plan.mass_constraint);
  StepMemory memory;
  auto record = [&](BlockStatus u, BlockStatus z, BlockStatus c) {
    out.trajectory.sweeps.push_back({diffuse_energy(out.state, P, M), u, z, c, mass(out.state.c)});
  };
  record(BlockStatus::ok, BlockStatus::ok, BlockStatus::ok);
  out.trajectory.termination = "max_outer";
  for (int k = 0; k < plan.max_outer; ++k) {
    const double before = out.trajectory.sweeps.back().energy.e_total;
    auto ru = minimize_u(out.state, P, M, plan);
    auto rz = minimize_z(ru.state, P, M, plan, &memory);
    auto rc = minimize_c(rz.state, P, M, plan, &memory);
    out.state = std::move(rc.state);
    record(ru.status, rz.status, rc.status);
    const double after = out.trajectory.sweeps.back().energy.e_total;
    const bool stuck = rz.status != BlockStatus::ok && rc.status != BlockStatus::ok;
    if (stuck) {
      out.trajectory.termination = "stationary";
      break;
    }
    if (before - after < plan.tol_rel_energy * std::max(std::abs(before), 1e-300)) {
      out.trajectory.termination = "converged";
      break;
    }
  }

  const auto gu = flatten(grad_u(out.state, P, M));
  Vec gc = grad_c(out.state, P, M).values;
  if (plan.mass_constraint) remove_mean(gc);
  const Vec gz = grad_z(out.state, P, M).values;
  double free_z = 0.0;
  for (std::size_t i = 0; i < gz.size(); ++i) {
    const double z = out.state.z[i];
    const bool blocked = (z <= 0.0 && gz[i] > 0) || (z >= 1.0 && gz[i] < 0);
    if (!blocked) free_z = std::max(free_z, std::abs(gz[i]));
  }
  out.trajectory.grad_u = max_abs(gu);
  out.trajectory.grad_z = free_z;
  out.trajectory.grad_c = max_abs(gc);
  return out;
}

DiffuseState default_initial_state(const Grid& grid, const SolverPlan& plan, double eps, double delta) {
  const double mu0 = plan.mass_constraint.value_or(0.5);
  DiffuseState s = uniform_state(grid, mu0, eps, delta);
  CounterRng rng(plan.seed, 1);
  const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = (grid.center_of(i)[0] - grid.origin[0]) / grid.extent[0];
    const double noise = rng.uniform(-1.0, 1.0);
    s.c[i] += plan.jitter * (sign * std::cos(std::numbers::pi * x) + 0.01 * noise);
  }
  if (plan.mass_constraint) s.c = project_mass(s.c, mu0);
  return s;
}

}  // namespace phasecrack
