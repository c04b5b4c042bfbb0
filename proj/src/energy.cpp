#include "phasecrack/energy.hpp"

#include <algorithm>
#include <cmath>

namespace phasecrack {

void ElasticModel::validate() const {
  if (!(lame_mu > 0)) throw Error("elastic: lame_mu must be positive");
  if (!(lame_lambda >= 0)) throw Error("elastic: lame_lambda must be nonnegative");
  if (degradation != "quadratic" && degradation != "linear") {
    throw Error("elastic: unknown degradation '" + degradation + "'");
  }
  if (!(eta_rule.coefficient > 0)) throw Error("elastic: eta coefficient must be positive");
  if (!(eta_rule.exponent > 1)) throw Error("elastic: eta exponent must exceed 1 so that eta/delta -> 0");
}

double ElasticModel::psi(double z) const { return degradation == "linear" ? z : z * z; }

double ElasticModel::psi_prime(double z) const { return degradation == "linear" ? 1.0 : 2 * z; }

double ElasticModel::stiffness(int dim, double xx, double yy, double xy) const {
  if (dim == 1) return (lame_lambda + 2 * lame_mu) * xx * xx;
  const double tr = xx + yy;
  return lame_lambda * tr * tr + 2 * lame_mu * (xx * xx + yy * yy + 2 * xy * xy);
}

SymTensor ElasticModel::stiffness_gradient(int dim, double xx, double yy, double xy) const {
  if (dim == 1) return {2 * (lame_lambda + 2 * lame_mu) * xx, 0.0, 0.0};
  const double tr = xx + yy;
  return {2 * lame_lambda * tr + 4 * lame_mu * xx, 2 * lame_lambda * tr + 4 * lame_mu * yy, 8 * lame_mu * xy};
}

void DiffuseState::validate() const {
  c.grid.validate();
  if (!(u.grid == c.grid) || !(z.grid == c.grid)) throw Error("state: fields live on different grids");
  if (c.size() != c.grid.size() || z.size() != c.grid.size()) throw Error("state: value count mismatch");
  for (int a = 0; a < c.grid.dim; ++a) {
    if (u.comp[a].size() != c.grid.size()) throw Error("state: displacement size mismatch");
  }
  if (!(eps > 0) || !(delta > 0)) throw Error("state: eps and delta must be positive");
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(c.values) || !finite(z.values) || !finite(u.comp[0]) || !finite(u.comp[1])) {
    throw Error("state: non-finite field value");
  }
}

DiffuseState uniform_state(const Grid& g, double c_value, double eps, double delta) {
  return {ScalarField(g, c_value), VectorField(g), ScalarField(g, 1.0), eps, delta};
}

namespace {

double clamp_unit(double z, std::size_t& clamped) {
  if (z < 0.0) {
    ++clamped;
    return 0.0;
  }
  if (z > 1.0) {
    ++clamped;
    return 1.0;
  }
  return z;
}

double squared_norm(const VectorField& v, std::size_t i) {
  double s = 0.0;
  for (int a = 0; a < v.grid.dim; ++a) s += v.comp[a][i] * v.comp[a][i];
  return s;
}

struct Strain {
  double xx, yy, xy;
};

Strain misfit_strain(const SymTensorField& e, const ScalarField& c, const ElasticModel& M, std::size_t i) {
  const double ci = c[i];
  if (e.grid.dim == 1) return {e.comp[0][i] - ci * M.e0.xx, 0.0, 0.0};
  return {e.comp[0][i] - ci * M.e0.xx, e.comp[1][i] - ci * M.e0.yy, e.comp[2][i] - ci * M.e0.xy};
}

}  // namespace

EnergyBreakdown diffuse_energy(const DiffuseState& s, const PotentialSet& P, const ElasticModel& M) {
  const Grid& g = s.c.grid;
  const int dim = g.dim;
  const auto gc = gradient(s.c);
  const auto gz = gradient(s.z);
  const auto e = sym_gradient(s.u);
  const double c_delta = P.c_delta(s.delta);
  const double eta = M.eta(s.delta);
  EnergyBreakdown out;
  double phase = 0.0;
  double elastic = 0.0;
  double crack = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double zc = clamp_unit(s.z[i], out.clamped);
    const double ph = (P.phi(zc) + c_delta) * (P.W(s.c[i]) / s.eps + s.eps * squared_norm(gc, i));
    const Strain xi = misfit_strain(e, s.c, M, i);
    const double el = (M.psi(zc) + eta) * M.stiffness(dim, xi.xx, xi.yy, xi.xy);
    const double cr = P.V(zc) / s.delta + s.delta * squared_norm(gz, i);
    if (!std::isfinite(ph) || !std::isfinite(el) || !std::isfinite(cr)) {
      throw EnergyError("diffuse_energy: non-finite integrand at cell " + std::to_string(i), i);
    }
    phase += ph;
    elastic += el;
    crack += cr;
  }
  const double vol = g.cell_volume();
  out.e_phase = vol * phase;
  out.e_elastic = vol * elastic;
  out.e_crack = vol * crack;
  out.e_total = out.e_phase + out.e_elastic + out.e_crack;
  return out;
}

std::vector<double> elastic_weights(const DiffuseState& s, const ElasticModel& M) {
  std::vector<double> w(s.z.size());
  std::size_t ignored = 0;
  const double eta = M.eta(s.delta);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = M.psi(clamp_unit(s.z[i], ignored)) + eta;
  return w;
}

VectorField apply_elastic(const VectorField& u, std::span<const double> weights, const ElasticModel& M) {
  const Grid& g = u.grid;
  const auto e = sym_gradient(u);
  SymTensorField stress(g);
  const double vol = g.cell_volume();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double yy = g.dim == 2 ? e.comp[1][i] : 0.0;
    const double xy = g.dim == 2 ? e.comp[2][i] : 0.0;
    const SymTensor d = M.stiffness_gradient(g.dim, e.comp[0][i], yy, xy);
    stress.comp[0][i] = vol * weights[i] * d.xx;
    if (g.dim == 2) {
      stress.comp[1][i] = vol * weights[i] * d.yy;
      stress.comp[2][i] = vol * weights[i] * d.xy;
    }
  }
  return sym_gradient_adjoint(stress);
}

VectorField elastic_load(const ScalarField& c, std::span<const double> weights, const ElasticModel& M) {
  const Grid& g = c.grid;
  SymTensorField stress(g);
  const double vol = g.cell_volume();
  const SymTensor d0 = M.stiffness_gradient(g.dim, M.e0.xx, M.e0.yy, M.e0.xy);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double k = vol * weights[i] * c[i];
    stress.comp[0][i] = k * d0.xx;
    if (g.dim == 2) {
      stress.comp[1][i] = k * d0.yy;
      stress.comp[2][i] = k * d0.xy;
    }
  }
  return sym_gradient_adjoint(stress);
}

ScalarField grad_c(const DiffuseState& s, const PotentialSet& P, const ElasticModel& M) {
  const Grid& g = s.c.grid;
  const auto gc = gradient(s.c);
  const auto e = sym_gradient(s.u);
  const double c_delta = P.c_delta(s.delta);
  const double eta = M.eta(s.delta);
  const double vol = g.cell_volume();
  ScalarField out(g);
  VectorField flux(g);
  std::size_t ignored = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double zc = clamp_unit(s.z[i], ignored);
    const double weight = P.phi(zc) + c_delta;
    const Strain xi = misfit_strain(e, s.c, M, i);
    const SymTensor d = M.stiffness_gradient(g.dim, xi.xx, xi.yy, xi.xy);
    const double coupling = d.xx * M.e0.xx + (g.dim == 2 ? d.yy * M.e0.yy + d.xy * M.e0.xy : 0.0);
    out[i] = vol * (weight * P.W.prime(s.c[i]) / s.eps - (M.psi(zc) + eta) * coupling);
    for (int a = 0; a < g.dim; ++a) flux.comp[a][i] = vol * 2 * s.eps * weight * gc.comp[a][i];
  }
  const auto div = gradient_adjoint(flux);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] += div[i];
  return out;
}

VectorField grad_u(const DiffuseState& s, const PotentialSet&, const ElasticModel& M) {
  const auto w = elastic_weights(s, M);
  auto out = apply_elastic(s.u, w, M);
  const auto load = elastic_load(s.c, w, M);
  for (int a = 0; a < s.c.grid.dim; ++a) {
    for (std::size_t i = 0; i < out.size(); ++i) out.comp[a][i] -= load.comp[a][i];
  }
  return out;
}

ScalarField grad_z(const DiffuseState& s, const PotentialSet& P, const ElasticModel& M) {
  const Grid& g = s.c.grid;
  const auto gc = gradient(s.c);
  const auto gz = gradient(s.z);
  const auto e = sym_gradient(s.u);
  const double vol = g.cell_volume();
  ScalarField out(g);
  VectorField flux(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double z = s.z[i];
    if (z >= 0.0 && z <= 1.0) {
      const Strain xi = misfit_strain(e, s.c, M, i);
      out[i] = vol * (P.phi_prime(z) * (P.W(s.c[i]) / s.eps + s.eps * squared_norm(gc, i)) +
                      M.psi_prime(z) * M.stiffness(g.dim, xi.xx, xi.yy, xi.xy) + P.V.prime(z) / s.delta);
    }
    for (int a = 0; a < g.dim; ++a) flux.comp[a][i] = vol * 2 * s.delta * gz.comp[a][i];
  }
  const auto div = gradient_adjoint(flux);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] += div[i];
  return out;
}

double mass(const ScalarField& c) { return integrate(c) / c.grid.volume(); }

ScalarField project_mass(const ScalarField& c, double mu0) {
  if (!(mu0 >= 0.0 && mu0 <= 1.0)) throw Error("project_mass: mu0 must lie in [0, 1]");
  ScalarField out = c;
  const double shift = mu0 - mass(c);
  for (double& v : out.values) v += shift;
  return out;
}

}  // namespace phasecrack
