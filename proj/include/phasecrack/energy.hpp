#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "phasecrack/fields.hpp"
#include "phasecrack/potentials.hpp"

namespace phasecrack {

struct SymTensor {
  double xx = 0.0;
  double yy = 0.0;
  double xy = 0.0;
  bool operator==(const SymTensor&) const = default;
};

/// Isotropic stiffness, misfit strain and the damage degradation of the
/// elastic term, (psi(z) + eta(delta)) C(e(u) - c e0).
struct ElasticModel {
  double lame_lambda = 0.0;
  double lame_mu = 0.5;
  SymTensor e0;
  /// "quadratic" (z^2) or "linear" (z).
  std::string degradation = "quadratic";
  /// eta(delta) = coefficient * delta^exponent; the default reproduces delta^2.
  CDeltaRule eta_rule{1.0, 2.0};

  void validate() const;
  double psi(double z) const;
  double psi_prime(double z) const;
  double eta(double delta) const { return eta_rule(delta); }

  /// C(ξ) = λ (tr ξ)^2 + 2μ |ξ|^2 for symmetric ξ stored as (xx, yy, xy).
  double stiffness(int dim, double xx, double yy, double xy) const;
  /// ∂C/∂(xx, yy, xy).
  SymTensor stiffness_gradient(int dim, double xx, double yy, double xy) const;

  bool operator==(const ElasticModel&) const = default;
};

struct DiffuseState {
  ScalarField c;
  VectorField u;
  ScalarField z;
  double eps = 0.0;
  double delta = 0.0;

  /// Throws unless all fields share one grid, values are finite and eps, delta > 0.
  void validate() const;
};

/// Initial state with c ≡ c_value, u ≡ 0, z ≡ 1.
DiffuseState uniform_state(const Grid& g, double c_value, double eps, double delta);

struct EnergyBreakdown {
  double e_phase = 0.0;
  double e_elastic = 0.0;
  double e_crack = 0.0;
  double e_total = 0.0;
  /// Cells whose z had to be clamped into [0,1] for phi, V and psi.
  std::size_t clamped = 0;
};

class EnergyError : public Error {
 public:
  EnergyError(const std::string& what, std::size_t cell) : Error(what), cell_(cell) {}
  std::size_t cell() const { return cell_; }

 private:
  std::size_t cell_;
};

EnergyBreakdown diffuse_energy(const DiffuseState& s, const PotentialSet& P, const ElasticModel& M);

/// Exact gradients of the discrete energy with respect to nodal values.
ScalarField grad_c(const DiffuseState& s, const PotentialSet& P, const ElasticModel& M);
VectorField grad_u(const DiffuseState& s, const PotentialSet& P, const ElasticModel& M);
ScalarField grad_z(const DiffuseState& s, const PotentialSet& P, const ElasticModel& M);

/// psi(z) + eta(delta) per cell, with z clamped into [0,1].
std::vector<double> elastic_weights(const DiffuseState& s, const ElasticModel& M);
/// u ↦ ∂/∂u of Σ |cell| w C(e(u)): the linear part of grad_u.
VectorField apply_elastic(const VectorField& u, std::span<const double> weights, const ElasticModel& M);
/// The misfit load, so that grad_u = apply_elastic(u) - elastic_load(c).
VectorField elastic_load(const ScalarField& c, std::span<const double> weights, const ElasticModel& M);

double mass(const ScalarField& c);
ScalarField project_mass(const ScalarField& c, double mu0);

}  // namespace phasecrack
