#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "phasecrack/quadrature.hpp"

namespace phasecrack {

/// A named built-in scalar potential with its derivative.
struct ScalarPotential {
  std::string name;
  double scale = 1.0;
  RealFunction value;
  RealFunction derivative;

  double operator()(double s) const { return value(s); }
  double prime(double s) const { return derivative(s); }
};

/// Double wells: "quartic" s^2(1-s)^2.
ScalarPotential make_double_well(std::string_view name, double scale = 1.0);
/// Single wells: "quadratic" (1-s)^2, "zero" (test only).
ScalarPotential make_single_well(std::string_view name, double scale = 1.0);

enum class WellKind { W, V };

/// C_delta = coefficient * delta^exponent.
struct CDeltaRule {
  double coefficient = 1.0;
  double exponent = 1.0;
  double operator()(double delta) const;
  bool operator==(const CDeltaRule&) const = default;
};

/// W, V and the interfacial weight phi, plus the metadata used by the
/// admissibility check and the geodesic transforms.
struct PotentialSet {
  ScalarPotential W;
  ScalarPotential V;
  ScalarPotential phi_base;
  /// phi(0) offset: the weight actually used is theta + (1 - theta) * phi_base.
  double theta = 0.0;
  CDeltaRule c_delta;
  double coercivity = 4.0;
  int quadrature_nodes = 4096;
  double cap_W = 0.0;
  double cap_V = 0.0;

  double phi(double m) const { return theta + (1.0 - theta) * phi_base(m); }
  double phi_prime(double m) const { return (1.0 - theta) * phi_base.prime(m); }
  const ScalarPotential& well(WellKind k) const { return k == WellKind::W ? W : V; }
  double cap(WellKind k) const { return k == WellKind::W ? cap_W : cap_V; }
};

/// phi built-ins: "concave" 2m - m^2, "sqrt_v_ratio" (∫_0^m √V / ∫_0^1 √V),
/// "linear" m, "one" (constant 1).
ScalarPotential make_interfacial_weight(std::string_view name, const ScalarPotential& V);

/// Assembles a set from named built-ins and computes the caps sup_[0,1] f.
PotentialSet make_potential_set(ScalarPotential W, ScalarPotential V, ScalarPotential phi,
                                double theta = 0.0, CDeltaRule c_delta = {}, double coercivity = 4.0,
                                int quadrature_nodes = 4096);

PotentialSet make_default_potentials();

struct ConditionResult {
  std::string name;
  bool passed = false;
  /// Smallest slack observed; negative means violated.
  double worst_margin = 0.0;
  int samples = 0;
  std::string note;
};

struct AdmissibilityReport {
  std::vector<ConditionResult> conditions;
  bool passed = false;
  const ConditionResult* find(std::string_view name) const;
};

/// Falsification check of the structural assumptions on sampled grids.
AdmissibilityReport check_admissibility(const PotentialSet& P, int m_samples);

double surface_density(const PotentialSet& P);
double fracture_density(const PotentialSet& P);

/// d_f(t) = 2 ∫_0^t √min{f(s), M} ds with M = sup_[0,1] f.
double geodesic_transform(WellKind f, const PotentialSet& P, double t);

/// Tabulated d_f for bulk evaluation (field-wide transforms). Arguments
/// outside [lo, hi] fall back to direct quadrature.
class GeodesicTable {
 public:
  GeodesicTable(WellKind f, const PotentialSet& P, double lo = -1.0, double hi = 2.0, std::size_t cells = 3072);
  double operator()(double t) const { return table_(t) - zero_; }
  double inverse(double d) const { return table_.inverse(d + zero_); }

 private:
  CumulativeIntegral table_;
  double zero_;
};

double phi_delta(const PotentialSet& P, double delta, double z);

}  // namespace phasecrack
