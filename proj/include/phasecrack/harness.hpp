#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "phasecrack/recovery.hpp"
#include "phasecrack/sharp.hpp"

namespace phasecrack {

/// δ = k ε^p. Named forms: "sqrt" (1, 1/2), "two_thirds" (1, 2/3),
/// "scaled_two_thirds" (k, 2/3) and the general "power" (k, p).
struct DeltaRule {
  std::string name = "two_thirds";
  double k = 1.0;
  double p = 2.0 / 3.0;

  static DeltaRule named(const std::string& name, double k = 1.0, double p = 2.0 / 3.0);
  double operator()(double eps) const { return k * std::pow(eps, p); }
  bool operator==(const DeltaRule&) const = default;
};

/// "fixed": `cells` per axis. "resolve": the smallest power of two at least
/// `cells` such that every profile width and the damage tube span
/// `cells_per_width` cells, capped at `max_cells`.
struct GridRule {
  std::string kind = "fixed";
  int cells = 1 << 14;
  double cells_per_width = 8.0;
  int max_cells = 1 << 20;
  bool operator==(const GridRule&) const = default;
};

struct SweepPlan {
  std::vector<double> eps_schedule;
  DeltaRule delta_rule;
  double lambda = 1e-4;
  SharpGeometry geometry = SharpGeometry1D{};
  GridRule grid_rule;
  bool enforce_width = true;
  std::size_t profile_cells = 4096;
  std::string output;

  /// Aggregated list of violations; empty when valid.
  std::vector<std::string> violations() const;
  void validate() const;
  bool operator==(const SweepPlan&) const = default;
};

Grid grid_for(const SharpGeometry& g, int cells);
/// Cells per axis chosen by the plan's grid rule at this ε.
int cells_for(const SweepPlan& plan, const PotentialSet& P, double eps);

struct SweepRow {
  double eps = 0.0;
  double delta = 0.0;
  EnergyBreakdown energy;
  double e_sharp = 0.0;
  double rel_err = 0.0;
  int cells = 0;
  std::string status = "ok";
};

struct SweepTable {
  SharpEnergy sharp;
  std::vector<SweepRow> rows;
};

SweepTable gamma_sweep(const SweepPlan& plan, const PotentialSet& P, const ElasticModel& M);

/// Header `eps,delta,e_phase,e_elastic,e_crack,e_total,e_sharp,rel_err,status`,
/// numbers with 17 significant digits.
void write_sweep_csv(std::ostream& os, const SweepTable& table);
std::string format_number(double v);

struct GeodesicCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

/// Compares |D(d_f ∘ w)|(Ω) with ∫(f(w)/ε + ε|w'|²) for the piecewise-linear
/// interpolant of a one-dimensional field through its cell centers (constant
/// in the two boundary half cells).
GeodesicCheck geodesic_inequality_check(const ScalarField& w, WellKind f, double eps, const PotentialSet& P);

struct LevelSetDiagnostic {
  double t_star = 0.0;
  double perimeter = 0.0;
  double bound = 0.0;
  double total_variation = 0.0;
  bool passed = false;
};

/// Scans thresholds of d_V ∘ z in (d_V(1/4), d_V(3/4)) and reports the one
/// whose superlevel set has the smallest face-counted perimeter, together
/// with the coarea bound TV(d_V ∘ z)/(d_V(3/4) − d_V(1/4)).
LevelSetDiagnostic compactness_levelset_diagnostic(const ScalarField& z, const PotentialSet& P, double slack = 0.2,
                                                    int thresholds = 256);

struct SlicingReport {
  double max_error = 0.0;
  double h = 0.0;
  /// max_error / h.
  double constant = 0.0;
  /// sup |e(u)| used to normalize; 0 means errors are absolute.
  double scale = 0.0;
  int directions = 0;
};

/// For random directions ξ and base points y, compares the centered
/// difference of t ↦ ⟨u(y + tξ), ξ⟩ along the sampled slice with ⟨e(u)ξ, ξ⟩.
SlicingReport slicing_identity_check(const DisplacementSpec& u, const Grid& grid, int directions,
                                     std::uint64_t seed = 0);

}  // namespace phasecrack
