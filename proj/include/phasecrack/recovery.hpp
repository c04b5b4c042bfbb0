#pragma once

#include <string>
#include <vector>

#include "phasecrack/energy.hpp"
#include "phasecrack/sharp.hpp"

namespace phasecrack {

/// Parameters of the near-optimal transition profile
/// ζ(s) = ∫_0^s scale / √(λ + f(t)) dt and its inverse g.
struct ProfileParams {
  double lambda = 1e-4;
  /// eps for the phase profile, delta for the damage profile.
  double scale = 0.0;
  WellKind which = WellKind::W;
  /// Use t ↦ f(1 - t), for profiles that leave the well at 1.
  bool mirrored = false;

  void validate() const;
};

class OptimalProfile {
 public:
  OptimalProfile(const ProfileParams& pp, const PotentialSet& P, std::size_t cells = 4096);

  const ProfileParams& params() const { return pp_; }
  double zeta(double s) const;
  /// ζ(1).
  double width() const { return width_; }
  /// 0 for r < 0, 1 for r > ζ(1), ζ⁻¹(r) in between.
  double g(double r) const;
  /// g'(r) = √(λ + f(g(r))) / scale inside the transition, 0 outside.
  double slope(double r) const;
  double well(double s) const;

 private:
  ProfileParams pp_;
  RealFunction f_;
  CumulativeIntegral table_;
  double width_ = 0.0;
};

/// Direct adaptive quadrature of ζ(s), independent of any tabulation.
double zeta(const ProfileParams& pp, const PotentialSet& P, double s);
double g_profile(const OptimalProfile& op, double r);

/// ∫_0^{ζ(1)} (f(g)/scale + scale |g'|²) dr, evaluated through the identity
/// g' = √(λ + f(g))/scale as ∫_0^1 (2f + λ)/√(λ + f) ds. Independent of scale.
double profile_energy_1d(const ProfileParams& pp, const PotentialSet& P);

/// Smoothstep 3t² − 2t³ clamped to [0, 1].
double cutoff(double t);

/// ε/√λ ≤ λδ.
bool width_condition(double eps, double delta, double lambda);

struct RecoveryOptions {
  double lambda = 1e-4;
  /// Reject configurations where the phase transition meets the damage zone
  /// but the width condition fails. When off, such builds are flagged instead.
  bool enforce_width = true;
  std::size_t profile_cells = 4096;
};

struct Recovery {
  DiffuseState state;
  double phase_width = 0.0;
  double damage_width = 0.0;
  /// The phase transition band reaches the damage zone.
  bool width_in_play = false;
  bool width_ok = true;
  std::vector<std::string> notes;
};

class RecoveryError : public Error {
 public:
  using Error::Error;
};

Recovery build_recovery(const SharpGeometry& g, double eps, double delta, const Grid& grid, const PotentialSet& P,
                        const RecoveryOptions& opt = {});

}  // namespace phasecrack
