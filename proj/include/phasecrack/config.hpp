#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phasecrack/harness.hpp"
#include "phasecrack/solver.hpp"

namespace phasecrack {

inline constexpr const char* kVersion = "0.1.0";

struct PotentialConfig {
  std::string W = "quartic";
  double W_scale = 1.0;
  std::string V = "quadratic";
  double V_scale = 1.0;
  std::string phi = "concave";
  CDeltaRule c_delta;
  double coercivity = 4.0;
  int quadrature_nodes = 4096;
  /// m-samples used by the admissibility check.
  int samples = 10000;
  bool operator==(const PotentialConfig&) const = default;
};

struct RunConfig {
  PotentialConfig potential;
  ElasticModel elastic;
  double theta = 0.0;
  SharpGeometry geometry = SharpGeometry1D{};
  SolverPlan solver;
  SweepPlan sweep{.eps_schedule = {1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256, 1.0 / 512}};
  std::string out = "out";
  std::uint64_t seed = 0;
  /// eps and cells per axis for the single-state commands (minimize, recover).
  double eps = 1.0 / 128;
  int cells = 1 << 12;

  PotentialSet potentials() const;
  bool operator==(const RunConfig&) const = default;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Sections [potential], [elastic], [geometry], [grid], [solver], [sweep],
/// [run]; lines `key = value`; `#` starts a comment. Throws ConfigError
/// listing every violation found.
RunConfig parse_config_string(const std::string& text);
RunConfig parse_config(const std::string& path);
std::string emit_config(const RunConfig& cfg);

/// All cross-field checks; empty when the configuration is usable.
std::vector<std::string> validate_config(const RunConfig& cfg);

/// Whether some phase boundary lies close enough to a crack for the
/// recovery's width condition to matter at this (eps, delta).
bool width_condition_in_play(const SharpGeometry& g, double eps, double delta, double lambda, const PotentialSet& P);

}  // namespace phasecrack
