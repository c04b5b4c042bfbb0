#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phasecrack/energy.hpp"

namespace phasecrack {

struct SolverPlan {
  int max_outer = 500;
  /// Stop once a sweep lowers the energy by less than this fraction.
  double tol_rel_energy = 1e-9;
  double cg_tol = 1e-10;
  int cg_max_iters = 20000;
  double step0 = 1.0;
  double backtrack_factor = 0.5;
  double armijo_c = 1e-4;
  std::optional<double> mass_constraint;
  std::uint64_t seed = 0;
  /// Amplitude of the perturbation added to the initial concentration.
  double jitter = 1e-3;

  void validate() const;
  bool operator==(const SolverPlan&) const = default;
};

enum class BlockStatus { ok, stationary, no_step, cg_not_converged, reverted };
std::string to_string(BlockStatus s);

struct BlockResult {
  DiffuseState state;
  BlockStatus status = BlockStatus::ok;
  /// Step length accepted by the line search (0 when none).
  double step = 0.0;
  int iterations = 0;
};

/// Step lengths remembered between calls, so each line search starts near
/// the last accepted step.
struct StepMemory {
  double z = 0.0;
  double c = 0.0;
};

BlockResult minimize_u(const DiffuseState& s, const PotentialSet& P, const ElasticModel& M, const SolverPlan& plan);
BlockResult minimize_z(const DiffuseState& s, const PotentialSet& P, const ElasticModel& M, const SolverPlan& plan,
                       StepMemory* memory = nullptr);
BlockResult minimize_c(const DiffuseState& s, const PotentialSet& P, const ElasticModel& M, const SolverPlan& plan,
                       StepMemory* memory = nullptr);

struct SweepRecord {
  EnergyBreakdown energy;
  BlockStatus u = BlockStatus::ok;
  BlockStatus z = BlockStatus::ok;
  BlockStatus c = BlockStatus::ok;
  double mass = 0.0;
};

struct Trajectory {
  /// Entry 0 is the starting state, entry k the state after sweep k.
  std::vector<SweepRecord> sweeps;
  std::string termination;
  /// Max-norm of each block gradient at the final state (c projected to
  /// zero mean in mass mode, z restricted to the free directions).
  double grad_u = 0.0;
  double grad_z = 0.0;
  double grad_c = 0.0;
};

struct SolveResult {
  DiffuseState state;
  Trajectory trajectory;
};

SolveResult alternate(const DiffuseState& s0, const PotentialSet& P, const ElasticModel& M, const SolverPlan& plan);

/// c = μ0 + jitter, z ≡ 1, u ≡ 0. The jitter is a seeded-sign cosine mode
/// along the first axis plus 1% seeded white noise, and μ0 is 1/2 when no
/// mass constraint is set.
DiffuseState default_initial_state(const Grid& grid, const SolverPlan& plan, double eps, double delta);

}  // namespace phasecrack
