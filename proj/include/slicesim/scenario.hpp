#ifndef SLICESIM_SCENARIO_HPP
#define SLICESIM_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slicesim/tensor.hpp"

namespace slicesim {

/// Slack below zero an allocation entry may carry after a feasibility pass.
inline constexpr double kNumericEps = 1e-9;

/// Constraint violation (in resource units) up to which an allocation is
/// still reported feasible.
inline constexpr double kFeasibilityTol = 1e-6;

struct ResourceKind {
  int index = 0;
  std::string label;

  friend bool operator==(const ResourceKind&, const ResourceKind&) = default;
};

/// The three kinds the simulator models by default.
std::vector<ResourceKind> default_resource_kinds(int count);

struct AttackEvent {
  int target_node = 0;
  std::optional<int> target_slice;  // absent = every slice on the node
  int start_slot = 0;
  std::optional<int> end_slot;      // absent = active until the horizon
  double attenuation = 1.0;

  friend bool operator==(const AttackEvent&, const AttackEvent&) = default;
};

struct AlphaSpec {
  enum class Mode { Uniform, Explicit };
  Mode mode = Mode::Uniform;
  double low = 1.0;
  double high = 10.0;
  std::optional<std::uint64_t> seed;  // pins the draw independently of the run seed
  std::vector<double> values;         // I*J*K row-major, Explicit mode only

  friend bool operator==(const AlphaSpec&, const AlphaSpec&) = default;
};

struct AdmmParams {
  double rho = 1.0;
  double eps_primal = 1e-4;
  double eps_dual = 1e-4;
  int max_iters = 500;

  friend bool operator==(const AdmmParams&, const AdmmParams&) = default;
};

struct LearningParams {
  double forgetting = 0.9;
  double prior_mean = 1.0;
  double prior_covariance_scale = 100.0;
  double dither_magnitude = 2.0;
  int dither_slots = 0;  // resolved to num_kinds + 2 at load time when omitted
  double observation_noise_sigma = 0.0;

  friend bool operator==(const LearningParams&, const LearningParams&) = default;
};

struct DetectionParams {
  double threshold = 0.5;
  int window = 5;

  friend bool operator==(const DetectionParams&, const DetectionParams&) = default;
};

/// Full experiment description: topology, capacities, SLA budgets, the
/// ground-truth law, the attack schedule, and solver/learning parameters.
struct ScenarioConfig {
  int num_slices = 0;
  int num_nodes = 0;
  std::vector<ResourceKind> resource_kinds;
  std::vector<double> node_capacity;  // J*K row-major
  std::vector<double> sla_budget;     // I*K row-major
  AlphaSpec alpha;
  std::vector<AttackEvent> attacks;
  int horizon = 1;
  AdmmParams admm;
  LearningParams learning;
  DetectionParams detection;

  int num_kinds() const { return static_cast<int>(resource_kinds.size()); }
  double capacity(int j, int k) const {
    return node_capacity[static_cast<std::size_t>(j) * num_kinds() + k];
  }
  double budget(int i, int k) const {
    return sla_budget[static_cast<std::size_t>(i) * num_kinds() + k];
  }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Hidden per-(slice, node, kind) efficiency weights. Only the environment
/// module reads these during a simulation.
struct GroundTruth {
  Tensor3 alpha;
};

struct FeasibilityReport {
  double max_capacity_violation = 0.0;  // over node/kind columns
  double max_budget_violation = 0.0;    // over slice/kind rows
  double max_negativity = 0.0;
  bool feasible = false;
};

/// Parses and validates scenario text. Throws ParseError or ValidationError.
ScenarioConfig load_scenario(const std::string& text);
ScenarioConfig load_scenario_file(const std::string& path);

/// Canonical text form; load_scenario(serialize_scenario(c)) == c.
std::string serialize_scenario(const ScenarioConfig& config);

/// Re-checks every invariant on an already-built config.
void validate_config(const ScenarioConfig& config);

/// Draws alpha uniformly on [low, high], independently per (i, j, k).
/// Requires a sampling-law alpha spec.
GroundTruth sample_ground_truth(const ScenarioConfig& config, std::uint64_t seed);

/// Explicit values when the config carries them, otherwise a uniform draw
/// seeded by the config's pinned seed or, failing that, `seed`.
GroundTruth make_ground_truth(const ScenarioConfig& config, std::uint64_t seed);

/// Even split: x_{i,j,k} = min(C_{j,k} / I, B_{i,k} / J).
AllocationTensor baseline_allocation(const ScenarioConfig& config);

FeasibilityReport validate_allocation(const AllocationTensor& x, const ScenarioConfig& config);

}  // namespace slicesim

#endif
