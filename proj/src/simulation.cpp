#include "slicesim/simulation.hpp"

#include <vector>

#include "slicesim/coordinator.hpp"
#include "slicesim/environment.hpp"
#include "slicesim/errors.hpp"
#include "slicesim/estimator.hpp"
#include "slicesim/rng.hpp"

namespace slicesim {

std::string algorithm_label(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Learning: return "learning";
    case Algorithm::Baseline: return "baseline";
  }
  throw ValidationError("unknown algorithm");
}

namespace {

std::vector<double> per_slice_totals(const std::vector<Observation>& observations,
                                     int num_slices) {
  std::vector<double> totals(num_slices, 0.0);
  for (const Observation& obs : observations) totals[obs.slice] += obs.utility;
  return totals;
}

MetricsRow make_row(int slot, const std::string& label,
                    const std::vector<Observation>& observations, int num_slices,
                    const AllocationTensor& deployed) {
  MetricsRow row;
  row.slot = slot;
  row.algorithm = label;
  row.total_utility = total_utility(observations);
  row.per_slice_utility = per_slice_totals(observations, num_slices);
  row.allocation_checksum = allocation_checksum(deployed);
  return row;
}

MetricsTimeline run_baseline(const ScenarioConfig& config, const SimulationOptions& options) {
  MetricsTimeline timeline;
  Environment env(make_ground_truth(config, derive_stream(options.seed, "ground-truth")),
                  config.attacks, config.learning.observation_noise_sigma,
                  derive_stream(options.seed, "noise"));
  const AllocationTensor deployed = baseline_allocation(config);
  if (!validate_allocation(deployed, config).feasible) timeline.all_feasible = false;
  for (int t = 0; t < config.horizon; ++t) {
    const std::vector<Observation> observations = env.observe(deployed, t);
    timeline.rows.push_back(make_row(t, "baseline", observations, config.num_slices, deployed));
    timeline.deployed.push_back(deployed);
  }
  return timeline;
}

MetricsTimeline run_learning(const ScenarioConfig& config, const SimulationOptions& options) {
  MetricsTimeline timeline;
  Environment env(make_ground_truth(config, derive_stream(options.seed, "ground-truth")),
                  config.attacks, config.learning.observation_noise_sigma,
                  derive_stream(options.seed, "noise"));
  EstimatorState estimator = init_estimator(config);
  Rng dither_rng(derive_stream(options.seed, "dither"));

  const int burn_in = config.learning.dither_slots;

  std::optional<AdmmState> warm_start;
  for (int t = 0; t < config.horizon; ++t) {
    const Tensor3 gradients =
        options.exact_gradients ? env.ground_truth().alpha : gradient_tensor(estimator);
    AdmmState admm = run_admm(gradients, config, warm_start);

    AllocationTensor deployed = enforce_feasibility(admm.x, config);
    const bool dither = !options.exact_gradients &&
                        config.learning.dither_magnitude > 0.0 && t < burn_in;
    if (dither) {
      deployed = exploration_dither(deployed, config.learning.dither_magnitude, config,
                                    dither_rng);
    }
    if (!validate_allocation(deployed, config).feasible) timeline.all_feasible = false;

    const std::vector<Observation> observations = env.observe(deployed, t);
    for (const Observation& obs : observations) {
      update(estimator, obs, config.learning.forgetting);
    }
    const DetectionReport detection =
        detect_attacks(estimator, config.detection.threshold, config.detection.window);

    MetricsRow row = make_row(t, "learning", observations, config.num_slices, deployed);
    row.admm_iterations = admm.iterations;
    row.primal_residual = admm.primal_residual;
    row.dual_residual = admm.dual_residual;
    row.flagged_nodes = detection.flagged_nodes;
    row.flagged_pairs = detection.flagged_pairs;
    timeline.rows.push_back(std::move(row));
    timeline.deployed.push_back(std::move(deployed));

    warm_start = std::move(admm);
  }
  return timeline;
}

}  // namespace

MetricsTimeline run_simulation(const ScenarioConfig& config, const SimulationOptions& options) {
  validate_config(config);
  if (options.algorithm == Algorithm::Baseline) return run_baseline(config, options);
  return run_learning(config, options);
}

}  // namespace slicesim
