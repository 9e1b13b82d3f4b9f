#ifndef SLICESIM_SIMULATION_HPP
#define SLICESIM_SIMULATION_HPP

#include <cstdint>
#include <string>

#include "slicesim/metrics.hpp"
#include "slicesim/scenario.hpp"

namespace slicesim {

enum class Algorithm { Learning, Baseline };

std::string algorithm_label(Algorithm algorithm);

struct SimulationOptions {
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::Learning;
  /// Debug mode: feed the true alpha to the coordinator and skip dithering.
  bool exact_gradients = false;
};

/// The slotted outer loop. Learning runs ADMM against the current learned
/// gradients (warm-started from the previous slot), deploys the repaired
/// allocation with exploration dither during burn-in, observes utilities,
/// updates the estimator, and runs detection. Baseline deploys the static
/// even split every slot. Deterministic for a fixed (config, seed): the
/// ground-truth, dither, and noise streams are derived independently from
/// the seed, so both algorithms see the same world.
MetricsTimeline run_simulation(const ScenarioConfig& config, const SimulationOptions& options);

}  // namespace slicesim

#endif
