#ifndef SLICESIM_SWEEP_HPP
#define SLICESIM_SWEEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "slicesim/scenario.hpp"
#include "slicesim/simulation.hpp"

namespace slicesim {

struct SweepSpec {
  std::vector<int> attacked_counts;
  int num_seeds = 1;
};

struct SweepRow {
  int attacked_count = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::Learning;
  double utility = 0.0;  // post-convergence mean (last fifth of the horizon)
  double ratio_vs_baseline = 0.0;
};

/// For each (attacked count, seed) cell: picks that many distinct nodes with
/// a seeded shuffle, replaces the scenario's attack schedule with one event
/// per chosen node (start slot and attenuation are taken from the scenario's
/// first attack, or slot 0 / full denial when it has none), and runs both
/// algorithms. Rows come out sorted by (count, seed, algorithm).
std::vector<SweepRow> run_sweep(const ScenarioConfig& config, const SweepSpec& spec);

/// Full CSV including the header:
/// attacked_count,seed,algorithm,utility,ratio_vs_baseline
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace slicesim

#endif
