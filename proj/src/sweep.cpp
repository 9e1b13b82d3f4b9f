#include "slicesim/sweep.hpp"

#include <algorithm>
#include <numeric>

#include "slicesim/errors.hpp"
#include "slicesim/metrics.hpp"
#include "slicesim/rng.hpp"

namespace slicesim {

namespace {

std::vector<int> choose_attacked_nodes(int num_nodes, int count, std::uint64_t seed,
                                       int attacked_count_tag) {
  std::vector<int> nodes(num_nodes);
  std::iota(nodes.begin(), nodes.end(), 0);
  Rng rng(derive_stream(seed, "sweep-nodes") + static_cast<std::uint64_t>(attacked_count_tag));
  // Partial Fisher-Yates: the first `count` entries are the chosen set.
  for (int n = 0; n < count; ++n) {
    const int pick = rng.uniform_int(n, num_nodes - 1);
    std::swap(nodes[n], nodes[pick]);
  }
  nodes.resize(count);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

double post_convergence_utility(const MetricsTimeline& timeline) {
  const int horizon = static_cast<int>(timeline.rows.size());
  const int window = std::max(1, horizon / 5);
  return mean_utility(timeline, horizon - window, horizon - 1);
}

}  // namespace

std::vector<SweepRow> run_sweep(const ScenarioConfig& config, const SweepSpec& spec) {
  validate_config(config);
  if (spec.num_seeds < 1) throw ValidationError("sweep needs at least one seed");
  for (int count : spec.attacked_counts) {
    if (count < 0 || count >= config.num_nodes) {
      throw ValidationError("attacked count must be in [0, num_nodes)");
    }
  }

  // Template event: the scenario's first attack, or onset at slot 0 with
  // full denial when the scenario ships without one.
  AttackEvent attack_template;
  if (!config.attacks.empty()) {
    attack_template = config.attacks.front();
  }
  attack_template.target_slice.reset();
  attack_template.end_slot.reset();

  std::vector<SweepRow> rows;
  for (int count : spec.attacked_counts) {
    for (int s = 0; s < spec.num_seeds; ++s) {
      const std::uint64_t seed = static_cast<std::uint64_t>(s);
      ScenarioConfig cell = config;
      cell.attacks.clear();
      for (int node : choose_attacked_nodes(config.num_nodes, count, seed, count)) {
        AttackEvent event = attack_template;
        event.target_node = node;
        cell.attacks.push_back(event);
      }

      const MetricsTimeline baseline =
          run_simulation(cell, SimulationOptions{seed, Algorithm::Baseline});
      const MetricsTimeline learning =
          run_simulation(cell, SimulationOptions{seed, Algorithm::Learning});
      const double baseline_utility = post_convergence_utility(baseline);
      const double learning_utility = post_convergence_utility(learning);
      const double denom = baseline_utility != 0.0 ? baseline_utility : 1.0;

      rows.push_back(SweepRow{count, seed, Algorithm::Baseline, baseline_utility, 1.0});
      rows.push_back(
          SweepRow{count, seed, Algorithm::Learning, learning_utility, learning_utility / denom});
    }
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "attacked_count,seed,algorithm,utility,ratio_vs_baseline\n";
  for (const SweepRow& row : rows) {
    out += std::to_string(row.attacked_count);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += algorithm_label(row.algorithm);
    out += ',';
    out += format_csv_number(row.utility);
    out += ',';
    out += format_csv_number(row.ratio_vs_baseline);
    out += '\n';
  }
  return out;
}

}  // namespace slicesim
