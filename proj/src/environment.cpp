#include "slicesim/environment.hpp"

#include <cmath>

#include "slicesim/errors.hpp"

namespace slicesim {

double attack_attenuation(std::span<const AttackEvent> schedule, int slice, int node, int slot) {
  double strongest = 0.0;
  for (const AttackEvent& event : schedule) {
    if (event.target_node != node) continue;
    if (event.target_slice && *event.target_slice != slice) continue;
    if (slot < event.start_slot) continue;
    if (event.end_slot && slot >= *event.end_slot) continue;
    strongest = std::max(strongest, event.attenuation);
  }
  return strongest;
}

std::vector<Observation> realized_utility(const GroundTruth& gt, const AllocationTensor& x,
                                          std::span<const AttackEvent> schedule, int slot,
                                          double noise_sigma, Rng& rng) {
  if (!gt.alpha.same_shape(x)) {
    throw ValidationError("allocation shape does not match the ground truth");
  }
  const int num_kinds = x.num_kinds();
  std::vector<Observation> observations;
  observations.reserve(static_cast<std::size_t>(x.num_slices()) * x.num_nodes());
  for (int i = 0; i < x.num_slices(); ++i) {
    for (int j = 0; j < x.num_nodes(); ++j) {
      Observation obs;
      obs.slot = slot;
      obs.slice = i;
      obs.node = j;
      obs.allocation.resize(num_kinds);
      double value = 0.0;
      for (int k = 0; k < num_kinds; ++k) {
        obs.allocation[k] = x.at(i, j, k);
        value += gt.alpha.at(i, j, k) * x.at(i, j, k);
      }
      value *= 1.0 - attack_attenuation(schedule, i, j, slot);
      if (noise_sigma > 0.0) value += rng.normal(0.0, noise_sigma);
      if (!std::isfinite(value)) throw NumericError("non-finite realized utility");
      obs.utility = value;
      observations.push_back(std::move(obs));
    }
  }
  return observations;
}

double total_utility(std::span<const Observation> observations) {
  if (observations.empty()) throw ValidationError("total_utility of an empty observation list");
  double total = 0.0;
  for (const Observation& obs : observations) total += obs.utility;
  return total;
}

Environment::Environment(GroundTruth gt, std::vector<AttackEvent> schedule, double noise_sigma,
                         std::uint64_t noise_seed)
    : ground_truth_(std::move(gt)),
      schedule_(std::move(schedule)),
      noise_sigma_(noise_sigma),
      noise_rng_(noise_seed) {}

std::vector<Observation> Environment::observe(const AllocationTensor& x, int slot) {
  if (slot < last_slot_) throw ValidationError("environment slots must be nondecreasing");
  last_slot_ = slot;
  return realized_utility(ground_truth_, x, schedule_, slot, noise_sigma_, noise_rng_);
}

}  // namespace slicesim
