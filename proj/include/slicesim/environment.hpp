#ifndef SLICESIM_ENVIRONMENT_HPP
#define SLICESIM_ENVIRONMENT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "slicesim/rng.hpp"
#include "slicesim/scenario.hpp"
#include "slicesim/tensor.hpp"

namespace slicesim {

/// What the orchestrator gets to see for one (slice, node) in one slot.
struct Observation {
  int slot = 0;
  int slice = 0;
  int node = 0;
  std::vector<double> allocation;  // length num_kinds
  double utility = 0.0;
};

/// Strongest attenuation among events active at (slice, node, slot);
/// zero when none is active.
double attack_attenuation(std::span<const AttackEvent> schedule, int slice, int node, int slot);

/// r_{i,j} = (1 - attenuation) * sum_k alpha_{i,j,k} x_{i,j,k} + noise.
std::vector<Observation> realized_utility(const GroundTruth& gt, const AllocationTensor& x,
                                          std::span<const AttackEvent> schedule, int slot,
                                          double noise_sigma, Rng& rng);

/// Sum over all observations; rejects an empty list.
double total_utility(std::span<const Observation> observations);

/// Owns the per-run hidden state: ground truth, the attack schedule, and the
/// observation-noise stream. The only place a simulation reads GroundTruth.
class Environment {
 public:
  Environment(GroundTruth gt, std::vector<AttackEvent> schedule, double noise_sigma,
              std::uint64_t noise_seed);

  /// Deploys `x` for slot `t` and returns what each (slice, node) realized.
  /// Slots must be observed in nondecreasing order.
  std::vector<Observation> observe(const AllocationTensor& x, int slot);

  const GroundTruth& ground_truth() const { return ground_truth_; }

 private:
  GroundTruth ground_truth_;
  std::vector<AttackEvent> schedule_;
  double noise_sigma_;
  Rng noise_rng_;
  int last_slot_ = -1;
};

}  // namespace slicesim

#endif
