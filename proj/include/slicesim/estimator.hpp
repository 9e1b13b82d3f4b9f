#ifndef SLICESIM_ESTIMATOR_HPP
#define SLICESIM_ESTIMATOR_HPP

#include <Eigen/Dense>
#include <deque>
#include <utility>
#include <vector>

#include "slicesim/environment.hpp"
#include "slicesim/rng.hpp"
#include "slicesim/scenario.hpp"
#include "slicesim/tensor.hpp"

namespace slicesim {

/// Recursive-least-squares state for one (slice, node) pair. alpha_hat is
/// the learned marginal-utility vector; its inner product with an allocation
/// predicts the pair's realized utility.
struct PairEstimate {
  Eigen::VectorXd alpha_hat;
  Eigen::MatrixXd covariance;
  std::deque<double> efficiency;  // newest at the back, bounded length
  bool flagged = false;
};

class EstimatorState {
 public:
  EstimatorState() = default;
  EstimatorState(int num_slices, int num_nodes, int num_kinds, double prior_mean,
                 double prior_covariance_scale, int history_capacity);

  int num_slices() const { return num_slices_; }
  int num_nodes() const { return num_nodes_; }
  int num_kinds() const { return num_kinds_; }
  int history_capacity() const { return history_capacity_; }

  PairEstimate& pair(int i, int j);
  const PairEstimate& pair(int i, int j) const;

 private:
  int num_slices_ = 0;
  int num_nodes_ = 0;
  int num_kinds_ = 0;
  int history_capacity_ = 0;
  std::vector<PairEstimate> pairs_;
};

struct DetectionReport {
  std::vector<std::pair<int, int>> flagged_pairs;  // (slice, node), ordered
  std::vector<int> flagged_nodes;
};

/// Prior mean for every alpha_hat entry, prior_covariance_scale * identity
/// for every covariance, empty histories.
EstimatorState init_estimator(const ScenarioConfig& config);

/// One RLS step with forgetting factor `forgetting` on the pair named by the
/// observation. A zero allocation leaves the pair untouched. Utilization
/// efficiency r / sum(x) is appended to the pair's history.
void update(EstimatorState& state, const Observation& obs, double forgetting);

/// Current learned marginal-utility vector for (i, j).
Eigen::VectorXd gradient(const EstimatorState& state, int slice, int node);

/// All gradients as an I*J*K tensor (the coordinator's input).
Tensor3 gradient_tensor(const EstimatorState& state);

/// Flags a pair when its newest efficiency drops below threshold times the
/// median of the preceding `window` entries; needs `window` prior entries.
/// A node is flagged when every slice with history on it is flagged.
/// Stores the per-pair flags in the state as well.
DetectionReport detect_attacks(EstimatorState& state, double threshold, int window);

/// Zero-mean uniform perturbation of every entry, then a feasibility pass.
/// Keeps the linear model identifiable when the deployed allocation would
/// otherwise sit still.
AllocationTensor exploration_dither(const AllocationTensor& x, double magnitude,
                                    const ScenarioConfig& config, Rng& rng);

}  // namespace slicesim

#endif
