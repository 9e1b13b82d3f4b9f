#include "slicesim/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "slicesim/coordinator.hpp"
#include "slicesim/errors.hpp"

namespace slicesim {

EstimatorState::EstimatorState(int num_slices, int num_nodes, int num_kinds, double prior_mean,
                               double prior_covariance_scale, int history_capacity)
    : num_slices_(num_slices),
      num_nodes_(num_nodes),
      num_kinds_(num_kinds),
      history_capacity_(history_capacity) {
  pairs_.resize(static_cast<std::size_t>(num_slices) * num_nodes);
  for (PairEstimate& pair : pairs_) {
    pair.alpha_hat = Eigen::VectorXd::Constant(num_kinds, prior_mean);
    pair.covariance =
        Eigen::MatrixXd::Identity(num_kinds, num_kinds) * prior_covariance_scale;
  }
}

PairEstimate& EstimatorState::pair(int i, int j) {
  if (i < 0 || i >= num_slices_ || j < 0 || j >= num_nodes_) {
    throw ValidationError("estimator pair index out of range");
  }
  return pairs_[static_cast<std::size_t>(i) * num_nodes_ + j];
}

const PairEstimate& EstimatorState::pair(int i, int j) const {
  return const_cast<EstimatorState*>(this)->pair(i, j);
}

EstimatorState init_estimator(const ScenarioConfig& config) {
  // Window + slack: detection needs the newest entry plus `window` older ones.
  const int capacity = config.detection.window + 4;
  return EstimatorState(config.num_slices, config.num_nodes, config.num_kinds(),
                        config.learning.prior_mean, config.learning.prior_covariance_scale,
                        capacity);
}

void update(EstimatorState& state, const Observation& obs, double forgetting) {
  if (!(forgetting > 0.0 && forgetting <= 1.0)) {
    throw ValidationError("forgetting must be in (0, 1]");
  }
  if (static_cast<int>(obs.allocation.size()) != state.num_kinds()) {
    throw ValidationError("observation allocation length does not match num_kinds");
  }
  if (!std::isfinite(obs.utility)) throw ValidationError("non-finite observation utility");
  for (double v : obs.allocation) {
    if (!std::isfinite(v)) throw ValidationError("non-finite observation allocation");
  }

  double total_allocation = 0.0;
  for (double v : obs.allocation) total_allocation += v;
  if (total_allocation <= kNumericEps) return;  // zero regressor: nothing to learn

  PairEstimate& pair = state.pair(obs.slice, obs.node);
  Eigen::Map<const Eigen::VectorXd> x(obs.allocation.data(), state.num_kinds());

  const Eigen::VectorXd px = pair.covariance * x;
  const double denom = forgetting + x.dot(px);
  const Eigen::VectorXd gain = px / denom;
  const double innovation = obs.utility - pair.alpha_hat.dot(x);
  pair.alpha_hat += gain * innovation;
  pair.covariance = (pair.covariance - gain * px.transpose()) / forgetting;
  // The update form keeps P symmetric in exact arithmetic; re-symmetrize to
  // stop rounding drift from accumulating over long runs.
  pair.covariance = ((pair.covariance + pair.covariance.transpose()) * 0.5).eval();
  // Directions the regressors never excite inflate P by 1/forgetting per
  // update; bound the trace so very long runs cannot overflow.
  constexpr double trace_cap = 1e12;
  const double trace = pair.covariance.trace();
  if (trace > trace_cap) pair.covariance *= trace_cap / trace;

  pair.efficiency.push_back(obs.utility / std::max(total_allocation, kNumericEps));
  while (static_cast<int>(pair.efficiency.size()) > state.history_capacity()) {
    pair.efficiency.pop_front();
  }
}

Eigen::VectorXd gradient(const EstimatorState& state, int slice, int node) {
  return state.pair(slice, node).alpha_hat;
}

Tensor3 gradient_tensor(const EstimatorState& state) {
  Tensor3 g(state.num_slices(), state.num_nodes(), state.num_kinds());
  for (int i = 0; i < state.num_slices(); ++i) {
    for (int j = 0; j < state.num_nodes(); ++j) {
      const Eigen::VectorXd& alpha_hat = state.pair(i, j).alpha_hat;
      for (int k = 0; k < state.num_kinds(); ++k) g.at(i, j, k) = alpha_hat[k];
    }
  }
  return g;
}

namespace {

double median_of(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double upper = values[mid];
  if (values.size() % 2 == 0) {
    double lower = *std::max_element(values.begin(), values.begin() + mid);
    return 0.5 * (lower + upper);
  }
  return upper;
}

}  // namespace

DetectionReport detect_attacks(EstimatorState& state, double threshold, int window) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw ValidationError("threshold must be in (0, 1)");
  if (window < 1) throw ValidationError("window must be >= 1");

  DetectionReport report;
  for (int j = 0; j < state.num_nodes(); ++j) {
    int with_history = 0;
    int flagged_on_node = 0;
    for (int i = 0; i < state.num_slices(); ++i) {
      PairEstimate& pair = state.pair(i, j);
      bool flagged = false;
      if (static_cast<int>(pair.efficiency.size()) >= window + 1) {
        const double newest = pair.efficiency.back();
        std::vector<double> previous(pair.efficiency.end() - 1 - window,
                                     pair.efficiency.end() - 1);
        flagged = newest < threshold * median_of(std::move(previous));
      }
      pair.flagged = flagged;
      if (!pair.efficiency.empty()) ++with_history;
      if (flagged) {
        ++flagged_on_node;
        report.flagged_pairs.emplace_back(i, j);
      }
    }
    if (with_history > 0 && flagged_on_node == with_history) report.flagged_nodes.push_back(j);
  }
  return report;
}

AllocationTensor exploration_dither(const AllocationTensor& x, double magnitude,
                                    const ScenarioConfig& config, Rng& rng) {
  if (magnitude == 0.0) return x;
  AllocationTensor perturbed = x;
  for (double& value : perturbed.flat()) value += rng.uniform(-magnitude, magnitude);
  return enforce_feasibility(std::move(perturbed), config);
}

}  // namespace slicesim
