#ifndef SLICESIM_COORDINATOR_HPP
#define SLICESIM_COORDINATOR_HPP

#include <optional>
#include <utility>

#include "slicesim/scenario.hpp"
#include "slicesim/tensor.hpp"

namespace slicesim {

/// Scaled-form consensus ADMM state. X carries the node-feasible allocation
/// reports, Z the SLA-feasible consensus copy, U the scaled duals.
struct AdmmState {
  Tensor3 x;
  Tensor3 z;
  Tensor3 u;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

/// z-update: per (slice, kind), project X + U over the node axis onto the
/// SLA budget simplex. The result satisfies every budget exactly.
Tensor3 update_auxiliary(const Tensor3& x, const Tensor3& u, const ScenarioConfig& config);

/// Scaled dual ascent: U += X - Z, elementwise.
void update_duals(Tensor3& u, const Tensor3& x, const Tensor3& z);

/// (primal, dual) = (||X - Z||_2, rho * ||Z - Z_prev||_2) over all entries.
std::pair<double, double> residuals(const Tensor3& x, const Tensor3& z, const Tensor3& z_prev,
                                    double rho);

/// Full consensus solve for the given gradients: per-node x-updates, the
/// z projection, dual ascent, until both residuals fall below the config
/// tolerances or max_iters is reached. Cold starts begin at the baseline
/// allocation.
AdmmState run_admm(const Tensor3& gradients, const ScenarioConfig& config,
                   const std::optional<AdmmState>& warm_start = std::nullopt);

/// Deployable repair: clamp negatives, scale overfull node columns down to
/// capacity, then scale overfull slice rows down to budget. The row pass
/// only shrinks entries, so the node pass stays satisfied.
Tensor3 enforce_feasibility(Tensor3 x, const ScenarioConfig& config);

}  // namespace slicesim

#endif
