#ifndef SLICESIM_ORACLE_HPP
#define SLICESIM_ORACLE_HPP

#include <vector>

#include "slicesim/scenario.hpp"
#include "slicesim/tensor.hpp"

namespace slicesim {

struct OracleSolution {
  AllocationTensor allocation;
  double value = 0.0;
  std::vector<double> per_kind_value;
};

/// Exact ground-truth optimum of sum alpha * x under node capacities and SLA
/// budgets. Each kind is an independent transportation LP on the bipartite
/// slice-node graph, solved by max-profit integral flow (successive
/// most-profitable augmenting paths); integral capacities make the flow
/// optimum equal the LP optimum. Requires integral capacities and budgets.
///
/// With attacked_regime set, alpha entries are scaled by one minus the
/// attack attenuation active at the final slot, giving the post-attack
/// steady-state reference.
OracleSolution solve_optimal(const GroundTruth& gt, const ScenarioConfig& config,
                             bool attacked_regime = false);

/// (sum alpha * x) / oracle value for a feasible x; at most 1 + 1e-9.
double optimality_gap(const AllocationTensor& x, const GroundTruth& gt,
                      const ScenarioConfig& config);

}  // namespace slicesim

#endif
