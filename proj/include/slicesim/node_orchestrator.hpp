#ifndef SLICESIM_NODE_ORCHESTRATOR_HPP
#define SLICESIM_NODE_ORCHESTRATOR_HPP

#include <span>
#include <vector>

namespace slicesim {

/// Euclidean projection onto {x >= 0, sum(x) <= cap}.
///
/// Clamps negatives first; when the clamped point already fits under the cap
/// it is returned unchanged, otherwise the water-filling threshold t* with
/// x_i = max(v_i - t*, 0) and sum(x) = cap is found by sorting (stable, so
/// ties resolve by index).
std::vector<double> project_capped_simplex(std::span<const double> v, double cap);

/// One node's ADMM subproblem: maximize g'x - (rho/2) ||x - v||^2 subject to
/// the node's per-kind capacities and x >= 0. The kinds never couple, so the
/// exact solution is the per-kind projection of v + g / rho.
struct NodeSubproblem {
  int node = 0;
  int num_slices = 0;
  int num_kinds = 0;
  std::vector<double> gradients;   // I*K row-major, kind fastest
  std::vector<double> reference;   // I*K, v = z - u for this node
  double rho = 1.0;
  std::vector<double> capacities;  // length K
};

/// Returns the node's I*K allocation block (same layout as the inputs).
std::vector<double> solve_node_subproblem(const NodeSubproblem& problem);

}  // namespace slicesim

#endif
