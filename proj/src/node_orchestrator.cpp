#include "slicesim/node_orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "slicesim/errors.hpp"

namespace slicesim {

std::vector<double> project_capped_simplex(std::span<const double> v, double cap) {
  for (double value : v) {
    if (!std::isfinite(value)) throw NumericError("non-finite input to simplex projection");
  }
  if (!(cap >= 0.0) || !std::isfinite(cap)) {
    throw NumericError("projection cap must be finite and nonnegative");
  }

  if (cap == 0.0) return std::vector<double>(v.size(), 0.0);

  std::vector<double> x(v.begin(), v.end());
  double clamped_sum = 0.0;
  for (double& value : x) {
    value = std::max(value, 0.0);
    clamped_sum += value;
  }
  if (clamped_sum <= cap) return x;

  // Budget binds: find the water-filling threshold over the sorted entries.
  std::vector<double> sorted(v.begin(), v.end());
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<>());
  double prefix = 0.0;
  double threshold = 0.0;
  const int n = static_cast<int>(sorted.size());
  for (int m = 1; m <= n; ++m) {
    prefix += sorted[m - 1];
    const double candidate = (prefix - cap) / m;
    if (sorted[m - 1] - candidate > 0.0 && (m == n || sorted[m] - candidate <= 0.0)) {
      threshold = candidate;
      break;
    }
  }
  for (std::size_t idx = 0; idx < x.size(); ++idx) {
    x[idx] = std::max(v[idx] - threshold, 0.0);
  }
  return x;
}

std::vector<double> solve_node_subproblem(const NodeSubproblem& problem) {
  const int num_slices = problem.num_slices;
  const int num_kinds = problem.num_kinds;
  const std::size_t block = static_cast<std::size_t>(num_slices) * num_kinds;
  if (problem.gradients.size() != block || problem.reference.size() != block ||
      problem.capacities.size() != static_cast<std::size_t>(num_kinds)) {
    throw ValidationError("node subproblem shape mismatch");
  }
  if (!(problem.rho > 0.0)) throw ValidationError("rho must be > 0");

  std::vector<double> solution(block, 0.0);
  std::vector<double> targets(num_slices);
  for (int k = 0; k < num_kinds; ++k) {
    if (problem.capacities[k] <= 0.0) continue;  // degenerate cap: zero block
    for (int i = 0; i < num_slices; ++i) {
      const std::size_t idx = static_cast<std::size_t>(i) * num_kinds + k;
      targets[i] = problem.reference[idx] + problem.gradients[idx] / problem.rho;
    }
    const std::vector<double> projected = project_capped_simplex(targets, problem.capacities[k]);
    for (int i = 0; i < num_slices; ++i) {
      solution[static_cast<std::size_t>(i) * num_kinds + k] = projected[i];
    }
  }
  return solution;
}

}  // namespace slicesim
