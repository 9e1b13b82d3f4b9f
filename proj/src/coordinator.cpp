#include "slicesim/coordinator.hpp"

#include <cmath>
#include <vector>

#include "slicesim/errors.hpp"
#include "slicesim/node_orchestrator.hpp"

namespace slicesim {

Tensor3 update_auxiliary(const Tensor3& x, const Tensor3& u, const ScenarioConfig& config) {
  if (!x.same_shape(u)) throw ValidationError("X and U shapes differ");
  Tensor3 z(x.num_slices(), x.num_nodes(), x.num_kinds());
  std::vector<double> row(x.num_nodes());
  for (int i = 0; i < x.num_slices(); ++i) {
    for (int k = 0; k < x.num_kinds(); ++k) {
      for (int j = 0; j < x.num_nodes(); ++j) row[j] = x.at(i, j, k) + u.at(i, j, k);
      const std::vector<double> projected = project_capped_simplex(row, config.budget(i, k));
      for (int j = 0; j < x.num_nodes(); ++j) z.at(i, j, k) = projected[j];
    }
  }
  return z;
}

void update_duals(Tensor3& u, const Tensor3& x, const Tensor3& z) {
  if (!u.same_shape(x) || !u.same_shape(z)) throw ValidationError("dual update shape mismatch");
  auto uf = u.flat();
  auto xf = x.flat();
  auto zf = z.flat();
  for (std::size_t n = 0; n < uf.size(); ++n) uf[n] += xf[n] - zf[n];
}

std::pair<double, double> residuals(const Tensor3& x, const Tensor3& z, const Tensor3& z_prev,
                                    double rho) {
  if (!x.same_shape(z) || !x.same_shape(z_prev)) {
    throw ValidationError("residual shape mismatch");
  }
  double primal_sq = 0.0;
  double dual_sq = 0.0;
  auto xf = x.flat();
  auto zf = z.flat();
  auto pf = z_prev.flat();
  for (std::size_t n = 0; n < xf.size(); ++n) {
    const double gap = xf[n] - zf[n];
    const double step = zf[n] - pf[n];
    primal_sq += gap * gap;
    dual_sq += step * step;
  }
  return {std::sqrt(primal_sq), rho * std::sqrt(dual_sq)};
}

AdmmState run_admm(const Tensor3& gradients, const ScenarioConfig& config,
                   const std::optional<AdmmState>& warm_start) {
  const int num_slices = config.num_slices;
  const int num_nodes = config.num_nodes;
  const int num_kinds = config.num_kinds();
  if (gradients.num_slices() != num_slices || gradients.num_nodes() != num_nodes ||
      gradients.num_kinds() != num_kinds) {
    throw ValidationError("gradient shape does not match the scenario");
  }
  for (double g : gradients.flat()) {
    if (!std::isfinite(g)) throw NumericError("non-finite gradient");
  }

  AdmmState state;
  if (warm_start) {
    state = *warm_start;
  } else {
    state.z = baseline_allocation(config);
    state.u = Tensor3(num_slices, num_nodes, num_kinds);
  }
  state.x = Tensor3(num_slices, num_nodes, num_kinds);
  state.iterations = 0;

  NodeSubproblem problem;
  problem.num_slices = num_slices;
  problem.num_kinds = num_kinds;
  problem.rho = config.admm.rho;
  problem.gradients.resize(static_cast<std::size_t>(num_slices) * num_kinds);
  problem.reference.resize(problem.gradients.size());
  problem.capacities.resize(num_kinds);

  while (state.iterations < config.admm.max_iters) {
    ++state.iterations;

    // x-update: each node solves its subproblem against v = Z - U.
    for (int j = 0; j < num_nodes; ++j) {
      problem.node = j;
      for (int k = 0; k < num_kinds; ++k) problem.capacities[k] = config.capacity(j, k);
      for (int i = 0; i < num_slices; ++i) {
        for (int k = 0; k < num_kinds; ++k) {
          const std::size_t idx = static_cast<std::size_t>(i) * num_kinds + k;
          problem.gradients[idx] = gradients.at(i, j, k);
          problem.reference[idx] = state.z.at(i, j, k) - state.u.at(i, j, k);
        }
      }
      const std::vector<double> block = solve_node_subproblem(problem);
      for (int i = 0; i < num_slices; ++i) {
        for (int k = 0; k < num_kinds; ++k) {
          state.x.at(i, j, k) = block[static_cast<std::size_t>(i) * num_kinds + k];
        }
      }
    }

    const Tensor3 z_prev = state.z;
    state.z = update_auxiliary(state.x, state.u, config);
    update_duals(state.u, state.x, state.z);

    const auto [primal, dual] = residuals(state.x, state.z, z_prev, config.admm.rho);
    if (!std::isfinite(primal) || !std::isfinite(dual)) {
      throw NumericError("ADMM diverged: non-finite residuals");
    }
    state.primal_residual = primal;
    state.dual_residual = dual;
    if (primal <= config.admm.eps_primal && dual <= config.admm.eps_dual) break;
  }
  return state;
}

Tensor3 enforce_feasibility(Tensor3 x, const ScenarioConfig& config) {
  if (x.num_slices() != config.num_slices || x.num_nodes() != config.num_nodes ||
      x.num_kinds() != config.num_kinds()) {
    throw ValidationError("allocation shape does not match the scenario");
  }
  for (double& v : x.flat()) v = std::max(v, 0.0);

  for (int j = 0; j < x.num_nodes(); ++j) {
    for (int k = 0; k < x.num_kinds(); ++k) {
      const double total = x.node_sum(j, k);
      const double cap = config.capacity(j, k);
      if (total > cap) {
        const double scale = cap > 0.0 ? cap / total : 0.0;
        for (int i = 0; i < x.num_slices(); ++i) x.at(i, j, k) *= scale;
      }
    }
  }
  for (int i = 0; i < x.num_slices(); ++i) {
    for (int k = 0; k < x.num_kinds(); ++k) {
      const double total = x.slice_sum(i, k);
      const double budget = config.budget(i, k);
      if (total > budget) {
        const double scale = budget > 0.0 ? budget / total : 0.0;
        for (int j = 0; j < x.num_nodes(); ++j) x.at(i, j, k) *= scale;
      }
    }
  }
  return x;
}

}  // namespace slicesim
