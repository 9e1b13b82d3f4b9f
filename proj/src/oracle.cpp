#include "slicesim/oracle.hpp"

#include <cmath>
#include <limits>

#include "slicesim/environment.hpp"
#include "slicesim/errors.hpp"

namespace slicesim {

namespace {

constexpr double kIntegralTol = 1e-9;
constexpr double kProfitTol = 1e-12;

long long as_integral(double v, const char* what) {
  const double rounded = std::round(v);
  if (std::abs(v - rounded) > kIntegralTol) {
    throw ValidationError(std::string(what) + " must be integral for the oracle");
  }
  return static_cast<long long>(rounded);
}

struct FlowEdge {
  int to;
  long long capacity;
  double cost;  // negative profit
  int reverse_index;
};

class MaxProfitFlow {
 public:
  explicit MaxProfitFlow(int num_vertices) : graph_(num_vertices) {}

  void add_edge(int from, int to, long long capacity, double cost) {
    graph_[from].push_back({to, capacity, cost, static_cast<int>(graph_[to].size())});
    graph_[to].push_back({from, 0, -cost, static_cast<int>(graph_[from].size()) - 1});
  }

  /// Augments along the most profitable path until no path has positive
  /// profit. Returns total profit.
  double run(int source, int sink) {
    double profit = 0.0;
    while (true) {
      const auto [distance, found] = bellman_ford(source, sink);
      if (!found || distance >= -kProfitTol) break;

      long long bottleneck = std::numeric_limits<long long>::max();
      for (int v = sink; v != source; v = parent_vertex_[v]) {
        bottleneck = std::min(bottleneck,
                              graph_[parent_vertex_[v]][parent_edge_[v]].capacity);
      }
      for (int v = sink; v != source; v = parent_vertex_[v]) {
        FlowEdge& edge = graph_[parent_vertex_[v]][parent_edge_[v]];
        edge.capacity -= bottleneck;
        graph_[edge.to][edge.reverse_index].capacity += bottleneck;
      }
      profit += -distance * static_cast<double>(bottleneck);
    }
    return profit;
  }

  long long flow_on(int from, int edge_index) const {
    const FlowEdge& edge = graph_[from][edge_index];
    return graph_[edge.to][edge.reverse_index].capacity;
  }

  int edge_count(int from) const { return static_cast<int>(graph_[from].size()); }

 private:
  std::pair<double, bool> bellman_ford(int source, int sink) {
    const int n = static_cast<int>(graph_.size());
    std::vector<double> distance(n, std::numeric_limits<double>::infinity());
    parent_vertex_.assign(n, -1);
    parent_edge_.assign(n, -1);
    distance[source] = 0.0;
    // Residual graphs of shortest-path augmentation carry no negative
    // cycles, so n passes suffice; the extra pass is a divergence guard.
    for (int pass = 0; pass < n; ++pass) {
      bool changed = false;
      for (int v = 0; v < n; ++v) {
        if (!std::isfinite(distance[v])) continue;
        for (int e = 0; e < static_cast<int>(graph_[v].size()); ++e) {
          const FlowEdge& edge = graph_[v][e];
          if (edge.capacity <= 0) continue;
          const double candidate = distance[v] + edge.cost;
          if (candidate < distance[edge.to] - 1e-15) {
            distance[edge.to] = candidate;
            parent_vertex_[edge.to] = v;
            parent_edge_[edge.to] = e;
            changed = true;
          }
        }
      }
      if (!changed) break;
      if (pass == n - 1) throw NumericError("negative cycle in oracle flow graph");
    }
    return {distance[sink], std::isfinite(distance[sink])};
  }

  std::vector<std::vector<FlowEdge>> graph_;
  std::vector<int> parent_vertex_;
  std::vector<int> parent_edge_;
};

}  // namespace

OracleSolution solve_optimal(const GroundTruth& gt, const ScenarioConfig& config,
                             bool attacked_regime) {
  const int num_slices = config.num_slices;
  const int num_nodes = config.num_nodes;
  const int num_kinds = config.num_kinds();
  if (gt.alpha.num_slices() != num_slices || gt.alpha.num_nodes() != num_nodes ||
      gt.alpha.num_kinds() != num_kinds) {
    throw ValidationError("ground truth shape does not match the scenario");
  }

  Tensor3 weights = gt.alpha;
  if (attacked_regime) {
    const int final_slot = config.horizon - 1;
    for (int i = 0; i < num_slices; ++i) {
      for (int j = 0; j < num_nodes; ++j) {
        const double keep = 1.0 - attack_attenuation(config.attacks, i, j, final_slot);
        for (int k = 0; k < num_kinds; ++k) weights.at(i, j, k) *= keep;
      }
    }
  }

  OracleSolution solution;
  solution.allocation = AllocationTensor(num_slices, num_nodes, num_kinds);
  solution.per_kind_value.assign(num_kinds, 0.0);

  // Vertices: 0 = source, 1..I = slices, I+1..I+J = nodes, I+J+1 = sink.
  const int source = 0;
  const int sink = num_slices + num_nodes + 1;
  for (int k = 0; k < num_kinds; ++k) {
    MaxProfitFlow flow(sink + 1);
    std::vector<std::vector<int>> transport_edge(num_slices, std::vector<int>(num_nodes, -1));
    for (int i = 0; i < num_slices; ++i) {
      const long long budget = as_integral(config.budget(i, k), "sla_budget");
      flow.add_edge(source, 1 + i, budget, 0.0);
    }
    for (int j = 0; j < num_nodes; ++j) {
      const long long capacity = as_integral(config.capacity(j, k), "node_capacity");
      flow.add_edge(1 + num_slices + j, sink, capacity, 0.0);
      for (int i = 0; i < num_slices; ++i) {
        const long long cap = std::min(as_integral(config.budget(i, k), "sla_budget"),
                                       as_integral(config.capacity(j, k), "node_capacity"));
        transport_edge[i][j] = flow.edge_count(1 + i);
        flow.add_edge(1 + i, 1 + num_slices + j, cap, -weights.at(i, j, k));
      }
    }

    solution.per_kind_value[k] = flow.run(source, sink);
    solution.value += solution.per_kind_value[k];
    for (int i = 0; i < num_slices; ++i) {
      for (int j = 0; j < num_nodes; ++j) {
        solution.allocation.at(i, j, k) =
            static_cast<double>(flow.flow_on(1 + i, transport_edge[i][j]));
      }
    }
  }
  return solution;
}

double optimality_gap(const AllocationTensor& x, const GroundTruth& gt,
                      const ScenarioConfig& config) {
  const FeasibilityReport report = validate_allocation(x, config);
  if (!report.feasible) throw ValidationError("optimality_gap requires a feasible allocation");

  double value = 0.0;
  auto xf = x.flat();
  auto af = gt.alpha.flat();
  for (std::size_t n = 0; n < xf.size(); ++n) value += af[n] * xf[n];

  const double optimum = solve_optimal(gt, config).value;
  if (optimum <= kProfitTol) return 1.0;  // nothing attainable; any feasible x is optimal
  return value / optimum;
}

}  // namespace slicesim
