#ifndef SLICESIM_METRICS_HPP
#define SLICESIM_METRICS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slicesim/tensor.hpp"

namespace slicesim {

/// One slot of one algorithm's run.
struct MetricsRow {
  int slot = 0;
  std::string algorithm;
  double total_utility = 0.0;
  std::vector<double> per_slice_utility;
  int admm_iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::vector<int> flagged_nodes;
  std::vector<std::pair<int, int>> flagged_pairs;  // (slice, node)
  std::uint64_t allocation_checksum = 0;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

struct MetricsTimeline {
  std::vector<MetricsRow> rows;
  std::vector<AllocationTensor> deployed;  // parallel to rows
  bool all_feasible = true;

  friend bool operator==(const MetricsTimeline&, const MetricsTimeline&) = default;
};

/// FNV-1a over the tensor's raw double bytes.
std::uint64_t allocation_checksum(const AllocationTensor& x);

/// Header for the run CSV:
/// slot,algorithm,total_utility,primal_residual,dual_residual,admm_iters,flagged_nodes,seed
std::string run_csv_header();

/// Appends one line per row; flagged nodes are semicolon-joined inside the
/// field so the CSV stays comma-safe.
void append_run_csv(std::string& out, const MetricsTimeline& timeline, std::uint64_t seed);

/// Mean total utility over slots [first, last], both clamped to the run.
double mean_utility(const MetricsTimeline& timeline, int first_slot, int last_slot);

/// Deterministic compact formatting used for every CSV number.
std::string format_csv_number(double v);

}  // namespace slicesim

#endif
