#include "slicesim/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

#include "slicesim/errors.hpp"

namespace slicesim {

std::uint64_t allocation_checksum(const AllocationTensor& x) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (double value : x.flat()) {
    std::uint64_t bits;
    std::memcpy(&bits, &value, sizeof(bits));
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (bits >> (8 * byte)) & 0xffULL;
      hash *= 0x100000001b3ULL;
    }
  }
  return hash;
}

std::string run_csv_header() {
  return "slot,algorithm,total_utility,primal_residual,dual_residual,admm_iters,flagged_nodes,"
         "seed\n";
}

std::string format_csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void append_run_csv(std::string& out, const MetricsTimeline& timeline, std::uint64_t seed) {
  for (const MetricsRow& row : timeline.rows) {
    out += std::to_string(row.slot);
    out += ',';
    out += row.algorithm;
    out += ',';
    out += format_csv_number(row.total_utility);
    out += ',';
    out += format_csv_number(row.primal_residual);
    out += ',';
    out += format_csv_number(row.dual_residual);
    out += ',';
    out += std::to_string(row.admm_iterations);
    out += ',';
    for (std::size_t n = 0; n < row.flagged_nodes.size(); ++n) {
      if (n > 0) out += ';';
      out += std::to_string(row.flagged_nodes[n]);
    }
    out += ',';
    out += std::to_string(seed);
    out += '\n';
  }
}

double mean_utility(const MetricsTimeline& timeline, int first_slot, int last_slot) {
  if (timeline.rows.empty()) throw ValidationError("empty timeline");
  const int max_slot = static_cast<int>(timeline.rows.size()) - 1;
  first_slot = std::clamp(first_slot, 0, max_slot);
  last_slot = std::clamp(last_slot, first_slot, max_slot);
  double total = 0.0;
  for (int t = first_slot; t <= last_slot; ++t) total += timeline.rows[t].total_utility;
  return total / (last_slot - first_slot + 1);
}

}  // namespace slicesim
