#ifndef SLICESIM_HYPERVISOR_HPP
#define SLICESIM_HYPERVISOR_HPP

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

namespace slicesim {

// Simulation models of the prototype's two virtual-to-physical mappers: the
// greedy best-channel PRB mapper for radio and the token-based FIFO kernel
// scheduler for compute.

struct UserRadioState {
  int user_id = 0;
  int entitlement = 0;                  // PRBs this user's virtual bandwidth buys
  std::vector<double> channel_quality;  // per PRB, length = grid size
};

struct PrbGrid {
  struct Slot {
    int user_id = -1;  // -1 = unassigned
    double rate = 0.0;
  };
  std::vector<Slot> prbs;
};

/// Scans PRBs in ascending index; each goes to the best-channel user that
/// still has entitlement left (ties to the lowest user id).
PrbGrid map_prbs(std::span<const UserRadioState> users, int num_prbs);

struct TokenAccount {
  int user_id = 0;
  double tokens = 0.0;
  double share = 0.0;  // fraction of the per-tick budget
  double cap = 0.0;
};

/// Credits share * budget_per_tick to every account, clipped at its cap.
void refill_tokens(std::vector<TokenAccount>& accounts, double budget_per_tick);

struct KernelRequest {
  int user_id = 0;
  double cost = 0.0;         // tokens
  std::uint64_t sequence = 0;  // arrival order
};

/// One scheduling pass: users are visited round-robin starting at
/// scan_start; each user's queue head is dispatched while affordable. A head
/// the user cannot afford blocks everything behind it.
std::vector<KernelRequest> schedule_kernels(std::vector<std::deque<KernelRequest>>& queues,
                                            std::vector<TokenAccount>& accounts, int scan_start);

}  // namespace slicesim

#endif
