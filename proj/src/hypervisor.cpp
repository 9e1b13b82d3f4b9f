#include "slicesim/hypervisor.hpp"

#include <algorithm>

#include "slicesim/errors.hpp"

namespace slicesim {

PrbGrid map_prbs(std::span<const UserRadioState> users, int num_prbs) {
  for (const UserRadioState& user : users) {
    if (static_cast<int>(user.channel_quality.size()) != num_prbs) {
      throw ValidationError("channel quality vector length must equal the PRB count");
    }
    if (user.entitlement < 0) throw ValidationError("entitlement must be nonnegative");
    for (double quality : user.channel_quality) {
      if (!(quality >= 0.0)) throw ValidationError("channel quality must be nonnegative");
    }
  }

  PrbGrid grid;
  grid.prbs.resize(num_prbs);
  std::vector<int> remaining(users.size());
  for (std::size_t u = 0; u < users.size(); ++u) remaining[u] = users[u].entitlement;

  for (int prb = 0; prb < num_prbs; ++prb) {
    int best = -1;
    for (std::size_t u = 0; u < users.size(); ++u) {
      if (remaining[u] <= 0) continue;
      if (best < 0 || users[u].channel_quality[prb] > users[best].channel_quality[prb] ||
          (users[u].channel_quality[prb] == users[best].channel_quality[prb] &&
           users[u].user_id < users[best].user_id)) {
        best = static_cast<int>(u);
      }
    }
    if (best < 0) continue;  // nobody left with entitlement
    grid.prbs[prb].user_id = users[best].user_id;
    grid.prbs[prb].rate = users[best].channel_quality[prb];
    --remaining[best];
  }
  return grid;
}

void refill_tokens(std::vector<TokenAccount>& accounts, double budget_per_tick) {
  for (TokenAccount& account : accounts) {
    account.tokens = std::min(account.tokens + account.share * budget_per_tick, account.cap);
  }
}

std::vector<KernelRequest> schedule_kernels(std::vector<std::deque<KernelRequest>>& queues,
                                            std::vector<TokenAccount>& accounts, int scan_start) {
  if (queues.size() != accounts.size()) {
    throw ValidationError("one kernel queue per token account is required");
  }
  std::vector<KernelRequest> dispatched;
  const int n = static_cast<int>(queues.size());
  if (n == 0) return dispatched;

  for (int step = 0; step < n; ++step) {
    const int u = (scan_start + step) % n;
    std::deque<KernelRequest>& queue = queues[u];
    TokenAccount& account = accounts[u];
    while (!queue.empty() && queue.front().cost <= account.tokens) {
      if (queue.front().cost <= 0.0) throw ValidationError("kernel cost must be > 0");
      account.tokens -= queue.front().cost;
      dispatched.push_back(queue.front());
      queue.pop_front();
    }
  }
  return dispatched;
}

}  // namespace slicesim
