#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "slicesim/errors.hpp"
#include "slicesim/hypervisor.hpp"

using namespace slicesim;

namespace {

struct RadioInstance {
  std::vector<UserRadioState> users;
  int num_prbs = 0;
};

RadioInstance random_radio_instance(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> user_count(1, 6);
  std::uniform_int_distribution<int> prb_count(1, 12);
  std::uniform_int_distribution<int> entitlement(0, 4);
  std::uniform_real_distribution<double> quality(0.0, 1.0);
  RadioInstance instance;
  instance.num_prbs = prb_count(gen);
  const int n = user_count(gen);
  for (int u = 0; u < n; ++u) {
    UserRadioState user;
    user.user_id = u;
    user.entitlement = entitlement(gen);
    user.channel_quality.resize(instance.num_prbs);
    for (double& q : user.channel_quality) q = quality(gen);
    instance.users.push_back(std::move(user));
  }
  return instance;
}

}  // namespace

TEST_CASE("PRB mapping reference cases") {
  SUBCASE("two users, one PRB each, both get their best slot") {
    std::vector<UserRadioState> users = {
        {1, 1, {0.9, 0.2}},
        {2, 1, {0.8, 0.7}},
    };
    const PrbGrid grid = map_prbs(users, 2);
    CHECK(grid.prbs[0].user_id == 1);
    CHECK(grid.prbs[0].rate == doctest::Approx(0.9));
    CHECK(grid.prbs[1].user_id == 2);
    CHECK(grid.prbs[1].rate == doctest::Approx(0.7));

    // Exhaustive check over all entitlement-respecting assignments: the
    // greedy result is also the throughput maximizer here.
    double best = 0.0;
    for (int a = -1; a < 2; ++a) {
      for (int b = -1; b < 2; ++b) {
        if (a >= 0 && a == b) continue;
        double total = 0.0;
        if (a >= 0) total += users[a].channel_quality[0];
        if (b >= 0) total += users[b].channel_quality[1];
        best = std::max(best, total);
      }
    }
    CHECK(grid.prbs[0].rate + grid.prbs[1].rate == doctest::Approx(best));
  }
  SUBCASE("single user takes everything its entitlement allows") {
    std::vector<UserRadioState> users = {{7, 2, {0.5, 0.6}}};
    const PrbGrid grid = map_prbs(users, 2);
    CHECK(grid.prbs[0].user_id == 7);
    CHECK(grid.prbs[1].user_id == 7);
  }
  SUBCASE("zero entitlements leave the grid empty") {
    std::vector<UserRadioState> users = {{0, 0, {0.5}}, {1, 0, {0.9}}};
    const PrbGrid grid = map_prbs(users, 1);
    CHECK(grid.prbs[0].user_id == -1);
  }
  SUBCASE("ties go to the lowest user id") {
    std::vector<UserRadioState> users = {{3, 1, {0.5}}, {1, 1, {0.5}}};
    const PrbGrid grid = map_prbs(users, 1);
    CHECK(grid.prbs[0].user_id == 1);
  }
  SUBCASE("empty user list yields an unassigned grid") {
    const PrbGrid grid = map_prbs(std::vector<UserRadioState>{}, 3);
    for (const auto& slot : grid.prbs) CHECK(slot.user_id == -1);
  }
}

TEST_CASE("PRB exclusivity, entitlement, and per-step greedy optimality") {
  std::mt19937_64 gen(101);
  for (int round = 0; round < 1000; ++round) {
    const RadioInstance instance = random_radio_instance(gen);
    const PrbGrid grid = map_prbs(instance.users, instance.num_prbs);

    std::map<int, int> assigned_count;
    std::vector<int> remaining(instance.users.size());
    for (std::size_t u = 0; u < instance.users.size(); ++u) {
      remaining[u] = instance.users[u].entitlement;
    }
    for (int prb = 0; prb < instance.num_prbs; ++prb) {
      const int user_id = grid.prbs[prb].user_id;
      if (user_id < 0) continue;
      ++assigned_count[user_id];
      // per-step greedy: the winner's channel beats every user that still
      // had entitlement when this PRB was scanned
      for (std::size_t u = 0; u < instance.users.size(); ++u) {
        if (remaining[u] > 0) {
          CHECK(grid.prbs[prb].rate >= instance.users[u].channel_quality[prb] - 1e-12);
        }
      }
      --remaining[user_id];
    }
    for (std::size_t u = 0; u < instance.users.size(); ++u) {
      const auto it = assigned_count.find(instance.users[u].user_id);
      const int count = it == assigned_count.end() ? 0 : it->second;
      CHECK(count <= instance.users[u].entitlement);
    }
  }
}

TEST_CASE("token refill credits shares and respects caps") {
  std::vector<TokenAccount> accounts = {
      {0, 0.0, 0.5, 100.0},
      {1, 99.5, 0.3, 100.0},
      {2, 4.0, 0.0, 100.0},
  };
  refill_tokens(accounts, 10.0);
  CHECK(accounts[0].tokens == doctest::Approx(5.0));
  CHECK(accounts[1].tokens == doctest::Approx(100.0));  // cap binds
  CHECK(accounts[2].tokens == doctest::Approx(4.0));    // zero share
}

TEST_CASE("kernel scheduling reference cases") {
  SUBCASE("affordable head dispatches and pays") {
    std::vector<std::deque<KernelRequest>> queues(1);
    queues[0].push_back(KernelRequest{0, 3.0, 1});
    std::vector<TokenAccount> accounts = {{0, 5.0, 0.0, 100.0}};
    const auto dispatched = schedule_kernels(queues, accounts, 0);
    REQUIRE(dispatched.size() == 1);
    CHECK(accounts[0].tokens == doctest::Approx(2.0));
    CHECK(queues[0].empty());
  }
  SUBCASE("expensive head blocks the whole queue") {
    std::vector<std::deque<KernelRequest>> queues(1);
    queues[0].push_back(KernelRequest{0, 7.0, 1});
    queues[0].push_back(KernelRequest{0, 1.0, 2});
    std::vector<TokenAccount> accounts = {{0, 5.0, 0.0, 100.0}};
    const auto dispatched = schedule_kernels(queues, accounts, 0);
    CHECK(dispatched.empty());
    CHECK(queues[0].size() == 2);
    CHECK(accounts[0].tokens == doctest::Approx(5.0));
  }
  SUBCASE("while-loop drains consecutive affordable heads") {
    std::vector<std::deque<KernelRequest>> queues(1);
    queues[0].push_back(KernelRequest{0, 2.0, 1});
    queues[0].push_back(KernelRequest{0, 2.0, 2});
    std::vector<TokenAccount> accounts = {{0, 5.0, 0.0, 100.0}};
    const auto dispatched = schedule_kernels(queues, accounts, 0);
    CHECK(dispatched.size() == 2);
    CHECK(accounts[0].tokens == doctest::Approx(1.0));
  }
  SUBCASE("scan order rotates fairly") {
    std::vector<std::deque<KernelRequest>> queues(2);
    queues[0].push_back(KernelRequest{0, 1.0, 1});
    queues[1].push_back(KernelRequest{1, 1.0, 2});
    std::vector<TokenAccount> accounts = {{0, 5.0, 0.0, 10.0}, {1, 5.0, 0.0, 10.0}};
    const auto dispatched = schedule_kernels(queues, accounts, 1);
    REQUIRE(dispatched.size() == 2);
    CHECK(dispatched[0].user_id == 1);  // scan starts at user 1
    CHECK(dispatched[1].user_id == 0);
  }
}

TEST_CASE("token conservation and FIFO order over long randomized runs") {
  std::mt19937_64 gen(202);
  std::uniform_real_distribution<double> cost(0.5, 6.0);
  std::uniform_int_distribution<int> arrivals(0, 2);
  const int num_users = 4;
  const int ticks = 1000;

  auto simulate = [&](std::uint64_t seed) {
    std::mt19937_64 local(seed);
    std::vector<std::deque<KernelRequest>> queues(num_users);
    std::vector<TokenAccount> accounts;
    for (int u = 0; u < num_users; ++u) {
      accounts.push_back(TokenAccount{u, 0.0, 0.2 + 0.05 * u, 40.0});
    }
    std::vector<double> credited(num_users, 0.0);
    std::vector<double> spent(num_users, 0.0);
    std::vector<std::uint64_t> last_sequence(num_users, 0);
    std::vector<KernelRequest> all_dispatched;
    std::uint64_t sequence = 0;

    for (int tick = 0; tick < ticks; ++tick) {
      for (int u = 0; u < num_users; ++u) {
        const int n = arrivals(local);
        for (int a = 0; a < n; ++a) {
          queues[u].push_back(KernelRequest{u, cost(local), ++sequence});
        }
      }
      std::vector<double> before(num_users);
      for (int u = 0; u < num_users; ++u) before[u] = accounts[u].tokens;
      refill_tokens(accounts, 10.0);
      for (int u = 0; u < num_users; ++u) credited[u] += accounts[u].tokens - before[u];

      const auto dispatched = schedule_kernels(queues, accounts, tick % num_users);
      for (const KernelRequest& request : dispatched) {
        spent[request.user_id] += request.cost;
        CHECK(request.sequence > last_sequence[request.user_id]);  // FIFO per user
        last_sequence[request.user_id] = request.sequence;
        all_dispatched.push_back(request);
      }
    }
    for (int u = 0; u < num_users; ++u) {
      CHECK(accounts[u].tokens == doctest::Approx(credited[u] - spent[u]).epsilon(1e-9));
    }
    return all_dispatched;
  };

  const auto first = simulate(99);
  const auto second = simulate(99);
  REQUIRE(first.size() == second.size());  // determinism: identical reruns
  for (std::size_t n = 0; n < first.size(); ++n) {
    CHECK(first[n].user_id == second[n].user_id);
    CHECK(first[n].sequence == second[n].sequence);
    CHECK(first[n].cost == second[n].cost);
  }
}

TEST_CASE("hypervisor input validation") {
  std::vector<UserRadioState> bad = {{0, 1, {0.5, 0.5}}};
  CHECK_THROWS_AS(map_prbs(bad, 3), ValidationError);

  std::vector<std::deque<KernelRequest>> queues(2);
  std::vector<TokenAccount> accounts(1);
  CHECK_THROWS_AS(schedule_kernels(queues, accounts, 0), ValidationError);

  std::vector<std::deque<KernelRequest>> zero_cost(1);
  zero_cost[0].push_back(KernelRequest{0, 0.0, 1});
  std::vector<TokenAccount> funded = {{0, 5.0, 0.0, 10.0}};
  CHECK_THROWS_AS(schedule_kernels(zero_cost, funded, 0), ValidationError);
}
