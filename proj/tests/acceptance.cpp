// Acceptance suite: end-to-end checks of the simulator against its exact
// oracle and the expected attack-mitigation behavior. Each criterion prints
// one PASS/FAIL line; the process exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "slicesim/coordinator.hpp"
#include "slicesim/environment.hpp"
#include "slicesim/estimator.hpp"
#include "slicesim/hypervisor.hpp"
#include "slicesim/metrics.hpp"
#include "slicesim/node_orchestrator.hpp"
#include "slicesim/oracle.hpp"
#include "slicesim/rng.hpp"
#include "slicesim/scenario.hpp"
#include "slicesim/simulation.hpp"
#include "slicesim/sweep.hpp"
#include "test_helpers.hpp"

using namespace slicesim;
using slicesim::testing::enumerate_transport_max;
using slicesim::testing::grid_projection;
using slicesim::testing::make_config;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ScenarioConfig load_named(const std::string& name) {
  return load_scenario_file(std::string(SLICESIM_SCENARIO_DIR) + "/" + name);
}

ScenarioConfig without_attacks(ScenarioConfig cfg) {
  cfg.attacks.clear();
  return cfg;
}

double tensor_value(const Tensor3& x, const Tensor3& alpha) {
  double value = 0.0;
  for (std::size_t n = 0; n < x.flat().size(); ++n) value += x.flat()[n] * alpha.flat()[n];
  return value;
}

// --- criterion 1: coordinator vs oracle with exact gradients ---------------

bool criterion_oracle_gap(std::string& detail) {
  const auto start = Clock::now();
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_int_distribution<int> kinds(1, 2);
  std::uniform_int_distribution<int> cap(0, 20);
  std::uniform_real_distribution<double> weight(1.0, 10.0);

  double worst = 1.0;
  for (int round = 0; round < 50; ++round) {
    ScenarioConfig cfg = make_config(dim(gen), dim(gen), kinds(gen), 0.0, 0.0);
    cfg.admm.eps_primal = 1e-6;
    cfg.admm.eps_dual = 1e-6;
    cfg.admm.max_iters = 5000;
    for (double& c : cfg.node_capacity) c = cap(gen);
    for (double& b : cfg.sla_budget) b = cap(gen);
    GroundTruth gt{Tensor3(cfg.num_slices, cfg.num_nodes, cfg.num_kinds())};
    for (double& a : gt.alpha.flat()) a = weight(gen);

    const AdmmState state = run_admm(gt.alpha, cfg);
    const double value = tensor_value(enforce_feasibility(state.x, cfg), gt.alpha);
    const double optimum = solve_optimal(gt, cfg).value;
    if (optimum <= 1e-9) {
      if (value > 1e-6) {
        detail = "positive value on a zero-optimum instance";
        return false;
      }
      continue;
    }
    worst = std::min(worst, value / optimum);
  }
  const double elapsed = seconds_since(start);
  std::ostringstream note;
  note << "worst ratio " << worst << ", " << elapsed << "s";
  detail = note.str();
  return worst >= 0.98 && elapsed < 10.0;
}

// --- criterion 2: learning convergence speed -------------------------------

bool criterion_convergence_speed(std::string& detail) {
  const auto start = Clock::now();
  const ScenarioConfig cfg = load_named("fig3a.toml");
  double ratio_sum = 0.0;
  const int seeds = 10;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const MetricsTimeline tl = run_simulation(cfg, {seed, Algorithm::Learning});
    const double plateau = mean_utility(tl, 45, 49);
    ratio_sum += tl.rows[10].total_utility / plateau;
  }
  const double mean_ratio = ratio_sum / seeds;
  const double elapsed = seconds_since(start);
  std::ostringstream note;
  note << "slot-10 / plateau mean " << mean_ratio << ", " << elapsed << "s";
  detail = note.str();
  return mean_ratio >= 0.99 && elapsed < 30.0;
}

// --- criterion 3: attack-free improvement band -----------------------------

bool criterion_attack_free_improvement(std::string& detail) {
  const ScenarioConfig cfg = without_attacks(load_named("fig3a.toml"));
  const int seeds = 20;
  double ratio_sum = 0.0;
  double min_vs_oracle = 2.0;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const MetricsTimeline learn = run_simulation(cfg, {seed, Algorithm::Learning});
    const MetricsTimeline base = run_simulation(cfg, {seed, Algorithm::Baseline});
    const double plateau = mean_utility(learn, 45, 49);
    const double baseline = mean_utility(base, 45, 49);
    ratio_sum += plateau / baseline;
    if (plateau < baseline) {
      detail = "learning fell below baseline on seed " + std::to_string(seed);
      return false;
    }
    const GroundTruth gt = make_ground_truth(cfg, derive_stream(seed, "ground-truth"));
    min_vs_oracle = std::min(min_vs_oracle, plateau / solve_optimal(gt, cfg).value);
  }
  const double mean_ratio = ratio_sum / seeds;
  std::ostringstream note;
  note << "mean learning/baseline " << mean_ratio << ", min learning/oracle " << min_vs_oracle;
  detail = note.str();
  return mean_ratio >= 1.05 && mean_ratio <= 1.7 && min_vs_oracle >= 0.95;
}

// --- criterion 4: attack restoration ----------------------------------------

bool criterion_attack_restoration(std::string& detail) {
  const ScenarioConfig attacked = load_named("fig3a.toml");
  const ScenarioConfig free_cfg = without_attacks(attacked);
  const int seeds = 10;
  double restoration_sum = 0.0;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const MetricsTimeline learn = run_simulation(attacked, {seed, Algorithm::Learning});
    const MetricsTimeline base = run_simulation(attacked, {seed, Algorithm::Baseline});
    const double pre = mean_utility(learn, 15, 19);
    const double post = mean_utility(learn, 40, 49);
    restoration_sum += post / pre;

    const double attacked_ratio = post / mean_utility(base, 40, 49);
    const MetricsTimeline learn_free = run_simulation(free_cfg, {seed, Algorithm::Learning});
    const MetricsTimeline base_free = run_simulation(free_cfg, {seed, Algorithm::Baseline});
    const double free_ratio = mean_utility(learn_free, 45, 49) / mean_utility(base_free, 45, 49);
    if (!(attacked_ratio > free_ratio)) {
      detail = "attacked-regime advantage did not grow on seed " + std::to_string(seed);
      return false;
    }
  }
  const double mean_restoration = restoration_sum / seeds;
  std::ostringstream note;
  note << "mean post/pre " << mean_restoration;
  detail = note.str();
  return mean_restoration >= 0.90;
}

// --- criterion 5: attacked-node sweep ---------------------------------------

bool criterion_sweep_monotonicity(std::string& detail) {
  const auto start = Clock::now();
  const ScenarioConfig cfg = load_named("fig3b.toml");
  SweepSpec spec;
  spec.attacked_counts = {0, 2, 4, 6, 8};
  spec.num_seeds = 10;
  const std::vector<SweepRow> rows = run_sweep(cfg, spec);

  std::vector<double> ratio(spec.attacked_counts.size(), 0.0);
  for (const SweepRow& row : rows) {
    if (row.algorithm != Algorithm::Learning) continue;
    const auto slot = std::find(spec.attacked_counts.begin(), spec.attacked_counts.end(),
                                row.attacked_count) -
                      spec.attacked_counts.begin();
    ratio[slot] += row.ratio_vs_baseline / spec.num_seeds;
  }
  bool monotone = true;
  for (std::size_t n = 0; n + 1 < ratio.size(); ++n) {
    if (ratio[n + 1] < ratio[n]) monotone = false;
  }
  const double elapsed = seconds_since(start);
  std::ostringstream note;
  note << "ratios";
  for (double r : ratio) note << " " << r;
  note << ", " << elapsed << "s";
  detail = note.str();
  return monotone && ratio.back() >= 2.0 * ratio.front() && elapsed < 300.0;
}

// --- criterion 6: targeted-attack exclusion ---------------------------------

bool criterion_exclusion(std::string& detail) {
  const ScenarioConfig cfg = load_named("fig5.toml");
  double worst_share = 1.0;
  double worst_leak = 0.0;  // attacked-node allocation relative to the budget
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const MetricsTimeline tl = run_simulation(cfg, {seed, Algorithm::Learning});
    const AllocationTensor& x = tl.deployed.back();
    for (int k = 0; k < cfg.num_kinds(); ++k) {
      // slice 0 is attacked on node 1, slice 2 on node 0
      const double slice0 = x.at(0, 0, k) + x.at(0, 1, k);
      const double slice2 = x.at(2, 0, k) + x.at(2, 1, k);
      if (slice0 > kNumericEps) worst_share = std::min(worst_share, x.at(0, 0, k) / slice0);
      if (slice2 > kNumericEps) worst_share = std::min(worst_share, x.at(2, 1, k) / slice2);
      worst_leak = std::max(worst_leak, x.at(0, 1, k) / cfg.budget(0, k));
      worst_leak = std::max(worst_leak, x.at(2, 0, k) / cfg.budget(2, k));
    }
  }
  std::ostringstream note;
  note << "worst surviving-node share " << worst_share << ", worst attacked-node leak "
       << worst_leak;
  detail = note.str();
  return worst_share >= 0.95 && worst_leak <= 0.05;
}

// --- criterion 7: detection latency and false positives ---------------------

bool criterion_detection(std::string& detail) {
  const ScenarioConfig attacked = load_named("fig3a.toml");
  const ScenarioConfig free_cfg = without_attacks(attacked);
  const int attacked_node = attacked.attacks.front().target_node;
  const int onset = attacked.attacks.front().start_slot;
  const int window = attacked.detection.window;
  const int burn_in = attacked.learning.dither_slots;
  const int seeds = 20;

  int pairs_checked = 0;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const MetricsTimeline tl = run_simulation(attacked, {seed, Algorithm::Learning});
    for (int i = 0; i < attacked.num_slices; ++i) {
      bool receives_every_slot = true;
      for (int t = onset; t < onset + window; ++t) {
        double carried = 0.0;
        for (int k = 0; k < attacked.num_kinds(); ++k) {
          carried += tl.deployed[t].at(i, attacked_node, k);
        }
        if (carried <= kNumericEps) receives_every_slot = false;
      }
      if (!receives_every_slot) continue;
      ++pairs_checked;
      bool flagged = false;
      for (int t = onset; t < onset + window; ++t) {
        const auto& pairs = tl.rows[t].flagged_pairs;
        if (std::find(pairs.begin(), pairs.end(), std::pair<int, int>(i, attacked_node)) !=
            pairs.end()) {
          flagged = true;
        }
      }
      if (!flagged) {
        detail = "pair (" + std::to_string(i) + "," + std::to_string(attacked_node) +
                 ") not flagged within the window on seed " + std::to_string(seed);
        return false;
      }
    }

    const MetricsTimeline clean = run_simulation(free_cfg, {seed, Algorithm::Learning});
    for (int t = burn_in; t < free_cfg.horizon; ++t) {
      if (!clean.rows[t].flagged_pairs.empty()) {
        detail = "false flag at slot " + std::to_string(t) + " on seed " + std::to_string(seed);
        return false;
      }
    }
  }
  std::ostringstream note;
  note << pairs_checked << " attacked pairs flagged in time, no false flags";
  detail = note.str();
  return pairs_checked > 0;
}

// --- criterion 8: numerical property suites ---------------------------------

bool criterion_numerical_suites(std::string& detail) {
  std::mt19937_64 gen(515);

  // projection vs grid brute force, 1000 random cases
  {
    std::uniform_int_distribution<int> size(1, 6);
    std::uniform_real_distribution<double> coord(-3.0, 5.0);
    std::uniform_real_distribution<double> cap_draw(0.0, 4.0);
    const int steps = 8;
    for (int round = 0; round < 1000; ++round) {
      const int n = size(gen);
      std::vector<double> v(n);
      for (double& value : v) value = coord(gen);
      const double cap = round % 10 == 0 ? 0.0 : cap_draw(gen);
      const auto x = project_capped_simplex(v, cap);
      const auto grid = grid_projection(v, cap, steps);
      auto dist = [&](const std::vector<double>& p) {
        double d = 0.0;
        for (int q = 0; q < n; ++q) d += (p[q] - v[q]) * (p[q] - v[q]);
        return std::sqrt(d);
      };
      double total = 0.0;
      for (double value : x) {
        if (value < -1e-12) {
          detail = "projection produced a negative coordinate";
          return false;
        }
        total += value;
      }
      if (total > cap + 1e-9) {
        detail = "projection exceeded the cap";
        return false;
      }
      const double step = cap / steps;
      if (dist(x) > dist(grid) + 1e-9 ||
          dist(grid) - dist(x) > step * std::sqrt(double(n)) + 1e-9) {
        detail = "projection disagreed with the grid oracle";
        return false;
      }
    }
  }

  // KKT stationarity on random subproblems
  {
    std::uniform_real_distribution<double> grad(0.0, 10.0);
    std::uniform_real_distribution<double> ref(-5.0, 25.0);
    std::uniform_real_distribution<double> cap_draw(0.0, 60.0);
    for (int round = 0; round < 500; ++round) {
      NodeSubproblem problem;
      problem.num_slices = 5;
      problem.num_kinds = 2;
      problem.rho = 0.5 + grad(gen) / 5.0;
      problem.capacities = {cap_draw(gen), cap_draw(gen)};
      problem.gradients.resize(10);
      problem.reference.resize(10);
      for (double& g : problem.gradients) g = grad(gen);
      for (double& r : problem.reference) r = ref(gen);
      const auto x = solve_node_subproblem(problem);
      for (int k = 0; k < 2; ++k) {
        double min_active = std::numeric_limits<double>::infinity();
        double max_active = -std::numeric_limits<double>::infinity();
        double max_inactive = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < 5; ++i) {
          const std::size_t idx = static_cast<std::size_t>(i) * 2 + k;
          const double stationarity =
              problem.gradients[idx] - problem.rho * (x[idx] - problem.reference[idx]);
          if (x[idx] > 1e-9) {
            min_active = std::min(min_active, stationarity);
            max_active = std::max(max_active, stationarity);
          } else {
            max_inactive = std::max(max_inactive, stationarity);
          }
        }
        if (std::isfinite(min_active) &&
            (max_active - min_active > 1e-6 ||
             (std::isfinite(max_inactive) && max_inactive > min_active + 1e-6))) {
          detail = "KKT stationarity violated";
          return false;
        }
      }
    }
  }

  // RLS exact recovery under spanning noiseless data
  {
    ScenarioConfig cfg = make_config(1, 1, 3, 1000.0, 1000.0);
    cfg.learning.prior_covariance_scale = 1e8;
    std::uniform_real_distribution<double> weight(1.0, 10.0);
    std::uniform_real_distribution<double> unit(0.0, 20.0);
    for (int round = 0; round < 50; ++round) {
      EstimatorState state = init_estimator(cfg);
      const Eigen::Vector3d alpha(weight(gen), weight(gen), weight(gen));
      std::vector<Eigen::Vector3d> xs = {Eigen::Vector3d(7, 0, 0), Eigen::Vector3d(0, 7, 0),
                                         Eigen::Vector3d(0, 0, 7)};
      for (int n = 0; n < 6; ++n) xs.emplace_back(unit(gen), unit(gen), unit(gen));
      for (const Eigen::Vector3d& x : xs) {
        Observation obs;
        obs.slice = 0;
        obs.node = 0;
        obs.allocation = {x[0], x[1], x[2]};
        obs.utility = alpha.dot(x);
        update(state, obs, 1.0);
      }
      if ((state.pair(0, 0).alpha_hat - alpha).lpNorm<Eigen::Infinity>() > 1e-6) {
        detail = "RLS failed to recover exact weights";
        return false;
      }
    }
  }

  // Z feasibility after every auxiliary update
  {
    ScenarioConfig cfg = make_config(3, 4, 2, 1000.0, 37.0);
    std::uniform_real_distribution<double> entry(-30.0, 80.0);
    for (int round = 0; round < 300; ++round) {
      Tensor3 x(3, 4, 2), u(3, 4, 2);
      for (double& v : x.flat()) v = entry(gen);
      for (double& v : u.flat()) v = entry(gen) / 10.0;
      const Tensor3 z = update_auxiliary(x, u, cfg);
      for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 2; ++k) {
          if (z.slice_sum(i, k) > cfg.budget(i, k) + 1e-9) {
            detail = "Z violated an SLA budget";
            return false;
          }
        }
      }
      for (double v : z.flat()) {
        if (v < -1e-9) {
          detail = "Z went negative";
          return false;
        }
      }
    }
  }

  // max-profit flow equals exhaustive enumeration
  {
    std::uniform_int_distribution<int> cap(0, 10);
    std::uniform_real_distribution<double> weight(0.0, 10.0);
    const std::vector<std::pair<int, int>> shapes = {{1, 1}, {1, 4}, {2, 2},
                                                     {2, 3}, {3, 2}, {6, 1}};
    for (int round = 0; round < 90; ++round) {
      const auto [num_slices, num_nodes] = shapes[round % shapes.size()];
      ScenarioConfig cfg = make_config(num_slices, num_nodes, 1, 0.0, 0.0);
      std::vector<long long> budgets(num_slices);
      std::vector<long long> capacities(num_nodes);
      for (int i = 0; i < num_slices; ++i) {
        budgets[i] = cap(gen);
        cfg.sla_budget[i] = static_cast<double>(budgets[i]);
      }
      for (int j = 0; j < num_nodes; ++j) {
        capacities[j] = cap(gen);
        cfg.node_capacity[j] = static_cast<double>(capacities[j]);
      }
      GroundTruth gt{Tensor3(num_slices, num_nodes, 1)};
      std::vector<std::vector<double>> alpha(num_slices, std::vector<double>(num_nodes));
      for (int i = 0; i < num_slices; ++i) {
        for (int j = 0; j < num_nodes; ++j) {
          alpha[i][j] = weight(gen);
          gt.alpha.at(i, j, 0) = alpha[i][j];
        }
      }
      const double flow = solve_optimal(gt, cfg).value;
      const double enumerated = enumerate_transport_max(alpha, budgets, capacities);
      if (std::abs(flow - enumerated) > 1e-9 * std::max(1.0, enumerated)) {
        detail = "flow optimum diverged from enumeration";
        return false;
      }
    }
  }

  detail = "projection, KKT, RLS recovery, Z feasibility, flow-vs-enumeration all held";
  return true;
}

// --- criterion 9: hypervisor suites ------------------------------------------

bool criterion_hypervisor_suites(std::string& detail) {
  std::mt19937_64 gen(909);

  // PRB properties over 1000 random instances
  {
    std::uniform_int_distribution<int> user_count(1, 6);
    std::uniform_int_distribution<int> prb_count(1, 12);
    std::uniform_int_distribution<int> entitlement(0, 4);
    std::uniform_real_distribution<double> quality(0.0, 1.0);
    for (int round = 0; round < 1000; ++round) {
      const int num_prbs = prb_count(gen);
      std::vector<UserRadioState> users(user_count(gen));
      for (std::size_t u = 0; u < users.size(); ++u) {
        users[u].user_id = static_cast<int>(u);
        users[u].entitlement = entitlement(gen);
        users[u].channel_quality.resize(num_prbs);
        for (double& q : users[u].channel_quality) q = quality(gen);
      }
      const PrbGrid grid = map_prbs(users, num_prbs);
      std::vector<int> remaining(users.size());
      for (std::size_t u = 0; u < users.size(); ++u) remaining[u] = users[u].entitlement;
      std::vector<int> assigned(users.size(), 0);
      for (int prb = 0; prb < num_prbs; ++prb) {
        const int user_id = grid.prbs[prb].user_id;
        if (user_id < 0) continue;
        for (std::size_t u = 0; u < users.size(); ++u) {
          if (remaining[u] > 0 && users[u].channel_quality[prb] > grid.prbs[prb].rate + 1e-12) {
            detail = "greedy step was not channel-optimal";
            return false;
          }
        }
        ++assigned[user_id];
        --remaining[user_id];
      }
      for (std::size_t u = 0; u < users.size(); ++u) {
        if (assigned[u] > users[u].entitlement) {
          detail = "entitlement exceeded";
          return false;
        }
      }
    }
  }

  // token conservation, FIFO order, determinism over 1000 ticks
  {
    auto simulate = [&](std::uint64_t seed, std::string* error) {
      std::mt19937_64 local(seed);
      std::uniform_real_distribution<double> cost(0.5, 6.0);
      std::uniform_int_distribution<int> arrivals(0, 2);
      const int num_users = 4;
      std::vector<std::deque<KernelRequest>> queues(num_users);
      std::vector<TokenAccount> accounts;
      for (int u = 0; u < num_users; ++u) {
        accounts.push_back(TokenAccount{u, 0.0, 0.2 + 0.05 * u, 40.0});
      }
      std::vector<double> credited(num_users, 0.0);
      std::vector<double> spent(num_users, 0.0);
      std::vector<std::uint64_t> last_sequence(num_users, 0);
      std::vector<KernelRequest> dispatched_all;
      std::uint64_t sequence = 0;
      for (int tick = 0; tick < 1000; ++tick) {
        for (int u = 0; u < num_users; ++u) {
          for (int a = arrivals(local); a > 0; --a) {
            queues[u].push_back(KernelRequest{u, cost(local), ++sequence});
          }
        }
        std::vector<double> before(num_users);
        for (int u = 0; u < num_users; ++u) before[u] = accounts[u].tokens;
        refill_tokens(accounts, 10.0);
        for (int u = 0; u < num_users; ++u) credited[u] += accounts[u].tokens - before[u];
        for (const KernelRequest& request : schedule_kernels(queues, accounts, tick % num_users)) {
          spent[request.user_id] += request.cost;
          if (request.sequence <= last_sequence[request.user_id]) {
            *error = "per-user FIFO order broken";
          }
          last_sequence[request.user_id] = request.sequence;
          dispatched_all.push_back(request);
        }
      }
      for (int u = 0; u < num_users; ++u) {
        if (std::abs(accounts[u].tokens - (credited[u] - spent[u])) > 1e-6) {
          *error = "token conservation violated";
        }
      }
      return dispatched_all;
    };
    std::string error;
    const auto first = simulate(4242, &error);
    const auto second = simulate(4242, &error);
    if (!error.empty()) {
      detail = error;
      return false;
    }
    if (first.size() != second.size()) {
      detail = "rerun dispatched a different number of kernels";
      return false;
    }
    for (std::size_t n = 0; n < first.size(); ++n) {
      if (first[n].user_id != second[n].user_id || first[n].sequence != second[n].sequence ||
          first[n].cost != second[n].cost) {
        detail = "rerun diverged";
        return false;
      }
    }
  }

  detail = "PRB, token, FIFO, and determinism properties all held";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"1. exact-gradient coordinator within 2% of the oracle", criterion_oracle_gap},
      {"2. learning reaches its plateau by slot 10", criterion_convergence_speed},
      {"3. attack-free improvement band and oracle floor", criterion_attack_free_improvement},
      {"4. post-attack restoration and widened advantage", criterion_attack_restoration},
      {"5. attacked-node sweep ratio growth", criterion_sweep_monotonicity},
      {"6. targeted attacks excluded from victim slices", criterion_exclusion},
      {"7. detection latency and zero false flags", criterion_detection},
      {"8. numerical property suites", criterion_numerical_suites},
      {"9. hypervisor property suites", criterion_hypervisor_suites},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string annotation;
    bool ok = false;
    try {
      ok = criterion.run(annotation);
    } catch (const std::exception& e) {
      annotation = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %s (%s)\n", ok ? "PASS" : "FAIL", criterion.name, annotation.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
