// slicesim CLI: run scenarios, sweep attacked-node counts, compare against
// the exact oracle. Talks to the core exclusively through the C API.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "slicesim/slicesim.h"

namespace {

struct ScenarioDeleter {
  void operator()(slicesim_scenario* s) const { slicesim_scenario_free(s); }
};
struct ResultDeleter {
  void operator()(slicesim_result* r) const { slicesim_result_free(r); }
};
using ScenarioPtr = std::unique_ptr<slicesim_scenario, ScenarioDeleter>;
using ResultPtr = std::unique_ptr<slicesim_result, ResultDeleter>;

int fail(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 1;
}

ScenarioPtr load_scenario_or_exit_null(const std::string& path) {
  slicesim_scenario* raw = nullptr;
  if (slicesim_scenario_load_file(path.c_str(), &raw) != SLICESIM_OK) {
    std::cerr << "error: " << slicesim_last_error() << "\n";
    return nullptr;
  }
  return ScenarioPtr(raw);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

bool parse_attacked_counts(const std::string& text, std::vector<int>& out) {
  const auto range_pos = text.find("..");
  if (range_pos != std::string::npos) {
    try {
      const int low = std::stoi(text.substr(0, range_pos));
      const int high = std::stoi(text.substr(range_pos + 2));
      if (low > high) return false;
      for (int a = low; a <= high; ++a) out.push_back(a);
      return true;
    } catch (...) {
      return false;
    }
  }
  try {
    for (const std::string& part : split(text, ',')) out.push_back(std::stoi(part));
    return true;
  } catch (...) {
    return false;
  }
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

double final_utility(const slicesim_result* result) {
  slicesim_row row{};
  slicesim_result_row(result, slicesim_result_num_rows(result) - 1, &row);
  return row.total_utility;
}

int cmd_run(const std::string& scenario_path, std::uint64_t seed, const std::string& algorithms,
            bool exact_gradients, const std::string& out_path) {
  bool want_learning = false;
  bool want_baseline = false;
  bool want_oracle = false;
  for (const std::string& name : split(algorithms, ',')) {
    if (name == "learning") {
      want_learning = true;
    } else if (name == "baseline") {
      want_baseline = true;
    } else if (name == "oracle") {
      want_oracle = true;
    } else {
      return fail("unknown algorithm '" + name +
                  "'; valid names are: learning, baseline, oracle");
    }
  }

  ScenarioPtr scenario = load_scenario_or_exit_null(scenario_path);
  if (!scenario) return 1;

  std::string csv = slicesim_run_csv_header();
  bool all_feasible = true;
  double learning_value = 0.0;
  double baseline_value = 0.0;

  auto run_one = [&](slicesim_algorithm algorithm, double& value_out) -> bool {
    slicesim_run_options options{seed, algorithm, exact_gradients ? 1 : 0};
    slicesim_result* raw = nullptr;
    if (slicesim_run(scenario.get(), &options, &raw) != SLICESIM_OK) {
      std::cerr << "error: " << slicesim_last_error() << "\n";
      return false;
    }
    ResultPtr result(raw);
    char* rows = nullptr;
    if (slicesim_result_csv(result.get(), &rows) != SLICESIM_OK) {
      std::cerr << "error: " << slicesim_last_error() << "\n";
      return false;
    }
    csv += rows;
    slicesim_string_free(rows);
    if (!slicesim_result_all_feasible(result.get())) all_feasible = false;
    value_out = final_utility(result.get());
    return true;
  };

  if (want_learning && !run_one(SLICESIM_ALG_LEARNING, learning_value)) return 1;
  if (want_baseline && !run_one(SLICESIM_ALG_BASELINE, baseline_value)) return 1;

  if (!out_path.empty() && !write_file(out_path, csv)) {
    return fail("cannot write output file: " + out_path);
  }

  double oracle = 0.0;
  if (want_oracle &&
      slicesim_oracle_value(scenario.get(), seed, 0, &oracle) != SLICESIM_OK) {
    return fail(slicesim_last_error());
  }

  std::printf("scenario: %s  seed: %llu\n", scenario_path.c_str(),
              static_cast<unsigned long long>(seed));
  if (want_learning) std::printf("learning final utility: %.4f\n", learning_value);
  if (want_baseline) std::printf("baseline final utility: %.4f\n", baseline_value);
  if (want_oracle) {
    std::printf("oracle value: %.4f\n", oracle);
    if (oracle > 0.0) {
      if (want_learning) std::printf("learning gap: %.4f\n", learning_value / oracle);
      if (want_baseline) std::printf("baseline gap: %.4f\n", baseline_value / oracle);
    }
  }
  if (!out_path.empty()) std::printf("metrics written to %s\n", out_path.c_str());
  return all_feasible ? 0 : 1;
}

int cmd_sweep(const std::string& scenario_path, const std::string& attacked, int num_seeds,
              const std::string& out_path) {
  std::vector<int> counts;
  if (!parse_attacked_counts(attacked, counts) || counts.empty()) {
    return fail("cannot parse attacked counts '" + attacked + "' (use e.g. 0..8 or 0,2,4)");
  }
  ScenarioPtr scenario = load_scenario_or_exit_null(scenario_path);
  if (!scenario) return 1;

  const int num_nodes = slicesim_scenario_num_nodes(scenario.get());
  for (int count : counts) {
    if (count < 0 || count >= num_nodes) {
      return fail("attacked count " + std::to_string(count) + " must be below the node count " +
                  std::to_string(num_nodes));
    }
  }

  char* csv = nullptr;
  if (slicesim_sweep_csv(scenario.get(), counts.data(), static_cast<int>(counts.size()),
                         num_seeds, &csv) != SLICESIM_OK) {
    return fail(slicesim_last_error());
  }
  const bool ok = write_file(out_path, csv);
  slicesim_string_free(csv);
  if (!ok) return fail("cannot write output file: " + out_path);
  std::printf("sweep over %zu attacked-count values x %d seeds written to %s\n", counts.size(),
              num_seeds, out_path.c_str());
  return 0;
}

int cmd_compare(const std::string& scenario_path, std::uint64_t seed, bool exact_gradients) {
  ScenarioPtr scenario = load_scenario_or_exit_null(scenario_path);
  if (!scenario) return 1;
  if (slicesim_scenario_num_attacks(scenario.get()) > 0) {
    return fail("compare expects an attack-free scenario (the oracle models no attacks)");
  }

  auto run_value = [&](slicesim_algorithm algorithm, double& out) -> bool {
    slicesim_run_options options{seed, algorithm, exact_gradients ? 1 : 0};
    slicesim_result* raw = nullptr;
    if (slicesim_run(scenario.get(), &options, &raw) != SLICESIM_OK) {
      std::cerr << "error: " << slicesim_last_error() << "\n";
      return false;
    }
    ResultPtr result(raw);
    out = final_utility(result.get());
    return true;
  };

  double learning = 0.0;
  double baseline = 0.0;
  double oracle = 0.0;
  if (!run_value(SLICESIM_ALG_LEARNING, learning)) return 1;
  if (!run_value(SLICESIM_ALG_BASELINE, baseline)) return 1;
  if (slicesim_oracle_value(scenario.get(), seed, 0, &oracle) != SLICESIM_OK) {
    return fail(slicesim_last_error());
  }

  std::printf("algorithm,utility,gap_vs_oracle\n");
  std::printf("learning,%.4f,%.4f\n", learning, oracle > 0.0 ? learning / oracle : 1.0);
  std::printf("baseline,%.4f,%.4f\n", baseline, oracle > 0.0 ? baseline / oracle : 1.0);
  std::printf("oracle,%.4f,1.0000\n", oracle);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic multi-node network slicing simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::uint64_t seed = 0;
  std::string algorithms = "learning,baseline";
  bool exact_gradients = false;
  std::string out_path;
  std::string attacked = "0";
  int num_seeds = 1;

  CLI::App* run = app.add_subcommand("run", "Run algorithms over one scenario, emit metrics CSV");
  run->add_option("--scenario", scenario_path, "Scenario file")->required();
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--algorithms", algorithms,
                  "Comma-separated set from: learning, baseline, oracle");
  run->add_flag("--exact-gradients", exact_gradients,
                "Debug: feed ground-truth gradients to the coordinator");
  run->add_option("--out", out_path, "Metrics CSV path");

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep attacked-node counts over seeds");
  sweep->add_option("--scenario", scenario_path, "Scenario file")->required();
  sweep->add_option("--attacked", attacked, "Counts, e.g. 0..8 or 0,2,4")->required();
  sweep->add_option("--seeds", num_seeds, "Number of seeds (0..n-1)");
  sweep->add_option("--out", out_path, "Sweep CSV path")->required();

  CLI::App* compare = app.add_subcommand("compare", "Learning vs baseline vs oracle table");
  compare->add_option("--scenario", scenario_path, "Scenario file")->required();
  compare->add_option("--seed", seed, "Master seed");
  compare->add_flag("--exact-gradients", exact_gradients,
                    "Debug: feed ground-truth gradients to the coordinator");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(scenario_path, seed, algorithms, exact_gradients, out_path);
  if (sweep->parsed()) return cmd_sweep(scenario_path, attacked, num_seeds, out_path);
  return cmd_compare(scenario_path, seed, exact_gradients);
}
