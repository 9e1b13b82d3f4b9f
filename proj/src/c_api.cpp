#include "slicesim/slicesim.h"

#include <cstring>
#include <new>
#include <string>

#include "slicesim/errors.hpp"
#include "slicesim/metrics.hpp"
#include "slicesim/oracle.hpp"
#include "slicesim/rng.hpp"
#include "slicesim/scenario.hpp"
#include "slicesim/simulation.hpp"
#include "slicesim/sweep.hpp"

struct slicesim_scenario {
  slicesim::ScenarioConfig config;
};

struct slicesim_result {
  slicesim::MetricsTimeline timeline;
  std::uint64_t seed = 0;
};

namespace {

thread_local std::string g_last_error = "no error";

slicesim_status record_error(slicesim_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
slicesim_status guarded(Fn&& fn) {
  try {
    fn();
    return SLICESIM_OK;
  } catch (const slicesim::ParseError& e) {
    return record_error(SLICESIM_ERR_PARSE, e.what());
  } catch (const slicesim::ValidationError& e) {
    return record_error(SLICESIM_ERR_VALIDATION, e.what());
  } catch (const slicesim::IoError& e) {
    return record_error(SLICESIM_ERR_IO, e.what());
  } catch (const slicesim::NumericError& e) {
    return record_error(SLICESIM_ERR_NUMERIC, e.what());
  } catch (const std::invalid_argument& e) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return record_error(SLICESIM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record_error(SLICESIM_ERR_INTERNAL, e.what());
  } catch (...) {
    return record_error(SLICESIM_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* slicesim_status_name(slicesim_status status) {
  switch (status) {
    case SLICESIM_OK: return "ok";
    case SLICESIM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SLICESIM_ERR_PARSE: return "parse error";
    case SLICESIM_ERR_VALIDATION: return "validation error";
    case SLICESIM_ERR_IO: return "io error";
    case SLICESIM_ERR_NUMERIC: return "numeric error";
    case SLICESIM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* slicesim_last_error(void) { return g_last_error.c_str(); }

void slicesim_string_free(char* text) { delete[] text; }

slicesim_status slicesim_scenario_load_file(const char* path, slicesim_scenario** out) {
  if (path == nullptr || out == nullptr) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    auto* scenario = new slicesim_scenario{slicesim::load_scenario_file(path)};
    *out = scenario;
  });
}

slicesim_status slicesim_scenario_load_text(const char* text, slicesim_scenario** out) {
  if (text == nullptr || out == nullptr) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    auto* scenario = new slicesim_scenario{slicesim::load_scenario(text)};
    *out = scenario;
  });
}

void slicesim_scenario_free(slicesim_scenario* scenario) { delete scenario; }

int slicesim_scenario_num_slices(const slicesim_scenario* s) {
  return s ? s->config.num_slices : 0;
}
int slicesim_scenario_num_nodes(const slicesim_scenario* s) {
  return s ? s->config.num_nodes : 0;
}
int slicesim_scenario_num_kinds(const slicesim_scenario* s) {
  return s ? s->config.num_kinds() : 0;
}
int slicesim_scenario_horizon(const slicesim_scenario* s) { return s ? s->config.horizon : 0; }
int slicesim_scenario_num_attacks(const slicesim_scenario* s) {
  return s ? static_cast<int>(s->config.attacks.size()) : 0;
}

slicesim_status slicesim_scenario_clear_attacks(slicesim_scenario* scenario) {
  if (scenario == nullptr) return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "null scenario");
  scenario->config.attacks.clear();
  return SLICESIM_OK;
}

slicesim_status slicesim_scenario_add_attack(slicesim_scenario* scenario, int node, int slice,
                                             int start_slot, int end_slot, double attenuation) {
  if (scenario == nullptr) return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "null scenario");
  return guarded([&] {
    slicesim::AttackEvent event;
    event.target_node = node;
    if (slice >= 0) event.target_slice = slice;
    event.start_slot = start_slot;
    if (end_slot >= 0) event.end_slot = end_slot;
    event.attenuation = attenuation;
    scenario->config.attacks.push_back(event);
    slicesim::validate_config(scenario->config);
  });
}

slicesim_status slicesim_run(const slicesim_scenario* scenario,
                             const slicesim_run_options* options, slicesim_result** out) {
  if (scenario == nullptr || options == nullptr || out == nullptr) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (options->algorithm != SLICESIM_ALG_LEARNING && options->algorithm != SLICESIM_ALG_BASELINE) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT,
                        "algorithm must be learning (0) or baseline (1)");
  }
  return guarded([&] {
    slicesim::SimulationOptions run_options;
    run_options.seed = options->seed;
    run_options.algorithm = options->algorithm == SLICESIM_ALG_BASELINE
                                ? slicesim::Algorithm::Baseline
                                : slicesim::Algorithm::Learning;
    run_options.exact_gradients = options->exact_gradients != 0;
    auto* result = new slicesim_result;
    result->seed = options->seed;
    result->timeline = slicesim::run_simulation(scenario->config, run_options);
    *out = result;
  });
}

void slicesim_result_free(slicesim_result* result) { delete result; }

int slicesim_result_num_rows(const slicesim_result* result) {
  return result ? static_cast<int>(result->timeline.rows.size()) : 0;
}

slicesim_status slicesim_result_row(const slicesim_result* result, int index, slicesim_row* out) {
  if (result == nullptr || out == nullptr) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (index < 0 || index >= static_cast<int>(result->timeline.rows.size())) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "row index out of range");
  }
  const slicesim::MetricsRow& row = result->timeline.rows[index];
  out->slot = row.slot;
  out->total_utility = row.total_utility;
  out->primal_residual = row.primal_residual;
  out->dual_residual = row.dual_residual;
  out->admm_iterations = row.admm_iterations;
  out->num_flagged_nodes = static_cast<int>(row.flagged_nodes.size());
  out->allocation_checksum = row.allocation_checksum;
  return SLICESIM_OK;
}

slicesim_status slicesim_result_flagged_nodes(const slicesim_result* result, int index,
                                              int* buffer, int buffer_length, int* out_count) {
  if (result == nullptr || out_count == nullptr) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (index < 0 || index >= static_cast<int>(result->timeline.rows.size())) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "row index out of range");
  }
  const auto& flagged = result->timeline.rows[index].flagged_nodes;
  *out_count = static_cast<int>(flagged.size());
  if (buffer == nullptr) return SLICESIM_OK;
  if (buffer_length < static_cast<int>(flagged.size())) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "flagged-node buffer too small");
  }
  for (std::size_t n = 0; n < flagged.size(); ++n) buffer[n] = flagged[n];
  return SLICESIM_OK;
}

slicesim_status slicesim_result_final_allocation(const slicesim_result* result, double* buffer,
                                                 size_t buffer_length) {
  if (result == nullptr || buffer == nullptr) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (result->timeline.deployed.empty()) {
    return record_error(SLICESIM_ERR_VALIDATION, "empty timeline");
  }
  const auto flat = result->timeline.deployed.back().flat();
  if (buffer_length < flat.size()) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "allocation buffer too small");
  }
  std::memcpy(buffer, flat.data(), flat.size() * sizeof(double));
  return SLICESIM_OK;
}

int slicesim_result_all_feasible(const slicesim_result* result) {
  return result != nullptr && result->timeline.all_feasible ? 1 : 0;
}

slicesim_status slicesim_result_csv(const slicesim_result* result, char** out) {
  if (result == nullptr || out == nullptr) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    std::string csv;
    slicesim::append_run_csv(csv, result->timeline, result->seed);
    *out = copy_string(csv);
  });
}

const char* slicesim_run_csv_header(void) {
  static const std::string header = slicesim::run_csv_header();
  return header.c_str();
}

slicesim_status slicesim_oracle_value(const slicesim_scenario* scenario, uint64_t seed,
                                      int attacked_regime, double* out_value) {
  if (scenario == nullptr || out_value == nullptr) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const slicesim::GroundTruth gt = slicesim::make_ground_truth(
        scenario->config, slicesim::derive_stream(seed, "ground-truth"));
    *out_value =
        slicesim::solve_optimal(gt, scenario->config, attacked_regime != 0).value;
  });
}

slicesim_status slicesim_sweep_csv(const slicesim_scenario* scenario, const int* attacked_counts,
                                   int num_counts, int num_seeds, char** out) {
  if (scenario == nullptr || attacked_counts == nullptr || out == nullptr) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (num_counts < 1) {
    return record_error(SLICESIM_ERR_INVALID_ARGUMENT, "at least one attacked count is required");
  }
  return guarded([&] {
    slicesim::SweepSpec spec;
    spec.attacked_counts.assign(attacked_counts, attacked_counts + num_counts);
    spec.num_seeds = num_seeds;
    const auto rows = slicesim::run_sweep(scenario->config, spec);
    *out = copy_string(slicesim::sweep_to_csv(rows));
  });
}

}  // extern "C"
