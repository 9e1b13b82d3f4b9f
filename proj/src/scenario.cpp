#include "slicesim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "slicesim/errors.hpp"
#include "slicesim/rng.hpp"
#include "toml_lite.hpp"

namespace slicesim {

namespace {

using toml_lite::Table;
using toml_lite::Value;

[[noreturn]] void invalid(const std::string& message) { throw ValidationError(message); }

double require_number(const Table& table, const std::string& where, const std::string& key) {
  auto it = table.entries.find(key);
  if (it == table.entries.end()) invalid(where + " requires key '" + key + "'");
  if (it->second.type != Value::Type::Number) invalid(where + "." + key + " must be a number");
  return it->second.number;
}

double number_or(const Table& table, const std::string& where, const std::string& key,
                 double fallback) {
  auto it = table.entries.find(key);
  if (it == table.entries.end()) return fallback;
  if (it->second.type != Value::Type::Number) invalid(where + "." + key + " must be a number");
  return it->second.number;
}

int as_int(double v, const std::string& what) {
  if (std::floor(v) != v) invalid(what + " must be an integer");
  return static_cast<int>(v);
}

std::vector<double> number_array(const Value& value, const std::string& what) {
  if (value.type != Value::Type::Array) invalid(what + " must be an array");
  std::vector<double> out;
  out.reserve(value.array.size());
  for (const Value& item : value.array) {
    if (item.type != Value::Type::Number) invalid(what + " must contain only numbers");
    out.push_back(item.number);
  }
  return out;
}

// Reads a J*K (or I*K) matrix given either `uniform = c` or `values = [...]`.
std::vector<double> load_matrix(const Table& table, const std::string& where, int rows, int cols) {
  const bool has_uniform = table.has("uniform");
  const bool has_values = table.has("values");
  if (has_uniform == has_values) {
    invalid("[" + where + "] requires exactly one of 'uniform' or 'values'");
  }
  if (has_uniform) {
    double c = require_number(table, where, "uniform");
    return std::vector<double>(static_cast<std::size_t>(rows) * cols, c);
  }
  auto values = number_array(table.entries.at("values"), where + ".values");
  if (values.size() != static_cast<std::size_t>(rows) * cols) {
    invalid(where + ".values must have length " + std::to_string(rows) + "*" +
            std::to_string(cols));
  }
  return values;
}

void reject_unknown_keys(const Table& table, const std::string& where,
                         std::initializer_list<const char*> known) {
  for (const auto& [key, value] : table.entries) {
    if (std::find_if(known.begin(), known.end(),
                     [&](const char* k) { return key == k; }) == known.end()) {
      invalid("unknown key '" + key + "' in [" + where + "]");
    }
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string quote_string(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::vector<ResourceKind> default_resource_kinds(int count) {
  static const char* names[] = {"uplink_radio", "downlink_radio", "compute"};
  std::vector<ResourceKind> kinds;
  kinds.reserve(count);
  for (int k = 0; k < count; ++k) {
    std::string label = k < 3 ? names[k] : "kind_" + std::to_string(k);
    kinds.push_back(ResourceKind{k, std::move(label)});
  }
  return kinds;
}

ScenarioConfig load_scenario(const std::string& text) {
  const toml_lite::Document doc = toml_lite::parse(text);
  ScenarioConfig cfg;

  if (!doc.has_table("topology")) invalid("scenario requires a [topology] table");
  const Table& topo = doc.tables.at("topology");
  reject_unknown_keys(topo, "topology", {"num_slices", "num_nodes", "horizon", "resource_kinds",
                                         "num_kinds"});
  cfg.num_slices = as_int(require_number(topo, "topology", "num_slices"), "num_slices");
  cfg.num_nodes = as_int(require_number(topo, "topology", "num_nodes"), "num_nodes");
  cfg.horizon = as_int(number_or(topo, "topology", "horizon", 1), "horizon");

  if (topo.has("resource_kinds") && topo.has("num_kinds")) {
    invalid("specify either resource_kinds or num_kinds, not both");
  }
  if (topo.has("resource_kinds")) {
    const Value& kinds = topo.entries.at("resource_kinds");
    if (kinds.type != Value::Type::Array) invalid("topology.resource_kinds must be an array");
    int index = 0;
    for (const Value& item : kinds.array) {
      if (item.type != Value::Type::String) {
        invalid("topology.resource_kinds must contain only strings");
      }
      cfg.resource_kinds.push_back(ResourceKind{index++, item.text});
    }
  } else if (topo.has("num_kinds")) {
    int k = as_int(require_number(topo, "topology", "num_kinds"), "num_kinds");
    if (k < 1) invalid("num_kinds must be >= 1");
    cfg.resource_kinds = default_resource_kinds(k);
  } else {
    cfg.resource_kinds = default_resource_kinds(3);
  }
  const int num_kinds = cfg.num_kinds();

  if (!doc.has_table("capacity")) invalid("scenario requires a [capacity] table");
  const Table& capacity = doc.tables.at("capacity");
  reject_unknown_keys(capacity, "capacity", {"uniform", "values"});
  cfg.node_capacity = load_matrix(capacity, "capacity", cfg.num_nodes, num_kinds);

  if (doc.has_table("sla")) {
    const Table& sla = doc.tables.at("sla");
    reject_unknown_keys(sla, "sla", {"uniform", "values"});
    cfg.sla_budget = load_matrix(sla, "sla", cfg.num_slices, num_kinds);
  } else if (cfg.num_slices > 0 && !cfg.node_capacity.empty()) {
    // Even share of total system capacity per kind.
    cfg.sla_budget.assign(static_cast<std::size_t>(cfg.num_slices) * num_kinds, 0.0);
    for (int k = 0; k < num_kinds; ++k) {
      double total = 0.0;
      for (int j = 0; j < cfg.num_nodes; ++j) {
        total += cfg.node_capacity[static_cast<std::size_t>(j) * num_kinds + k];
      }
      const double share = total / cfg.num_slices;
      for (int i = 0; i < cfg.num_slices; ++i) {
        cfg.sla_budget[static_cast<std::size_t>(i) * num_kinds + k] = share;
      }
    }
  }

  if (doc.has_table("alpha")) {
    const Table& alpha = doc.tables.at("alpha");
    reject_unknown_keys(alpha, "alpha", {"mode", "low", "high", "seed", "values"});
    std::string mode = "uniform";
    if (alpha.has("mode")) {
      const Value& m = alpha.entries.at("mode");
      if (m.type != Value::Type::String) invalid("alpha.mode must be a string");
      mode = m.text;
    }
    if (mode == "uniform") {
      cfg.alpha.mode = AlphaSpec::Mode::Uniform;
      cfg.alpha.low = number_or(alpha, "alpha", "low", 1.0);
      cfg.alpha.high = number_or(alpha, "alpha", "high", 10.0);
      if (alpha.has("seed")) {
        const double seed = require_number(alpha, "alpha", "seed");
        if (std::floor(seed) != seed || seed < 0) {
          invalid("alpha.seed must be a nonnegative integer");
        }
        cfg.alpha.seed = static_cast<std::uint64_t>(seed);
      }
    } else if (mode == "explicit") {
      cfg.alpha.mode = AlphaSpec::Mode::Explicit;
      if (!alpha.has("values")) invalid("alpha mode 'explicit' requires 'values'");
      cfg.alpha.values = number_array(alpha.entries.at("values"), "alpha.values");
    } else {
      invalid("alpha.mode must be 'uniform' or 'explicit'");
    }
  }

  if (doc.has_table("admm")) {
    const Table& admm = doc.tables.at("admm");
    reject_unknown_keys(admm, "admm", {"rho", "eps_primal", "eps_dual", "max_iters"});
    cfg.admm.rho = number_or(admm, "admm", "rho", cfg.admm.rho);
    cfg.admm.eps_primal = number_or(admm, "admm", "eps_primal", cfg.admm.eps_primal);
    cfg.admm.eps_dual = number_or(admm, "admm", "eps_dual", cfg.admm.eps_dual);
    cfg.admm.max_iters =
        as_int(number_or(admm, "admm", "max_iters", cfg.admm.max_iters), "max_iters");
  }

  cfg.learning.dither_slots = num_kinds + 2;
  if (doc.has_table("learning")) {
    const Table& learning = doc.tables.at("learning");
    reject_unknown_keys(learning, "learning",
                        {"forgetting", "prior_mean", "prior_covariance_scale", "dither_magnitude",
                         "dither_slots", "observation_noise_sigma"});
    cfg.learning.forgetting = number_or(learning, "learning", "forgetting", cfg.learning.forgetting);
    cfg.learning.prior_mean = number_or(learning, "learning", "prior_mean", cfg.learning.prior_mean);
    cfg.learning.prior_covariance_scale = number_or(learning, "learning", "prior_covariance_scale",
                                                    cfg.learning.prior_covariance_scale);
    cfg.learning.dither_magnitude =
        number_or(learning, "learning", "dither_magnitude", cfg.learning.dither_magnitude);
    cfg.learning.dither_slots = as_int(
        number_or(learning, "learning", "dither_slots", cfg.learning.dither_slots), "dither_slots");
    cfg.learning.observation_noise_sigma = number_or(
        learning, "learning", "observation_noise_sigma", cfg.learning.observation_noise_sigma);
  }

  if (doc.has_table("detection")) {
    const Table& detection = doc.tables.at("detection");
    reject_unknown_keys(detection, "detection", {"threshold", "window"});
    cfg.detection.threshold =
        number_or(detection, "detection", "threshold", cfg.detection.threshold);
    cfg.detection.window =
        as_int(number_or(detection, "detection", "window", cfg.detection.window), "window");
  }

  auto attacks = doc.table_arrays.find("attacks");
  if (attacks != doc.table_arrays.end()) {
    for (const Table& entry : attacks->second) {
      reject_unknown_keys(entry, "attacks",
                          {"node", "slice", "start_slot", "end_slot", "attenuation"});
      AttackEvent event;
      event.target_node = as_int(require_number(entry, "attacks", "node"), "attack node");
      if (entry.has("slice")) {
        event.target_slice = as_int(require_number(entry, "attacks", "slice"), "attack slice");
      }
      event.start_slot =
          as_int(number_or(entry, "attacks", "start_slot", 0), "attack start_slot");
      if (entry.has("end_slot")) {
        event.end_slot = as_int(require_number(entry, "attacks", "end_slot"), "attack end_slot");
      }
      event.attenuation = number_or(entry, "attacks", "attenuation", 1.0);
      cfg.attacks.push_back(event);
    }
  }

  for (const auto& [name, table] : doc.tables) {
    if (name != "topology" && name != "capacity" && name != "sla" && name != "alpha" &&
        name != "admm" && name != "learning" && name != "detection") {
      invalid("unknown table [" + name + "]");
    }
  }
  for (const auto& [name, tables] : doc.table_arrays) {
    if (name != "attacks") invalid("unknown table array [[" + name + "]]");
  }

  validate_config(cfg);
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

void validate_config(const ScenarioConfig& cfg) {
  if (cfg.num_slices < 1) invalid("num_slices must be >= 1");
  if (cfg.num_nodes < 1) invalid("num_nodes must be >= 1");
  if (cfg.horizon < 1) invalid("horizon must be >= 1");
  if (cfg.resource_kinds.empty()) invalid("at least one resource kind is required");

  std::set<std::string> labels;
  for (const ResourceKind& kind : cfg.resource_kinds) {
    if (!labels.insert(kind.label).second) invalid("resource kind labels must be unique");
  }

  const int num_kinds = cfg.num_kinds();
  if (cfg.node_capacity.size() != static_cast<std::size_t>(cfg.num_nodes) * num_kinds) {
    invalid("node_capacity must have length num_nodes * num_kinds");
  }
  for (double c : cfg.node_capacity) {
    if (!(c >= 0.0) || !std::isfinite(c)) invalid("node_capacity must be nonnegative");
  }
  if (cfg.sla_budget.size() != static_cast<std::size_t>(cfg.num_slices) * num_kinds) {
    invalid("sla_budget must have length num_slices * num_kinds");
  }
  for (double b : cfg.sla_budget) {
    if (!(b >= 0.0) || !std::isfinite(b)) invalid("sla_budget must be nonnegative");
  }

  if (cfg.alpha.mode == AlphaSpec::Mode::Uniform) {
    if (!(cfg.alpha.low <= cfg.alpha.high)) invalid("alpha low must be <= high");
    if (!(cfg.alpha.low >= 0.0)) invalid("alpha support must be nonnegative");
  } else {
    const std::size_t expected =
        static_cast<std::size_t>(cfg.num_slices) * cfg.num_nodes * num_kinds;
    if (cfg.alpha.values.size() != expected) {
      invalid("alpha values must have length num_slices * num_nodes * num_kinds");
    }
    for (double a : cfg.alpha.values) {
      if (!(a >= 0.0) || !std::isfinite(a)) invalid("alpha values must be nonnegative");
    }
  }

  for (const AttackEvent& event : cfg.attacks) {
    if (event.target_node < 0 || event.target_node >= cfg.num_nodes) {
      invalid("attack node out of range");
    }
    if (event.target_slice &&
        (*event.target_slice < 0 || *event.target_slice >= cfg.num_slices)) {
      invalid("attack slice out of range");
    }
    if (event.start_slot < 0) invalid("attack start_slot must be >= 0");
    if (event.end_slot && !(event.start_slot < *event.end_slot)) {
      invalid("attack start_slot must be < end_slot");
    }
    if (!(event.attenuation >= 0.0 && event.attenuation <= 1.0)) {
      invalid("attack attenuation must be in [0, 1]");
    }
  }

  if (!(cfg.admm.rho > 0.0)) invalid("rho must be > 0");
  if (!(cfg.admm.eps_primal > 0.0)) invalid("eps_primal must be > 0");
  if (!(cfg.admm.eps_dual > 0.0)) invalid("eps_dual must be > 0");
  if (cfg.admm.max_iters < 1) invalid("max_iters must be >= 1");

  if (!(cfg.learning.forgetting > 0.0 && cfg.learning.forgetting <= 1.0)) {
    invalid("forgetting must be in (0, 1]");
  }
  if (!(cfg.learning.prior_covariance_scale > 0.0)) {
    invalid("prior_covariance_scale must be > 0");
  }
  if (!(cfg.learning.dither_magnitude >= 0.0)) invalid("dither_magnitude must be nonnegative");
  if (cfg.learning.dither_slots < 0) invalid("dither_slots must be >= 0");
  if (!(cfg.learning.observation_noise_sigma >= 0.0)) {
    invalid("observation_noise_sigma must be nonnegative");
  }

  if (!(cfg.detection.threshold > 0.0 && cfg.detection.threshold < 1.0)) {
    invalid("threshold must be in (0, 1)");
  }
  if (cfg.detection.window < 1) invalid("window must be >= 1");
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "[topology]\n";
  out << "num_slices = " << cfg.num_slices << "\n";
  out << "num_nodes = " << cfg.num_nodes << "\n";
  out << "horizon = " << cfg.horizon << "\n";
  out << "resource_kinds = [";
  for (std::size_t k = 0; k < cfg.resource_kinds.size(); ++k) {
    if (k > 0) out << ", ";
    out << quote_string(cfg.resource_kinds[k].label);
  }
  out << "]\n";

  auto write_matrix = [&out](const std::vector<double>& values) {
    out << "values = [";
    for (std::size_t n = 0; n < values.size(); ++n) {
      if (n > 0) out << ", ";
      out << format_double(values[n]);
    }
    out << "]\n";
  };

  out << "\n[capacity]\n";
  write_matrix(cfg.node_capacity);
  out << "\n[sla]\n";
  write_matrix(cfg.sla_budget);

  out << "\n[alpha]\n";
  if (cfg.alpha.mode == AlphaSpec::Mode::Uniform) {
    out << "mode = \"uniform\"\n";
    out << "low = " << format_double(cfg.alpha.low) << "\n";
    out << "high = " << format_double(cfg.alpha.high) << "\n";
    if (cfg.alpha.seed) out << "seed = " << *cfg.alpha.seed << "\n";
  } else {
    out << "mode = \"explicit\"\n";
    write_matrix(cfg.alpha.values);
  }

  out << "\n[admm]\n";
  out << "rho = " << format_double(cfg.admm.rho) << "\n";
  out << "eps_primal = " << format_double(cfg.admm.eps_primal) << "\n";
  out << "eps_dual = " << format_double(cfg.admm.eps_dual) << "\n";
  out << "max_iters = " << cfg.admm.max_iters << "\n";

  out << "\n[learning]\n";
  out << "forgetting = " << format_double(cfg.learning.forgetting) << "\n";
  out << "prior_mean = " << format_double(cfg.learning.prior_mean) << "\n";
  out << "prior_covariance_scale = " << format_double(cfg.learning.prior_covariance_scale) << "\n";
  out << "dither_magnitude = " << format_double(cfg.learning.dither_magnitude) << "\n";
  out << "dither_slots = " << cfg.learning.dither_slots << "\n";
  out << "observation_noise_sigma = " << format_double(cfg.learning.observation_noise_sigma)
      << "\n";

  out << "\n[detection]\n";
  out << "threshold = " << format_double(cfg.detection.threshold) << "\n";
  out << "window = " << cfg.detection.window << "\n";

  for (const AttackEvent& event : cfg.attacks) {
    out << "\n[[attacks]]\n";
    out << "node = " << event.target_node << "\n";
    if (event.target_slice) out << "slice = " << *event.target_slice << "\n";
    out << "start_slot = " << event.start_slot << "\n";
    if (event.end_slot) out << "end_slot = " << *event.end_slot << "\n";
    out << "attenuation = " << format_double(event.attenuation) << "\n";
  }
  return out.str();
}

GroundTruth sample_ground_truth(const ScenarioConfig& cfg, std::uint64_t seed) {
  if (cfg.alpha.mode != AlphaSpec::Mode::Uniform) {
    invalid("alpha spec is not a sampling law");
  }
  Rng rng(seed);
  GroundTruth gt{Tensor3(cfg.num_slices, cfg.num_nodes, cfg.num_kinds())};
  for (double& a : gt.alpha.flat()) a = rng.uniform(cfg.alpha.low, cfg.alpha.high);
  return gt;
}

GroundTruth make_ground_truth(const ScenarioConfig& cfg, std::uint64_t seed) {
  if (cfg.alpha.mode == AlphaSpec::Mode::Explicit) {
    GroundTruth gt{Tensor3(cfg.num_slices, cfg.num_nodes, cfg.num_kinds())};
    std::copy(cfg.alpha.values.begin(), cfg.alpha.values.end(), gt.alpha.flat().begin());
    return gt;
  }
  return sample_ground_truth(cfg, cfg.alpha.seed.value_or(seed));
}

AllocationTensor baseline_allocation(const ScenarioConfig& cfg) {
  AllocationTensor x(cfg.num_slices, cfg.num_nodes, cfg.num_kinds());
  for (int i = 0; i < cfg.num_slices; ++i) {
    for (int j = 0; j < cfg.num_nodes; ++j) {
      for (int k = 0; k < cfg.num_kinds(); ++k) {
        x.at(i, j, k) = std::min(cfg.capacity(j, k) / cfg.num_slices,
                                 cfg.budget(i, k) / cfg.num_nodes);
      }
    }
  }
  return x;
}

FeasibilityReport validate_allocation(const AllocationTensor& x, const ScenarioConfig& cfg) {
  if (x.num_slices() != cfg.num_slices || x.num_nodes() != cfg.num_nodes ||
      x.num_kinds() != cfg.num_kinds()) {
    invalid("allocation shape does not match the scenario");
  }
  FeasibilityReport report;
  for (int j = 0; j < cfg.num_nodes; ++j) {
    for (int k = 0; k < cfg.num_kinds(); ++k) {
      report.max_capacity_violation =
          std::max(report.max_capacity_violation, x.node_sum(j, k) - cfg.capacity(j, k));
    }
  }
  for (int i = 0; i < cfg.num_slices; ++i) {
    for (int k = 0; k < cfg.num_kinds(); ++k) {
      report.max_budget_violation =
          std::max(report.max_budget_violation, x.slice_sum(i, k) - cfg.budget(i, k));
    }
  }
  bool all_finite = true;
  for (double v : x.flat()) {
    if (!std::isfinite(v)) all_finite = false;
    report.max_negativity = std::max(report.max_negativity, -v);
  }
  report.max_capacity_violation = std::max(report.max_capacity_violation, 0.0);
  report.max_budget_violation = std::max(report.max_budget_violation, 0.0);
  report.max_negativity = std::max(report.max_negativity, 0.0);
  report.feasible = all_finite && report.max_capacity_violation <= kFeasibilityTol &&
                    report.max_budget_violation <= kFeasibilityTol &&
                    report.max_negativity <= kFeasibilityTol;
  return report;
}

}  // namespace slicesim
