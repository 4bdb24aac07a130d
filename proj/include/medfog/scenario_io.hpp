#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "medfog/scenario.hpp"

namespace medfog {

inline constexpr int kScenarioSchemaVersion = 1;

namespace detail {

using nlohmann::json;

inline const json& require_field(const json& j, const std::string& ctx, const std::string& name) {
  auto it = j.find(name);
  if (it == j.end())
    throw std::runtime_error("scenario: missing field '" + ctx + name + "'");
  return *it;
}

inline double require_number(const json& j, const std::string& ctx, const std::string& name) {
  const json& v = require_field(j, ctx, name);
  if (!v.is_number())
    throw std::runtime_error("scenario: field '" + ctx + name + "' must be a number");
  return v.get<double>();
}

inline json params_to_json(const SystemParams& p) {
  return json{{"bandwidth_hz", p.bandwidth_hz},
              {"noise_dbm", p.noise_dbm},
              {"tx_power_watts", p.tx_power_watts},
              {"path_loss_exponent", p.path_loss_exponent},
              {"fog_capacity_hz", p.fog_capacity_hz},
              {"local_capacity_hz", p.local_capacity_hz},
              {"latency_budget_s", p.latency_budget_s},
              {"lambda1", p.lambda1},
              {"lambda2", p.lambda2}};
}

inline SystemParams params_from_json(const json& j, const std::string& ctx) {
  SystemParams p;
  p.bandwidth_hz = require_number(j, ctx, "bandwidth_hz");
  p.noise_dbm = require_number(j, ctx, "noise_dbm");
  p.tx_power_watts = require_number(j, ctx, "tx_power_watts");
  p.path_loss_exponent = require_number(j, ctx, "path_loss_exponent");
  p.fog_capacity_hz = require_number(j, ctx, "fog_capacity_hz");
  p.local_capacity_hz = require_number(j, ctx, "local_capacity_hz");
  p.latency_budget_s = require_number(j, ctx, "latency_budget_s");
  p.lambda1 = require_number(j, ctx, "lambda1");
  p.lambda2 = require_number(j, ctx, "lambda2");
  return p;
}

inline json pricing_to_json(const PricingConfig& p) {
  return json{{"fog_price", p.fog_price},
              {"local_price", p.local_price},
              {"per_megacycle_cost", p.per_megacycle_cost},
              {"fixed_fs_cost", p.fixed_fs_cost},
              {"m_max", p.m_max},
              {"l_max", p.l_max},
              {"beta_max_megacycles", p.beta_max_megacycles}};
}

inline PricingConfig pricing_from_json(const json& j, const std::string& ctx) {
  PricingConfig p;
  p.fog_price = require_number(j, ctx, "fog_price");
  p.local_price = require_number(j, ctx, "local_price");
  p.per_megacycle_cost = require_number(j, ctx, "per_megacycle_cost");
  p.fixed_fs_cost = require_number(j, ctx, "fixed_fs_cost");
  p.m_max = require_number(j, ctx, "m_max");
  p.l_max = require_number(j, ctx, "l_max");
  p.beta_max_megacycles = require_number(j, ctx, "beta_max_megacycles");
  return p;
}

inline json config_to_json(const ScenarioConfig& c) {
  json j{{"num_patients", c.num_patients},
         {"num_fs", c.num_fs},
         {"data_mb_range", c.data_mb_range},
         {"cpu_megacycles_range", c.cpu_megacycles_range},
         {"distance_m_range", c.distance_m_range},
         {"criticality_range", c.criticality_range},
         {"params", params_to_json(c.params)},
         {"pricing", pricing_to_json(c.pricing)},
         {"seed", c.seed}};
  if (c.criticality_median) j["criticality_median"] = *c.criticality_median;
  return j;
}

inline std::array<double, 2> range_from_json(const json& j, const std::string& ctx,
                                             const std::string& name) {
  const json& v = require_field(j, ctx, name);
  if (!v.is_array() || v.size() != 2)
    throw std::runtime_error("scenario: field '" + ctx + name + "' must be a [lo, hi] pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

inline ScenarioConfig config_from_json(const json& j, const std::string& ctx) {
  ScenarioConfig c;
  c.num_patients = static_cast<int>(require_number(j, ctx, "num_patients"));
  c.num_fs = static_cast<int>(require_number(j, ctx, "num_fs"));
  c.data_mb_range = range_from_json(j, ctx, "data_mb_range");
  c.cpu_megacycles_range = range_from_json(j, ctx, "cpu_megacycles_range");
  c.distance_m_range = range_from_json(j, ctx, "distance_m_range");
  c.criticality_range = range_from_json(j, ctx, "criticality_range");
  if (auto it = j.find("criticality_median"); it != j.end())
    c.criticality_median = it->get<double>();
  c.params = params_from_json(require_field(j, ctx, "params"), ctx + "params.");
  c.pricing = pricing_from_json(require_field(j, ctx, "pricing"), ctx + "pricing.");
  c.seed = require_field(j, ctx, "seed").get<std::uint64_t>();
  return c;
}

}  // namespace detail

inline void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  using nlohmann::json;
  json j;
  j["schema_version"] = kScenarioSchemaVersion;
  j["num_fs"] = s.num_fs;
  j["params"] = detail::params_to_json(s.params);
  j["pricing"] = detail::pricing_to_json(s.pricing);
  json patients = json::array();
  for (const auto& p : s.profiles) {
    patients.push_back(json{{"id", p.id},
                            {"criticality", p.criticality},
                            {"data_mb", p.data_mb},
                            {"cpu_megacycles", p.cpu_megacycles},
                            {"distance_m", p.distance_m}});
  }
  j["patients"] = std::move(patients);
  json prov{{"seed", s.provenance.seed}};
  if (s.provenance.config) prov["config"] = detail::config_to_json(*s.provenance.config);
  j["provenance"] = std::move(prov);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << j.dump(2) << '\n';
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  using nlohmann::json;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("scenario: " + path.string() + " is not valid JSON: " + e.what());
  }

  const int version = static_cast<int>(detail::require_number(j, "", "schema_version"));
  if (version != kScenarioSchemaVersion)
    throw std::runtime_error("scenario: unsupported schema_version " + std::to_string(version));

  Scenario s;
  s.num_fs = static_cast<int>(detail::require_number(j, "", "num_fs"));
  s.params = detail::params_from_json(detail::require_field(j, "", "params"), "params.");
  s.pricing = detail::pricing_from_json(detail::require_field(j, "", "pricing"), "pricing.");

  const json& patients = detail::require_field(j, "", "patients");
  if (!patients.is_array()) throw std::runtime_error("scenario: field 'patients' must be an array");
  s.profiles.reserve(patients.size());
  for (std::size_t i = 0; i < patients.size(); ++i) {
    const std::string ctx = "patients[" + std::to_string(i) + "].";
    const json& pj = patients[i];
    PatientProfile prof;
    prof.id = static_cast<int>(detail::require_number(pj, ctx, "id"));
    prof.criticality = detail::require_number(pj, ctx, "criticality");
    prof.data_mb = detail::require_number(pj, ctx, "data_mb");
    prof.cpu_megacycles = detail::require_number(pj, ctx, "cpu_megacycles");
    const json& dist = detail::require_field(pj, ctx, "distance_m");
    if (!dist.is_array())
      throw std::runtime_error("scenario: field '" + ctx + "distance_m' must be an array");
    prof.distance_m = dist.get<std::vector<double>>();
    s.profiles.push_back(std::move(prof));
  }

  if (auto it = j.find("provenance"); it != j.end()) {
    s.provenance.seed = detail::require_field(*it, "provenance.", "seed").get<std::uint64_t>();
    if (auto cit = it->find("config"); cit != it->end())
      s.provenance.config = detail::config_from_json(*cit, "provenance.config.");
  }

  s.validate();
  return s;
}

}  // namespace medfog
