#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "medfog/pricing.hpp"
#include "medfog/rng.hpp"
#include "medfog/system.hpp"

namespace medfog {

/// Knobs for the random scenario generator. Default ranges follow the
/// simulation tables: data 1-3 MB, CPU 100-1000 megacycles, LD-FS
/// distance 50-100 m, criticality uniform (the lower bound is kept off
/// zero because a zero-criticality patient has an unbounded latency
/// budget and divides by zero).
struct ScenarioConfig {
  int num_patients = 20;
  int num_fs = 8;
  std::array<double, 2> data_mb_range{1.0, 3.0};
  std::array<double, 2> cpu_megacycles_range{100.0, 1000.0};
  std::array<double, 2> distance_m_range{50.0, 100.0};
  std::array<double, 2> criticality_range{0.01, 1.0};
  std::optional<double> criticality_median;  // engages the median-split sampler
  SystemParams params;
  PricingConfig pricing;
  std::uint64_t seed = 1;

  bool operator==(const ScenarioConfig&) const = default;

  void validate() const {
    auto range_ok = [](const std::array<double, 2>& r) { return r[0] <= r[1]; };
    if (num_patients < 0) throw std::invalid_argument("ScenarioConfig: num_patients must be >= 0");
    if (num_fs < 1) throw std::invalid_argument("ScenarioConfig: num_fs must be >= 1");
    if (!range_ok(data_mb_range) || !range_ok(cpu_megacycles_range) ||
        !range_ok(distance_m_range) || !range_ok(criticality_range))
      throw std::invalid_argument("ScenarioConfig: ranges must satisfy lo <= hi");
    if (!(criticality_range[0] > 0.0) || !(criticality_range[1] <= 1.0))
      throw std::invalid_argument("ScenarioConfig: criticality range must lie in (0, 1]");
    if (criticality_median && !(*criticality_median > 0.0 && *criticality_median < 1.0))
      throw std::invalid_argument("ScenarioConfig: criticality_median must lie in (0, 1)");
    params.validate();
  }
};

struct Provenance {
  std::uint64_t seed = 0;
  std::optional<ScenarioConfig> config;

  bool operator==(const Provenance&) const = default;
};

/// A fully materialized problem instance: P patients, F servers, system
/// constants and pricing.
struct Scenario {
  std::vector<PatientProfile> profiles;
  SystemParams params;
  PricingConfig pricing;
  int num_fs = 1;
  Provenance provenance;

  bool operator==(const Scenario&) const = default;

  int num_patients() const { return static_cast<int>(profiles.size()); }

  void validate() const {
    params.validate();
    if (num_fs < 1) throw std::invalid_argument("Scenario: num_fs must be >= 1");
    if (auto bad = validate_pricing(pricing, num_fs, num_patients()))
      throw std::invalid_argument("Scenario: pricing invalid: " + *bad);
    for (int p = 0; p < num_patients(); ++p) {
      if (profiles[p].id != p)
        throw std::invalid_argument("Scenario: patient ids must be 0..P-1 in order");
      profiles[p].validate(num_fs);
    }
  }
};

namespace detail {

/// Draws one patient from its own substream. The draw order (data, cpu,
/// criticality, then distances) is fixed: adding servers extends the
/// distance list without disturbing earlier draws, and sweeps over P
/// reuse patient streams unchanged.
inline PatientProfile sample_patient(const ScenarioConfig& cfg, std::uint64_t patient_id,
                                     int num_patients) {
  SplitMix64 rng = SplitMix64::substream(cfg.seed, patient_id);
  PatientProfile prof;
  prof.id = static_cast<int>(patient_id);
  prof.data_mb = rng.uniform(cfg.data_mb_range[0], cfg.data_mb_range[1]);
  prof.cpu_megacycles = rng.uniform(cfg.cpu_megacycles_range[0], cfg.cpu_megacycles_range[1]);
  const double u = rng.next_double_open();  // in (0,1), shared by both samplers
  if (cfg.criticality_median) {
    const double med = *cfg.criticality_median;
    const int mid = num_patients / 2;
    if (prof.id == mid)
      prof.criticality = med;
    else if (prof.id < mid)
      prof.criticality = med * u;                  // strictly below the median
    else
      prof.criticality = med + (1.0 - med) * u;    // strictly above
  } else {
    prof.criticality = cfg.criticality_range[0] +
                       (cfg.criticality_range[1] - cfg.criticality_range[0]) * u;
  }
  prof.distance_m.resize(static_cast<std::size_t>(cfg.num_fs));
  for (int f = 0; f < cfg.num_fs; ++f)
    prof.distance_m[static_cast<std::size_t>(f)] =
        rng.uniform(cfg.distance_m_range[0], cfg.distance_m_range[1]);
  return prof;
}

}  // namespace detail

/// Deterministically generates a scenario from a config and its seed.
inline Scenario generate(const ScenarioConfig& cfg) {
  cfg.validate();
  if (auto bad = validate_pricing(cfg.pricing, cfg.num_fs, cfg.num_patients))
    throw std::invalid_argument("generate: pricing invalid: " + *bad);
  Scenario s;
  s.params = cfg.params;
  s.pricing = cfg.pricing;
  s.num_fs = cfg.num_fs;
  s.provenance = {cfg.seed, cfg};
  s.profiles.reserve(static_cast<std::size_t>(cfg.num_patients));
  for (int p = 0; p < cfg.num_patients; ++p)
    s.profiles.push_back(detail::sample_patient(cfg, static_cast<std::uint64_t>(p),
                                                cfg.num_patients));
  return s;
}

/// Generates a scenario whose middle patient carries exactly `median`
/// criticality, earlier patients sample below it and later ones above.
inline Scenario generate_with_median(ScenarioConfig cfg, double median) {
  cfg.criticality_median = median;
  return generate(cfg);
}

}  // namespace medfog
