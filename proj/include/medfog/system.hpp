#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace medfog {

inline constexpr double kBitsPerMegabyte = 8e6;       // decimal megabyte
inline constexpr double kCyclesPerMegacycle = 1e6;

/// dBm -> watts.
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// watts -> dBm.
inline double watts_to_dbm(double watts) {
  if (!(watts > 0.0)) throw std::invalid_argument("watts_to_dbm: power must be positive");
  return 10.0 * std::log10(watts) + 30.0;
}

/// Network- and compute-side constants shared by every patient. Values
/// that arrive in field units (noise in dBm) are kept as given and
/// converted on use, so files round-trip losslessly.
struct SystemParams {
  double bandwidth_hz = 5e6;        // channel bandwidth Omega
  double noise_dbm = -100.0;        // beyond-WBAN noise floor
  double tx_power_watts = 0.1;      // LD transmit power
  double path_loss_exponent = 3.0;
  double fog_capacity_hz = 22.4e9;  // FS CPU cycles/s, shared equally
  double local_capacity_hz = 2.4e9; // LD CPU cycles/s
  double latency_budget_s = 0.25;   // delta; per-patient budget is delta/rho
  double lambda1 = 1.0;             // weight on medical-center profit
  double lambda2 = 1.0;             // weight on patient cost

  bool operator==(const SystemParams&) const = default;

  double noise_watts() const { return dbm_to_watts(noise_dbm); }

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0)) throw std::invalid_argument(std::string("SystemParams: ") + name + " must be positive");
    };
    positive(bandwidth_hz, "bandwidth_hz");
    positive(tx_power_watts, "tx_power_watts");
    positive(path_loss_exponent, "path_loss_exponent");
    positive(fog_capacity_hz, "fog_capacity_hz");
    positive(local_capacity_hz, "local_capacity_hz");
    positive(latency_budget_s, "latency_budget_s");
    if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0))
      throw std::invalid_argument("SystemParams: lambda weights must be non-negative");
    if (std::abs(lambda1 + lambda2 - 2.0) > 1e-9)
      throw std::invalid_argument("SystemParams: lambda1 + lambda2 must equal 2");
  }
};

/// Per-patient demand for one time slot. Data size and CPU demand are
/// stored in the units the simulation tables use (MB, megacycles) and
/// exposed in SI-ish units through accessors.
struct PatientProfile {
  int id = 0;
  double criticality = 0.5;           // rho, in (0, 1]
  double data_mb = 2.0;               // eta
  double cpu_megacycles = 500.0;      // beta
  std::vector<double> distance_m;     // one entry per FS

  bool operator==(const PatientProfile&) const = default;

  double data_bits() const { return data_mb * kBitsPerMegabyte; }
  double cpu_cycles() const { return cpu_megacycles * kCyclesPerMegacycle; }

  void validate(int num_fs) const {
    const std::string tag = "patient " + std::to_string(id) + ": ";
    if (!(criticality > 0.0)) throw std::invalid_argument(tag + "criticality must be positive");
    if (!(data_mb >= 0.0)) throw std::invalid_argument(tag + "data_mb must be non-negative");
    if (!(cpu_megacycles > 0.0)) throw std::invalid_argument(tag + "cpu_megacycles must be positive");
    if (static_cast<int>(distance_m.size()) != num_fs)
      throw std::invalid_argument(tag + "distance_m must list one distance per FS");
    for (double d : distance_m)
      if (!(d > 0.0)) throw std::invalid_argument(tag + "distances must be positive");
  }
};

/// Time to run a task of `cpu_cycles` on the patient's local device.
inline double local_compute_time(double cpu_cycles, const SystemParams& params) {
  return cpu_cycles / params.local_capacity_hz;
}

/// Distance-based channel gain dist^(-exponent).
inline double channel_gain(double distance_m, double path_loss_exponent) {
  if (!(distance_m > 0.0)) throw std::invalid_argument("channel_gain: distance must be positive");
  return std::pow(distance_m, -path_loss_exponent);
}

/// Shannon capacity of a channel with the given SNR.
inline double shannon_rate(double bandwidth_hz, double snr) {
  return bandwidth_hz * std::log2(1.0 + snr);
}

/// Uplink rate between a patient and one FS.
inline double transmission_rate(const PatientProfile& profile, int fs_index,
                                const SystemParams& params) {
  const double gain = channel_gain(profile.distance_m.at(static_cast<std::size_t>(fs_index)),
                                   params.path_loss_exponent);
  return shannon_rate(params.bandwidth_hz, params.tx_power_watts * gain / params.noise_watts());
}

/// Time to push `data_bits` through a link of `rate_bps`.
inline double transmission_time(double data_bits, double rate_bps) {
  if (!(rate_bps > 0.0)) throw std::invalid_argument("transmission_time: rate must be positive");
  return data_bits / rate_bps;
}

/// Time to run a task on an FS shared equally by `occupancy` patients
/// (the patient itself included).
inline double fog_compute_time(double cpu_cycles, int occupancy, const SystemParams& params) {
  if (occupancy < 1)
    throw std::invalid_argument("fog_compute_time: occupancy must count the patient itself");
  return cpu_cycles * static_cast<double>(occupancy) / params.fog_capacity_hz;
}

}  // namespace medfog
