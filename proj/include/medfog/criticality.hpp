#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace medfog {

/// Static description of one body sensor: its medical weight and the
/// reference range of the measured parameter for a healthy person.
struct SensorSpec {
  std::string id;
  double medical_criticality = 1.0;  // x_s, unit-less weight, >= 0
  double theta_lower = 0.0;          // lower end of the normal range
  double theta_upper = 0.0;          // upper end of the normal range

  void validate() const {
    if (!(medical_criticality >= 0.0))
      throw std::invalid_argument("sensor " + id + ": medical_criticality must be >= 0");
    if (!(theta_upper > theta_lower))
      throw std::invalid_argument("sensor " + id + ": theta_upper must exceed theta_lower");
    if (std::abs(theta_upper) + std::abs(theta_lower) == 0.0)
      throw std::invalid_argument("sensor " + id + ": reference range must not be all-zero");
  }
};

/// One sampled value from a sensor.
struct SensorReading {
  std::string sensor_id;
  double theta = 0.0;  // sensed value, sensor-native units
  long time_slot = 0;

  void validate() const {
    if (!std::isfinite(theta))
      throw std::invalid_argument("reading from " + sensor_id + ": theta must be finite");
  }
};

/// Severity of one reading: normalized squared deviation from the healthy
/// range. Zero at the range midpoint, grows toward and beyond both ends.
inline double severity_index(const SensorReading& reading, const SensorSpec& spec) {
  spec.validate();
  reading.validate();
  const double hi = spec.theta_upper - reading.theta;
  const double lo = reading.theta - spec.theta_lower;
  const double denom = std::abs(spec.theta_upper) + std::abs(spec.theta_lower);
  return std::abs(hi * hi - lo * lo) / (denom * denom);
}

/// Severity weighted by the sensor's medical criticality class.
inline double overall_criticality(const SensorSpec& spec, double severity) {
  return spec.medical_criticality * severity;
}

/// Patient criticality: sum of the per-sensor weighted severities.
inline double patient_criticality(std::span<const double> contributions) {
  double sum = 0.0;
  for (double c : contributions) sum += c;
  return sum;
}

/// Optional rescaling of a raw criticality into [0, 1]. Pass the largest
/// criticality the deployment can produce; without it the value is
/// returned unchanged.
inline double normalize_criticality(double rho, std::optional<double> rho_max = std::nullopt) {
  if (!rho_max) return rho;
  if (!(*rho_max > 0.0)) throw std::invalid_argument("rho_max must be positive");
  return rho / *rho_max;
}

}  // namespace medfog
