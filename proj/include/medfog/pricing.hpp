#pragma once

#include <optional>
#include <string>
#include <vector>

#include "medfog/system.hpp"

namespace medfog {

/// Flat-type pricing: the medical center charges per slot (l for local,
/// m for fog) and pays a per-megacycle compute fee plus a fixed fee per
/// leased FS. Defaults follow the simulation tables, where
/// m - l = g * beta_max holds with equality.
struct PricingConfig {
  double fog_price = 200.0;            // m, per patient-slot on an FS
  double local_price = 100.0;          // l, per patient-slot on the LD
  double per_megacycle_cost = 0.1;     // g, center's fee per megacycle at an FS
  double fixed_fs_cost = 0.0;          // k, per FS per slot
  double m_max = 200.0;
  double l_max = 100.0;
  double beta_max_megacycles = 1000.0; // largest CPU demand the center plans for

  bool operator==(const PricingConfig&) const = default;
};

/// Checks all pricing constraints for a deployment of F servers and P
/// patients. Returns std::nullopt when valid, otherwise the first
/// violated inequality by name. The profit-floor check m - l >= g*beta_max
/// + k*F/P is skipped for P = 0 (its per-patient amortization is
/// meaningless without patients).
inline std::optional<std::string> validate_pricing(const PricingConfig& p, int num_fs,
                                                   int num_patients) {
  if (!(p.local_price >= 0.0)) return "l >= 0 violated";
  if (!(p.local_price <= p.l_max)) return "l <= l_max violated";
  if (!(p.fog_price >= 0.0)) return "m >= 0 violated";
  if (!(p.fog_price <= p.m_max)) return "m <= m_max violated";
  if (!(p.fog_price > p.local_price)) return "m > l violated";
  if (!(p.per_megacycle_cost >= 0.0)) return "g >= 0 violated";
  if (!(p.fixed_fs_cost >= 0.0)) return "k >= 0 violated";
  if (!(p.beta_max_megacycles > 0.0)) return "beta_max > 0 violated";
  if (num_patients > 0) {
    const double floor = p.per_megacycle_cost * p.beta_max_megacycles +
                         p.fixed_fs_cost * static_cast<double>(num_fs) /
                             static_cast<double>(num_patients);
    // tiny slack so an exact-equality configuration survives rounding
    if (p.fog_price - p.local_price < floor - 1e-9)
      return "m - l >= g*beta_max + k*F/P violated";
  }
  return std::nullopt;
}

struct ProfitBreakdown {
  double revenue = 0.0;      // chi
  double expenditure = 0.0;  // phi
  double profit = 0.0;       // delta = chi - phi
};

/// Revenue, expenditure and profit of the medical center for a given
/// local/fog split. `fog_assigned[p]` says whether patient p computes on
/// an FS this slot.
inline ProfitBreakdown profit_breakdown(const std::vector<PatientProfile>& profiles,
                                        const std::vector<char>& fog_assigned,
                                        const PricingConfig& pricing, int num_fs) {
  ProfitBreakdown out;
  out.expenditure = pricing.fixed_fs_cost * static_cast<double>(num_fs);
  for (std::size_t p = 0; p < profiles.size(); ++p) {
    if (fog_assigned[p]) {
      out.revenue += pricing.fog_price;
      out.expenditure += pricing.per_megacycle_cost * profiles[p].cpu_megacycles;
    } else {
      out.revenue += pricing.local_price;
    }
  }
  out.profit = out.revenue - out.expenditure;
  return out;
}

}  // namespace medfog
