#pragma once

#include <algorithm>
#include <cassert>
#include <climits>
#include <cmath>
#include <set>
#include <vector>

#include "medfog/scenario.hpp"
#include "medfog/system.hpp"

namespace medfog {

/// Absolute guard applied to "utility increases" comparisons so that
/// float noise on symmetric configurations cannot cycle forever.
inline constexpr double kImprovementEps = 1e-9;

/// Largest number of patients that may share FS `fs_index` while patient
/// `prof` is one of them and still meet the patient's latency budget.
/// Clamped to [0, num_patients]; 0 means the patient can never use that
/// server.
inline int max_feasible_occupancy(const PatientProfile& prof, int fs_index,
                                  const SystemParams& params, int num_patients) {
  const double rate = transmission_rate(prof, fs_index, params);
  const double slack = params.latency_budget_s / prof.criticality - prof.data_bits() / rate;
  const double raw = params.fog_capacity_hz / prof.cpu_cycles() * slack;
  if (!(raw >= 1.0)) return 0;
  return static_cast<int>(std::min(std::floor(raw), static_cast<double>(num_patients)));
}

/// A scenario plus the per-(patient, server) tables every solver needs:
/// transmission times, local compute times, latency budgets and the
/// occupancy caps above. Build once, share read-only.
class Instance {
 public:
  explicit Instance(Scenario scenario) : scenario_(std::move(scenario)) {
    scenario_.validate();
    const int P = num_patients();
    const int F = num_fs();
    tx_time_.resize(static_cast<std::size_t>(P) * F);
    cap_.resize(static_cast<std::size_t>(P) * F);
    local_time_.resize(P);
    budget_.resize(P);
    rho_beta_.resize(P);
    for (int p = 0; p < P; ++p) {
      const PatientProfile& prof = scenario_.profiles[static_cast<std::size_t>(p)];
      local_time_[p] = local_compute_time(prof.cpu_cycles(), scenario_.params);
      budget_[p] = scenario_.params.latency_budget_s / prof.criticality;
      rho_beta_[p] = prof.criticality * prof.cpu_cycles();
      for (int f = 0; f < F; ++f) {
        tx_time_[idx(p, f)] =
            transmission_time(prof.data_bits(), transmission_rate(prof, f, scenario_.params));
        cap_[idx(p, f)] = max_feasible_occupancy(prof, f, scenario_.params, P);
      }
    }
  }

  const Scenario& scenario() const { return scenario_; }
  const SystemParams& params() const { return scenario_.params; }
  const PricingConfig& pricing() const { return scenario_.pricing; }
  const PatientProfile& profile(int p) const {
    return scenario_.profiles[static_cast<std::size_t>(p)];
  }

  int num_patients() const { return scenario_.num_patients(); }
  int num_fs() const { return scenario_.num_fs; }

  double tx_time(int p, int f) const { return tx_time_[idx(p, f)]; }
  double local_time(int p) const { return local_time_[static_cast<std::size_t>(p)]; }
  double latency_budget(int p) const { return budget_[static_cast<std::size_t>(p)]; }
  double rho(int p) const { return profile(p).criticality; }
  double rho_beta(int p) const { return rho_beta_[static_cast<std::size_t>(p)]; }
  int cap(int p, int f) const { return cap_[idx(p, f)]; }

 private:
  std::size_t idx(int p, int f) const {
    return static_cast<std::size_t>(p) * static_cast<std::size_t>(num_fs()) +
           static_cast<std::size_t>(f);
  }

  Scenario scenario_;
  std::vector<double> tx_time_;
  std::vector<double> local_time_;
  std::vector<double> budget_;
  std::vector<double> rho_beta_;
  std::vector<int> cap_;
};

/// Who computes where for one slot. Each patient is either on its local
/// device or on exactly one FS. Member lists stay sorted by patient id;
/// per-server aggregates (occupancy, sum of rho*beta, smallest member
/// cap) are maintained incrementally so move evaluation stays O(1).
class Allocation {
 public:
  static constexpr int kLocal = -1;

  Allocation() = default;
  explicit Allocation(const Instance& inst)
      : server_(static_cast<std::size_t>(inst.num_patients()), kLocal),
        members_(static_cast<std::size_t>(inst.num_fs())),
        rho_beta_sum_(static_cast<std::size_t>(inst.num_fs()), 0.0),
        caps_(static_cast<std::size_t>(inst.num_fs())) {}

  int num_patients() const { return static_cast<int>(server_.size()); }
  int num_fs() const { return static_cast<int>(members_.size()); }

  int server_of(int p) const { return server_[static_cast<std::size_t>(p)]; }
  bool is_local(int p) const { return server_of(p) == kLocal; }
  bool on_fog(int p) const { return server_of(p) != kLocal; }
  int fog_count() const { return fog_count_; }

  int occupancy(int f) const { return static_cast<int>(members_[static_cast<std::size_t>(f)].size()); }
  const std::vector<int>& members(int f) const { return members_[static_cast<std::size_t>(f)]; }
  double member_rho_beta_sum(int f) const { return rho_beta_sum_[static_cast<std::size_t>(f)]; }

  /// Smallest occupancy cap among current members; INT_MAX for an empty server.
  int min_cap(int f) const {
    const auto& caps = caps_[static_cast<std::size_t>(f)];
    return caps.empty() ? INT_MAX : *caps.begin();
  }

  void assign(const Instance& inst, int p, int f) {
    assert(is_local(p));
    server_[static_cast<std::size_t>(p)] = f;
    auto& mem = members_[static_cast<std::size_t>(f)];
    mem.insert(std::lower_bound(mem.begin(), mem.end(), p), p);
    rho_beta_sum_[static_cast<std::size_t>(f)] += inst.rho_beta(p);
    caps_[static_cast<std::size_t>(f)].insert(inst.cap(p, f));
    ++fog_count_;
  }

  void release(const Instance& inst, int p) {
    const int f = server_of(p);
    assert(f != kLocal);
    server_[static_cast<std::size_t>(p)] = kLocal;
    auto& mem = members_[static_cast<std::size_t>(f)];
    mem.erase(std::lower_bound(mem.begin(), mem.end(), p));
    rho_beta_sum_[static_cast<std::size_t>(f)] -= inst.rho_beta(p);
    auto& caps = caps_[static_cast<std::size_t>(f)];
    caps.erase(caps.find(inst.cap(p, f)));
    --fog_count_;
  }

  void move(const Instance& inst, int p, int f_to) {
    release(inst, p);
    assign(inst, p, f_to);
  }

  /// Exchanges the servers of two fog-assigned patients.
  void swap_servers(const Instance& inst, int p, int q) {
    const int fp = server_of(p);
    const int fq = server_of(q);
    assert(fp != kLocal && fq != kLocal && fp != fq);
    release(inst, p);
    release(inst, q);
    assign(inst, p, fq);
    assign(inst, q, fp);
  }

  bool operator==(const Allocation& other) const { return server_ == other.server_; }

 private:
  std::vector<int> server_;
  std::vector<std::vector<int>> members_;
  std::vector<double> rho_beta_sum_;
  std::vector<std::multiset<int>> caps_;
  int fog_count_ = 0;
};

struct Objective {
  double utility = 0.0;      // lambda1 * profit - lambda2 * patient_cost
  double profit = 0.0;
  double patient_cost = 0.0;
};

/// End-to-end latency of one patient under the given allocation.
inline double patient_latency(const Instance& inst, const Allocation& a, int p) {
  const int f = a.server_of(p);
  if (f == Allocation::kLocal) return inst.local_time(p);
  return inst.tx_time(p, f) + inst.profile(p).cpu_cycles() *
                                  static_cast<double>(a.occupancy(f)) /
                                  inst.params().fog_capacity_hz;
}

/// Criticality-weighted total latency over all patients.
inline double cost_J(const Instance& inst, const Allocation& a) {
  double j = 0.0;
  for (int p = 0; p < inst.num_patients(); ++p) j += inst.rho(p) * patient_latency(inst, a, p);
  return j;
}

/// Full objective, recomputed from the allocation.
inline Objective utility_U(const Instance& inst, const Allocation& a) {
  const PricingConfig& pricing = inst.pricing();
  double revenue = 0.0;
  double expenditure = pricing.fixed_fs_cost * static_cast<double>(inst.num_fs());
  for (int p = 0; p < inst.num_patients(); ++p) {
    if (a.on_fog(p)) {
      revenue += pricing.fog_price;
      expenditure += pricing.per_megacycle_cost * inst.profile(p).cpu_megacycles;
    } else {
      revenue += pricing.local_price;
    }
  }
  Objective obj;
  obj.profit = revenue - expenditure;
  obj.patient_cost = cost_J(inst, a);
  obj.utility = inst.params().lambda1 * obj.profit - inst.params().lambda2 * obj.patient_cost;
  return obj;
}

/// Patients whose latency exceeds their budget; empty means feasible.
/// A latency exactly on the budget counts as feasible.
inline std::vector<int> latency_violations(const Instance& inst, const Allocation& a) {
  std::vector<int> out;
  for (int p = 0; p < inst.num_patients(); ++p)
    if (patient_latency(inst, a, p) > inst.latency_budget(p)) out.push_back(p);
  return out;
}

inline bool is_feasible(const Instance& inst, const Allocation& a) {
  return latency_violations(inst, a).empty();
}

/// Patients that cannot meet their budget on the local device and must
/// therefore be fog-assigned. Ordered by decreasing criticality, ties by
/// ascending id.
inline std::vector<int> violators(const Instance& inst) {
  std::vector<int> out;
  for (int p = 0; p < inst.num_patients(); ++p)
    if (inst.local_time(p) > inst.latency_budget(p)) out.push_back(p);
  std::stable_sort(out.begin(), out.end(), [&](int lhs, int rhs) {
    if (inst.rho(lhs) != inst.rho(rhs)) return inst.rho(lhs) > inst.rho(rhs);
    return lhs < rhs;
  });
  return out;
}

/// True when adding `p` to `f` keeps every occupant (p included) within
/// its occupancy cap. `p` must not already sit on `f`.
inline bool room_for(const Instance& inst, const Allocation& a, int p, int f) {
  assert(a.server_of(p) != f);
  const int limit = std::min(a.min_cap(f), inst.cap(p, f));
  return a.occupancy(f) + 1 <= limit;
}

/// Utility change of assigning local patient `p` to server `f`: the
/// pricing margin, the patient's own latency change, and the crowd-out
/// cost inflicted on the server's current members.
inline double delta_assign(const Instance& inst, const Allocation& a, int p, int f) {
  assert(a.is_local(p));
  const PatientProfile& prof = inst.profile(p);
  const PricingConfig& pricing = inst.pricing();
  const double margin =
      pricing.fog_price - pricing.local_price - pricing.per_megacycle_cost * prof.cpu_megacycles;
  const double gamma = inst.params().fog_capacity_hz;
  const double fog_latency =
      prof.cpu_cycles() * static_cast<double>(a.occupancy(f) + 1) / gamma + inst.tx_time(p, f);
  const double own = inst.rho(p) * (inst.local_time(p) - fog_latency);
  const double crowd_out = a.member_rho_beta_sum(f) / gamma;
  return inst.params().lambda1 * margin + inst.params().lambda2 * (own - crowd_out);
}

/// Cost-side utility change of exchanging fog patients `p` and `q`
/// between their servers, divided by lambda2. Occupancies do not move,
/// so profit is unchanged and the true utility change is
/// lambda2 * delta_two_way.
inline double delta_two_way(const Instance& inst, const Allocation& a, int p, int q) {
  const int fp = a.server_of(p);
  const int fq = a.server_of(q);
  assert(fp != Allocation::kLocal && fq != Allocation::kLocal && fp != fq);
  const double gamma = inst.params().fog_capacity_hz;
  const double occ_gap = static_cast<double>(a.occupancy(fp) - a.occupancy(fq));
  const double tx_gain = inst.rho(p) * (inst.tx_time(p, fp) - inst.tx_time(p, fq)) +
                         inst.rho(q) * (inst.tx_time(q, fq) - inst.tx_time(q, fp));
  const double compute_gain = (inst.rho_beta(p) - inst.rho_beta(q)) * occ_gap / gamma;
  return tx_gain + compute_gain;
}

/// Cost-side utility change of moving fog patient `p` from its server to
/// `f_to`, divided by lambda2. Profit is unchanged; the true utility
/// change is lambda2 * delta_one_way.
inline double delta_one_way(const Instance& inst, const Allocation& a, int p, int f_to) {
  const int f_from = a.server_of(p);
  assert(f_from != Allocation::kLocal && f_from != f_to);
  const double gamma = inst.params().fog_capacity_hz;
  const double tx_gain = inst.rho(p) * (inst.tx_time(p, f_from) - inst.tx_time(p, f_to));
  const double own = inst.rho_beta(p) *
                     static_cast<double>(a.occupancy(f_from) - a.occupancy(f_to) - 1) / gamma;
  const double others = (a.member_rho_beta_sum(f_from) - inst.rho_beta(p)) / gamma -
                        a.member_rho_beta_sum(f_to) / gamma;
  return tx_gain + own + others;
}

}  // namespace medfog
