#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "medfog/allocation.hpp"

namespace medfog {

inline constexpr double kDefaultExactBudget = 1e7;  // max (F+1)^P leaves

/// Outcome of one solver run. `utility_trace` holds the utility after
/// every outer iteration; it is non-decreasing and strictly increasing
/// up to the final (non-improving) entry. `greedy_maxima` records, per
/// greedy invocation, the sequence of chosen utility gains; each
/// sequence is non-increasing.
struct SolveReport {
  Allocation allocation;
  Objective objective;
  int outer_iterations = 0;
  std::vector<double> utility_trace;
  std::vector<int> infeasible_patients;
  bool feasible = true;
  std::chrono::microseconds wall_time{0};
  std::string solver_name;
  std::vector<std::vector<double>> greedy_maxima;
};

namespace detail {

struct TwoWayCandidate {
  int p, q;
};

/// First pair (scan order: donor server, member, partner server, member)
/// whose exchange improves cost and respects both caps.
inline std::optional<TwoWayCandidate> find_two_way_swap(const Instance& inst,
                                                        const Allocation& a) {
  const int F = inst.num_fs();
  for (int f = 0; f < F; ++f) {
    for (int p : a.members(f)) {
      for (int f2 = 0; f2 < F; ++f2) {
        if (f2 == f) continue;
        for (int q : a.members(f2)) {
          // caps of the incoming patients; occupancies do not change
          if (a.occupancy(f2) > inst.cap(p, f2) || a.occupancy(f) > inst.cap(q, f)) continue;
          if (delta_two_way(inst, a, p, q) > kImprovementEps) return TwoWayCandidate{p, q};
        }
      }
    }
  }
  return std::nullopt;
}

struct OneWayCandidate {
  int p, f_to;
};

inline std::optional<OneWayCandidate> find_one_way_move(const Instance& inst,
                                                        const Allocation& a) {
  const int F = inst.num_fs();
  for (int f = 0; f < F; ++f) {
    for (int p : a.members(f)) {
      for (int f2 = 0; f2 < F; ++f2) {
        if (f2 == f) continue;
        if (!room_for(inst, a, p, f2)) continue;
        if (delta_one_way(inst, a, p, f2) > kImprovementEps) return OneWayCandidate{p, f2};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Exchanges pairs of fog-assigned patients while an exchange improves
/// utility, restarting the scan after every executed swap. Returns
/// whether anything changed.
inline bool two_way_swap_pass(const Instance& inst, Allocation& a) {
  bool changed = false;
  while (auto cand = detail::find_two_way_swap(inst, a)) {
    a.swap_servers(inst, cand->p, cand->q);
    changed = true;
  }
  return changed;
}

/// Relocates single fog-assigned patients while a move improves utility,
/// restarting the scan after every executed move.
inline bool one_way_swap_pass(const Instance& inst, Allocation& a) {
  bool changed = false;
  while (auto cand = detail::find_one_way_move(inst, a)) {
    a.move(inst, cand->p, cand->f_to);
    changed = true;
  }
  return changed;
}

/// Repeatedly assigns the (local patient, server) pair with the largest
/// strictly positive utility gain until no pair qualifies. Patients
/// flagged in `excluded` are never considered. Appends each round's
/// chosen gain to `maxima` when given; returns the number of
/// assignments.
inline int greedy_allocate(const Instance& inst, Allocation& a, const std::vector<char>& excluded,
                           std::vector<double>* maxima = nullptr) {
  const int P = inst.num_patients();
  const int F = inst.num_fs();
  int remaining = 0;
  for (int p = 0; p < P; ++p)
    if (a.is_local(p) && !excluded[static_cast<std::size_t>(p)]) ++remaining;

  int assigned = 0;
  for (int round = 0; round < remaining; ++round) {
    double best_gain = 0.0;  // only strictly positive gains assign
    int best_p = -1;
    int best_f = -1;
    for (int p = 0; p < P; ++p) {
      if (!a.is_local(p) || excluded[static_cast<std::size_t>(p)]) continue;
      for (int f = 0; f < F; ++f) {
        if (!room_for(inst, a, p, f)) continue;
        const double gain = delta_assign(inst, a, p, f);
        if (gain > best_gain) {
          best_gain = gain;
          best_p = p;
          best_f = f;
        }
      }
    }
    if (best_p < 0) break;
    a.assign(inst, best_p, best_f);
    if (maxima) maxima->push_back(best_gain);
    ++assigned;
  }
  return assigned;
}

namespace detail {

struct ViolatorPlacement {
  std::vector<int> violators;    // decreasing criticality
  std::vector<int> infeasible;   // violators with no admissible server
};

/// Places every latency violator on its best-gain admissible server, in
/// decreasing criticality order. A violator is placed even when the best
/// gain is negative; one with no admissible server stays local and is
/// reported.
inline ViolatorPlacement place_violators(const Instance& inst, Allocation& a) {
  ViolatorPlacement out;
  out.violators = violators(inst);
  for (int p : out.violators) {
    double best_gain = 0.0;
    int best_f = -1;
    for (int f = 0; f < inst.num_fs(); ++f) {
      if (!room_for(inst, a, p, f)) continue;
      const double gain = delta_assign(inst, a, p, f);
      if (best_f < 0 || gain > best_gain) {
        best_gain = gain;
        best_f = f;
      }
    }
    if (best_f < 0)
      out.infeasible.push_back(p);
    else
      a.assign(inst, p, best_f);
  }
  return out;
}

inline std::vector<char> exclusion_mask(int num_patients, const std::vector<int>& patients) {
  std::vector<char> mask(static_cast<std::size_t>(num_patients), 0);
  for (int p : patients) mask[static_cast<std::size_t>(p)] = 1;
  return mask;
}

inline SolveReport finish_report(const Instance& inst, Allocation a, std::string name,
                                 std::chrono::steady_clock::time_point t0) {
  SolveReport r;
  r.objective = utility_U(inst, a);
  r.allocation = std::move(a);
  r.solver_name = std::move(name);
  r.wall_time = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - t0);
  return r;
}

}  // namespace detail

/// Swapping heuristic: place latency violators, improve by two-way and
/// one-way swaps, greedily fog-assign the rest, then iterate
/// {two-way, one-way, greedy} until utility stops increasing.
inline SolveReport solve_umpma(const Instance& inst) {
  const auto t0 = std::chrono::steady_clock::now();
  Allocation a(inst);
  auto placement = detail::place_violators(inst, a);
  const auto excluded = detail::exclusion_mask(inst.num_patients(), placement.infeasible);

  std::vector<std::vector<double>> greedy_maxima;
  two_way_swap_pass(inst, a);
  one_way_swap_pass(inst, a);
  greedy_maxima.emplace_back();
  greedy_allocate(inst, a, excluded, &greedy_maxima.back());

  double prev_utility = utility_U(inst, a).utility;
  std::vector<double> trace;
  int iterations = 0;
  while (true) {
    two_way_swap_pass(inst, a);
    one_way_swap_pass(inst, a);
    greedy_maxima.emplace_back();
    greedy_allocate(inst, a, excluded, &greedy_maxima.back());
    const double utility = utility_U(inst, a).utility;
    trace.push_back(utility);
    ++iterations;
    if (utility <= prev_utility + kImprovementEps) break;
    prev_utility = utility;
  }

  SolveReport r = detail::finish_report(inst, std::move(a), "umpma", t0);
  r.outer_iterations = iterations;
  r.utility_trace = std::move(trace);
  r.infeasible_patients = placement.infeasible;
  r.feasible = placement.infeasible.empty();
  r.greedy_maxima = std::move(greedy_maxima);
  return r;
}

/// One-pass baseline: violators first, then the remaining patients in
/// decreasing criticality order, each on its best admissible server when
/// the gain is strictly positive. Never re-allocates.
inline SolveReport solve_base(const Instance& inst) {
  const auto t0 = std::chrono::steady_clock::now();
  Allocation a(inst);
  auto placement = detail::place_violators(inst, a);

  std::vector<int> rest;
  for (int p = 0; p < inst.num_patients(); ++p)
    if (a.is_local(p)) rest.push_back(p);
  std::stable_sort(rest.begin(), rest.end(), [&](int lhs, int rhs) {
    if (inst.rho(lhs) != inst.rho(rhs)) return inst.rho(lhs) > inst.rho(rhs);
    return lhs < rhs;
  });
  const auto excluded = detail::exclusion_mask(inst.num_patients(), placement.infeasible);
  for (int p : rest) {
    if (excluded[static_cast<std::size_t>(p)]) continue;
    double best_gain = 0.0;
    int best_f = -1;
    for (int f = 0; f < inst.num_fs(); ++f) {
      if (!room_for(inst, a, p, f)) continue;
      const double gain = delta_assign(inst, a, p, f);
      if (gain > best_gain) {
        best_gain = gain;
        best_f = f;
      }
    }
    if (best_f >= 0) a.assign(inst, p, best_f);
  }

  SolveReport r = detail::finish_report(inst, std::move(a), "base", t0);
  r.outer_iterations = 1;
  r.utility_trace = {r.objective.utility};
  r.infeasible_patients = placement.infeasible;
  r.feasible = placement.infeasible.empty();
  return r;
}

namespace detail {

/// Depth-first enumeration state for the exact solver. Prunes a branch
/// as soon as any already-placed patient would exceed its occupancy cap
/// under the current (lower-bound) occupancy.
class ExactSearch {
 public:
  explicit ExactSearch(const Instance& inst)
      : inst_(inst),
        choice_(static_cast<std::size_t>(inst.num_patients()), Allocation::kLocal),
        occupancy_(static_cast<std::size_t>(inst.num_fs()), 0),
        min_cap_(static_cast<std::size_t>(inst.num_fs()), INT_MAX) {}

  void run() { descend(0); }

  bool found() const { return found_; }
  const std::vector<int>& best_choice() const { return best_choice_; }

 private:
  void descend(int p) {
    if (p == inst_.num_patients()) {
      evaluate_leaf();
      return;
    }
    // local device first, then servers in index order; ties in utility
    // therefore resolve toward local and low server ids
    if (inst_.local_time(p) <= inst_.latency_budget(p)) {
      choice_[static_cast<std::size_t>(p)] = Allocation::kLocal;
      descend(p + 1);
    }
    for (int f = 0; f < inst_.num_fs(); ++f) {
      const std::size_t fi = static_cast<std::size_t>(f);
      const int new_occ = occupancy_[fi] + 1;
      if (new_occ > std::min(min_cap_[fi], inst_.cap(p, f))) continue;
      const int saved_min = min_cap_[fi];
      occupancy_[fi] = new_occ;
      min_cap_[fi] = std::min(saved_min, inst_.cap(p, f));
      choice_[static_cast<std::size_t>(p)] = f;
      descend(p + 1);
      occupancy_[fi] = new_occ - 1;
      min_cap_[fi] = saved_min;
    }
    choice_[static_cast<std::size_t>(p)] = Allocation::kLocal;
  }

  void evaluate_leaf() {
    const PricingConfig& pricing = inst_.pricing();
    double revenue = 0.0;
    double expenditure = pricing.fixed_fs_cost * static_cast<double>(inst_.num_fs());
    double cost = 0.0;
    for (int p = 0; p < inst_.num_patients(); ++p) {
      const int f = choice_[static_cast<std::size_t>(p)];
      double latency;
      if (f == Allocation::kLocal) {
        revenue += pricing.local_price;
        latency = inst_.local_time(p);
      } else {
        revenue += pricing.fog_price;
        expenditure += pricing.per_megacycle_cost * inst_.profile(p).cpu_megacycles;
        latency = inst_.tx_time(p, f) +
                  inst_.profile(p).cpu_cycles() *
                      static_cast<double>(occupancy_[static_cast<std::size_t>(f)]) /
                      inst_.params().fog_capacity_hz;
      }
      if (latency > inst_.latency_budget(p)) return;  // infeasible leaf
      cost += inst_.rho(p) * latency;
    }
    const double utility =
        inst_.params().lambda1 * (revenue - expenditure) - inst_.params().lambda2 * cost;
    if (!found_ || utility > best_utility_) {
      found_ = true;
      best_utility_ = utility;
      best_choice_ = choice_;
    }
  }

  const Instance& inst_;
  std::vector<int> choice_;
  std::vector<int> occupancy_;
  std::vector<int> min_cap_;
  std::vector<int> best_choice_;
  double best_utility_ = 0.0;
  bool found_ = false;
};

}  // namespace detail

/// Exhaustive optimum over all (F+1)^P placements. Refuses instances
/// whose enumeration would exceed `leaf_budget` leaves. When no feasible
/// placement exists the report comes back with feasible = false and the
/// all-local allocation.
inline SolveReport solve_exact(const Instance& inst, double leaf_budget = kDefaultExactBudget) {
  const auto t0 = std::chrono::steady_clock::now();
  const double leaves =
      std::pow(static_cast<double>(inst.num_fs() + 1), static_cast<double>(inst.num_patients()));
  if (leaves > leaf_budget) {
    throw std::invalid_argument(
        "exact solver: (F+1)^P = " + std::to_string(leaves) + " leaves with P = " +
        std::to_string(inst.num_patients()) + ", F = " + std::to_string(inst.num_fs()) +
        " exceeds the enumeration budget " + std::to_string(leaf_budget));
  }

  detail::ExactSearch search(inst);
  search.run();

  Allocation a(inst);
  if (search.found()) {
    for (int p = 0; p < inst.num_patients(); ++p)
      if (search.best_choice()[static_cast<std::size_t>(p)] != Allocation::kLocal)
        a.assign(inst, p, search.best_choice()[static_cast<std::size_t>(p)]);
  }

  SolveReport r = detail::finish_report(inst, std::move(a), "exact", t0);
  r.outer_iterations = 1;
  r.utility_trace = {r.objective.utility};
  r.feasible = search.found();
  if (!search.found()) r.infeasible_patients = violators(inst);
  return r;
}

/// Dispatch by solver name ("umpma", "base" or "exact").
inline SolveReport solve(const std::string& solver, const Instance& inst,
                         double exact_budget = kDefaultExactBudget) {
  if (solver == "umpma") return solve_umpma(inst);
  if (solver == "base") return solve_base(inst);
  if (solver == "exact") return solve_exact(inst, exact_budget);
  throw std::invalid_argument("unknown solver: " + solver);
}

}  // namespace medfog
