#pragma once

#include <atomic>
#include <cstdint>
#include <optional>

#include "wpgen/domain.hpp"
#include "wpgen/simulator.hpp"

namespace wpgen {

/// The two competing objectives: keep the candidate close to the original
/// route (dist_wps, minimize) while destabilizing the followed path
/// (unstable, maximize).
struct ObjectiveVector {
  double dist_wps = 0.0;
  double unstable = 0.0;

  bool operator==(const ObjectiveVector& other) const = default;
};

/// a dominates b iff a is no worse in both objectives and strictly better in
/// at least one (dist_wps down, unstable up).
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Root of the summed squared per-coordinate deviations over all waypoints.
double fit_dist_wps(const WaypointSet& candidate, const WaypointSet& original);

/// Sum over attempted sub-paths of sample count divided by the length of the
/// corresponding ORIGINAL leg; legs never attempted contribute 0.
double fit_unstable(const SimulationResult& result, const WaypointSet& original);

/// One evaluation as appended to the JSON-lines log.
struct EvalRecord {
  int gen = 0;
  Individual ind;
  std::optional<ObjectiveVector> objectives;  // nullopt = infeasible

  bool feasible() const { return objectives.has_value(); }
};

/// Evaluation bridge from genotype to objectives. Infeasible individuals
/// (min_wp_dist violations) are reported as nullopt and never simulated
/// (death penalty); simulator failures are conservatively treated the same
/// way. The evaluation counter increments exactly once per call.
class EvalContext {
 public:
  EvalContext(WaypointSet original, SearchBounds bounds, VesselConfig vessel);

  /// Thread-safe: a population may be evaluated concurrently; the counters
  /// are the only synchronized state.
  std::optional<ObjectiveVector> evaluate(const Individual& ind);

  /// Simulation of an already-feasible candidate, for trace export.
  SimulationResult simulate_candidate(const Individual& ind) const;

  const WaypointSet& original() const { return original_; }
  const SearchBounds& bounds() const { return bounds_; }
  const VesselConfig& vessel() const { return vessel_; }
  const VesselState& initial_state() const { return initial_; }

  std::uint64_t evaluations() const { return evaluations_.load(); }
  std::uint64_t simulations() const { return simulations_.load(); }

 private:
  WaypointSet original_;
  SearchBounds bounds_;
  VesselConfig vessel_;
  VesselState initial_;  // fixed: the vessel's pose does not track candidates
  std::atomic<std::uint64_t> evaluations_{0};
  std::atomic<std::uint64_t> simulations_{0};
};

}  // namespace wpgen
