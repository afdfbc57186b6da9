#include "wpgen/fitness.hpp"

#include <cmath>
#include <stdexcept>

namespace wpgen {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  const bool no_worse = a.dist_wps <= b.dist_wps && a.unstable >= b.unstable;
  const bool better = a.dist_wps < b.dist_wps || a.unstable > b.unstable;
  return no_worse && better;
}

double fit_dist_wps(const WaypointSet& candidate, const WaypointSet& original) {
  if (candidate.size() != original.size() || candidate.dim() != original.dim())
    throw std::invalid_argument("fit_dist_wps: shape mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < original.size(); ++i)
    for (int c = 0; c < original.dim(); ++c) {
      const double d = original[i].coord(c) - candidate[i].coord(c);
      sum += d * d;
    }
  return std::sqrt(sum);
}

double fit_unstable(const SimulationResult& result, const WaypointSet& original) {
  double sum = 0.0;
  for (const SubPath& sp : result.subpaths) {
    const std::size_t i = static_cast<std::size_t>(sp.leg_index);
    if (i < 1 || i >= original.size())
      throw std::invalid_argument("fit_unstable: leg index outside route");
    const double leg_len = euclidean_distance(original[i - 1], original[i]);
    if (leg_len <= 0.0)
      throw std::invalid_argument("fit_unstable: zero-length original leg");
    sum += static_cast<double>(sp.samples.size()) / leg_len;
  }
  return sum;
}

EvalContext::EvalContext(WaypointSet original, SearchBounds bounds,
                         VesselConfig vessel)
    : original_(std::move(original)),
      bounds_(std::move(bounds)),
      vessel_(std::move(vessel)) {
  vessel_.validate();
  if (!validate_waypoint_set(original_, vessel_.min_wp_dist))
    throw std::invalid_argument("EvalContext: original route violates min_wp_dist");
  initial_ = initial_state_for(vessel_, original_);
}

std::optional<ObjectiveVector> EvalContext::evaluate(const Individual& ind) {
  if (!bounds_.contains(ind.values))
    throw std::invalid_argument("evaluate: individual outside search bounds");
  ++evaluations_;
  const WaypointSet candidate = decode(ind, original_);
  if (!validate_waypoint_set(candidate, vessel_.min_wp_dist))
    return std::nullopt;  // death penalty, never simulated
  try {
    ++simulations_;
    const SimulationResult result = simulate(vessel_, candidate, initial_);
    return ObjectiveVector{fit_dist_wps(candidate, original_),
                           fit_unstable(result, original_)};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

SimulationResult EvalContext::simulate_candidate(const Individual& ind) const {
  return simulate(vessel_, decode(ind, original_), initial_);
}

}  // namespace wpgen
