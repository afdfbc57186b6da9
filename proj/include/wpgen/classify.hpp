#pragma once

#include <span>
#include <vector>

#include "wpgen/simulator.hpp"

namespace wpgen {

enum class SubPathClass { stable, unstable, missing };

/// One class per attempted leg, in leg order.
using PathCategory = std::vector<SubPathClass>;

const char* to_string(SubPathClass c);

/// Removes 2*pi jumps so that a continuous turn reads as a smooth ramp.
std::vector<double> unwrap_angles(std::span<const double> signal);

/// Mean-removed, variance-normalized sample autocorrelation for lags
/// 0..min(n-1, n/2). Signals with (numerically) zero variance return 1 at lag
/// 0 and 0 elsewhere. Throws for signals shorter than 2 samples.
std::vector<double> autocorrelation(std::span<const double> signal);

/// Counts strict local maxima above the threshold among lags >= 1 (lag 0 is
/// excluded; it would otherwise always count). A plateau counts once, at its
/// first index.
int count_threshold_peaks(std::span<const double> acf, double threshold = 0.1);

/// An angle trace is unstable iff its autocorrelation has more than one peak
/// above 0.1.
bool classify_angle_unstable(std::span<const double> signal);

/// Missing status wins; otherwise unstable iff any of roll/pitch/yaw is
/// unstable; otherwise stable.
SubPathClass classify_subpath(const SubPath& sp);

PathCategory categorize_path(const SimulationResult& result);

/// Upper bound on distinct full-path categorizations for an N-waypoint route.
long long max_category_count(int n_waypoints);

struct ClassSummary {
  double stable_pct = 0.0;    // share of sub-path slots, in percent
  double unstable_pct = 0.0;
  double missing_pct = 0.0;
  long long total_subpaths = 0;
  long long unique_categories = 0;
  double unique_pct = 0.0;    // unique categories vs the theoretical maximum
};

ClassSummary summarize_categories(const std::vector<PathCategory>& categories,
                                  int n_waypoints);

}  // namespace wpgen
