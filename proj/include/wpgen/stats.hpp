#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wpgen/fitness.hpp"

namespace wpgen {

/// Exact 2D hypervolume by coordinate sweep. Points and reference must be in
/// minimization orientation; every point must weakly dominate the reference.
/// Dominated or duplicate points contribute nothing.
double hypervolume_2d(std::vector<std::array<double, 2>> front,
                      std::array<double, 2> reference);

/// Coordinate-wise worst observed value (minimization orientation), inflated
/// by a fixed 1% margin so boundary points still contribute volume.
std::array<double, 2> choose_reference(
    const std::vector<std::array<double, 2>>& points);

/// Two-sided Mann-Whitney U test p-value. Exact enumeration when the combined
/// sample size is at most 20 and there are no ties; otherwise the normal
/// approximation with tie and continuity corrections.
double mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Vargha-Delaney effect size: P(a > b) + 0.5 P(a = b).
double vargha_delaney_a12(std::span<const double> a, std::span<const double> b);

enum class EffectStrength { negligible, small, medium, large, nd };
enum class Verdict { nd, a_better, b_better };

const char* to_string(EffectStrength s);
const char* to_string(Verdict v);

/// Interval classification of the effect size:
/// negligible (0.44, 0.56); small (0.34, 0.44] or [0.56, 0.64);
/// medium (0.29, 0.34] or [0.64, 0.71); large [0, 0.29] or [0.71, 1].
EffectStrength strength_of(double a12);

struct ComparisonResult {
  std::string approach_a;
  std::string approach_b;
  double p_value = 1.0;
  double a12 = 0.5;
  Verdict verdict = Verdict::nd;
  EffectStrength strength = EffectStrength::nd;
};

struct RunHv {
  double hv = 0.0;
  bool empty_front = false;  // all-infeasible run, HV fixed at 0
};

/// Per-run hypervolume for fronts grouped by approach. Both objectives are
/// min-max normalized with the extremes observed across every front passed
/// in, then measured against the reference (1.01, 1.01) in minimization
/// orientation (unstable negated).
std::map<std::string, std::vector<RunHv>> hypervolumes_by_approach(
    const std::map<std::string, std::vector<std::vector<ObjectiveVector>>>&
        fronts_by_approach);

/// Pairwise statistical comparison of per-run HV samples. One result per
/// unordered approach pair, in lexicographic order.
std::vector<ComparisonResult> compare(
    const std::map<std::string, std::vector<double>>& hv_by_approach,
    double alpha = 0.05);

}  // namespace wpgen
