#include "wpgen/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wpgen {

double hypervolume_2d(std::vector<std::array<double, 2>> front,
                      std::array<double, 2> reference) {
  if (front.empty()) return 0.0;
  for (const auto& p : front)
    if (p[0] > reference[0] || p[1] > reference[1])
      throw std::invalid_argument("hypervolume_2d: point does not dominate reference");
  std::sort(front.begin(), front.end());

  // staircase sweep: keep points whose y strictly improves; each kept point
  // owns the strip from its x to the next kept x (or the reference)
  std::vector<std::array<double, 2>> stairs;
  stairs.reserve(front.size());
  double best_y = std::numeric_limits<double>::infinity();
  for (const auto& p : front) {
    if (p[1] >= best_y) continue;  // dominated or duplicate
    stairs.push_back(p);
    best_y = p[1];
  }
  double hv = 0.0;
  for (std::size_t i = 0; i < stairs.size(); ++i) {
    const double next_x = i + 1 < stairs.size() ? stairs[i + 1][0] : reference[0];
    hv += (next_x - stairs[i][0]) * (reference[1] - stairs[i][1]);
  }
  return hv;
}

std::array<double, 2> choose_reference(
    const std::vector<std::array<double, 2>>& points) {
  if (points.empty())
    throw std::invalid_argument("choose_reference: no points");
  std::array<double, 2> worst = points.front();
  for (const auto& p : points) {
    worst[0] = std::max(worst[0], p[0]);
    worst[1] = std::max(worst[1], p[1]);
  }
  return {worst[0] + 0.01 * std::abs(worst[0]),
          worst[1] + 0.01 * std::abs(worst[1])};
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Number of rank arrangements of n vs m observations with U statistic == u,
/// via the standard recurrence c(n,m,u) = c(n-1,m,u-m) + c(n,m-1,u).
double exact_u_count(int n, int m, int u, std::vector<double>& memo, int max_u) {
  if (u < 0) return 0.0;
  if (n == 0 || m == 0) return u == 0 ? 1.0 : 0.0;
  double& slot = memo[(static_cast<std::size_t>(n) * 21 + m) *
                          static_cast<std::size_t>(max_u + 1) +
                      u];
  if (slot >= 0.0) return slot;
  slot = exact_u_count(n - 1, m, u - m, memo, max_u) +
         exact_u_count(n, m - 1, u, memo, max_u);
  return slot;
}

double exact_two_sided_p(int n, int m, double u_min) {
  const int max_u = n * m;
  std::vector<double> memo(21 * 21 * static_cast<std::size_t>(max_u + 1), -1.0);
  double tail = 0.0;
  for (int u = 0; u <= static_cast<int>(u_min + 1e-9); ++u)
    tail += exact_u_count(n, m, u, memo, max_u);
  double total = 0.0;
  for (int u = 0; u <= max_u; ++u) total += exact_u_count(n, m, u, memo, max_u);
  return std::min(1.0, 2.0 * tail / total);
}

}  // namespace

double mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("mann_whitney_u: empty sample");
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());

  // midranks over the pooled sample
  std::vector<std::pair<double, int>> pooled;  // (value, 0=a/1=b)
  pooled.reserve(a.size() + b.size());
  for (double v : a) pooled.emplace_back(v, 0);
  for (double v : b) pooled.emplace_back(v, 1);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  double rank_sum_a = 0.0;
  double tie_sum = 0.0;
  bool has_ties = false;
  std::size_t i = 0;
  while (i < pooled.size()) {
    std::size_t j = i;
    while (j + 1 < pooled.size() && pooled[j + 1].first == pooled[i].first) ++j;
    const double t = static_cast<double>(j - i + 1);
    if (t > 1.0) {
      has_ties = true;
      tie_sum += t * t * t - t;
    }
    const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k)
      if (pooled[k].second == 0) rank_sum_a += midrank;
    i = j + 1;
  }

  const double u1 = rank_sum_a - 0.5 * n * (n + 1);
  const double u2 = static_cast<double>(n) * m - u1;
  const double u = std::min(u1, u2);

  if (n + m <= 20 && !has_ties) return exact_two_sided_p(n, m, u);

  const double total = n + m;
  const double sigma2 = (static_cast<double>(n) * m / 12.0) *
                        ((total + 1.0) - tie_sum / (total * (total - 1.0)));
  if (sigma2 <= 0.0) return 1.0;  // all values tied
  const double mu = 0.5 * n * m;
  // continuity correction toward the mean
  const double z = (u - mu + 0.5) / std::sqrt(sigma2);
  return std::min(1.0, 2.0 * normal_cdf(z));
}

double vargha_delaney_a12(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("vargha_delaney_a12: empty sample");
  double wins = 0.0;
  for (double x : a)
    for (double y : b) {
      if (x > y) wins += 1.0;
      else if (x == y) wins += 0.5;
    }
  return wins / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

const char* to_string(EffectStrength s) {
  switch (s) {
    case EffectStrength::negligible: return "negligible";
    case EffectStrength::small: return "small";
    case EffectStrength::medium: return "medium";
    case EffectStrength::large: return "large";
    case EffectStrength::nd: return "ND";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::nd: return "ND";
    case Verdict::a_better: return "A";
    case Verdict::b_better: return "B";
  }
  return "?";
}

EffectStrength strength_of(double a12) {
  if (a12 < 0.0 || a12 > 1.0)
    throw std::invalid_argument("strength_of: effect size outside [0, 1]");
  if (a12 > 0.44 && a12 < 0.56) return EffectStrength::negligible;
  if ((a12 > 0.34 && a12 <= 0.44) || (a12 >= 0.56 && a12 < 0.64))
    return EffectStrength::small;
  if ((a12 > 0.29 && a12 <= 0.34) || (a12 >= 0.64 && a12 < 0.71))
    return EffectStrength::medium;
  return EffectStrength::large;
}

std::map<std::string, std::vector<RunHv>> hypervolumes_by_approach(
    const std::map<std::string, std::vector<std::vector<ObjectiveVector>>>&
        fronts_by_approach) {
  // global extremes in minimization orientation: (dist_wps, -unstable)
  double lo[2] = {std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
  double hi[2] = {-std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  bool any = false;
  for (const auto& [approach, fronts] : fronts_by_approach)
    for (const auto& front : fronts)
      for (const ObjectiveVector& o : front) {
        any = true;
        const double f[2] = {o.dist_wps, -o.unstable};
        for (int c = 0; c < 2; ++c) {
          lo[c] = std::min(lo[c], f[c]);
          hi[c] = std::max(hi[c], f[c]);
        }
      }
  if (!any) throw std::invalid_argument("hypervolumes_by_approach: no feasible points");

  const auto scale = [&](double v, int c) {
    const double range = hi[c] - lo[c];
    return range > 0.0 ? (v - lo[c]) / range : 0.0;
  };

  std::map<std::string, std::vector<RunHv>> out;
  for (const auto& [approach, fronts] : fronts_by_approach) {
    std::vector<RunHv>& hvs = out[approach];
    hvs.reserve(fronts.size());
    for (const auto& front : fronts) {
      if (front.empty()) {
        hvs.push_back({0.0, true});
        continue;
      }
      std::vector<std::array<double, 2>> pts;
      pts.reserve(front.size());
      for (const ObjectiveVector& o : front)
        pts.push_back({scale(o.dist_wps, 0), scale(-o.unstable, 1)});
      hvs.push_back({hypervolume_2d(std::move(pts), {1.01, 1.01}), false});
    }
  }
  return out;
}

std::vector<ComparisonResult> compare(
    const std::map<std::string, std::vector<double>>& hv_by_approach,
    double alpha) {
  if (hv_by_approach.size() < 2)
    throw std::invalid_argument("compare: need at least two approaches");
  for (const auto& [name, hvs] : hv_by_approach)
    if (hvs.size() < 2)
      throw std::invalid_argument("compare: approach '" + name +
                                  "' has fewer than 2 runs");

  std::vector<std::string> names;
  for (const auto& [name, hvs] : hv_by_approach) names.push_back(name);

  std::vector<ComparisonResult> results;
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      const std::vector<double>& a = hv_by_approach.at(names[i]);
      const std::vector<double>& b = hv_by_approach.at(names[j]);
      ComparisonResult r;
      r.approach_a = names[i];
      r.approach_b = names[j];
      r.p_value = mann_whitney_u(a, b);
      r.a12 = vargha_delaney_a12(a, b);
      if (r.p_value >= alpha) {
        r.verdict = Verdict::nd;
        r.strength = EffectStrength::nd;
      } else {
        // a12 == 0.5 cannot reach this branch: it forces U = nm/2 and p = 1
        r.verdict = r.a12 > 0.5 ? Verdict::a_better : Verdict::b_better;
        r.strength = strength_of(r.a12);
      }
      results.push_back(std::move(r));
    }
  return results;
}

}  // namespace wpgen
