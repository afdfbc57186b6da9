#include "wpgen/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace wpgen {

const char* to_string(SubPathClass c) {
  switch (c) {
    case SubPathClass::stable: return "stable";
    case SubPathClass::unstable: return "unstable";
    case SubPathClass::missing: return "missing";
  }
  return "?";
}

std::vector<double> unwrap_angles(std::span<const double> signal) {
  std::vector<double> out;
  out.reserve(signal.size());
  if (signal.empty()) return out;
  const double pi = std::numbers::pi;
  double offset = 0.0;
  out.push_back(signal[0]);
  for (std::size_t i = 1; i < signal.size(); ++i) {
    const double d = signal[i] - signal[i - 1];
    if (d > pi) offset -= 2.0 * pi;
    else if (d < -pi) offset += 2.0 * pi;
    out.push_back(signal[i] + offset);
  }
  return out;
}

std::vector<double> autocorrelation(std::span<const double> signal) {
  const std::size_t n = signal.size();
  if (n < 2)
    throw std::invalid_argument("autocorrelation: need at least 2 samples");
  const std::size_t max_lag = std::min(n - 1, n / 2);

  double mean = 0.0;
  for (double v : signal) mean += v;
  mean /= static_cast<double>(n);

  double var_sum = 0.0;
  for (double v : signal) var_sum += (v - mean) * (v - mean);

  std::vector<double> acf(max_lag + 1, 0.0);
  acf[0] = 1.0;
  // zero-variance convention: a (numerically) constant angle has no
  // correlation structure worth reporting
  if (var_sum / static_cast<double>(n) < 1e-18) return acf;

  for (std::size_t k = 1; k <= max_lag; ++k) {
    double s = 0.0;
    for (std::size_t t = 0; t + k < n; ++t)
      s += (signal[t] - mean) * (signal[t + k] - mean);
    acf[k] = s / var_sum;
  }
  return acf;
}

int count_threshold_peaks(std::span<const double> acf, double threshold) {
  if (acf.size() < 3) return 0;
  int peaks = 0;
  std::size_t i = 1;  // lag 0 excluded as a peak location
  while (i + 1 < acf.size()) {
    if (acf[i] > acf[i - 1]) {
      // extend across a plateau of equal values
      std::size_t j = i;
      while (j + 1 < acf.size() && acf[j + 1] == acf[i]) ++j;
      if (j + 1 < acf.size() && acf[j + 1] < acf[i]) {
        if (acf[i] > threshold) ++peaks;
        i = j + 1;
        continue;
      }
      i = j + 1;
      continue;
    }
    ++i;
  }
  return peaks;
}

bool classify_angle_unstable(std::span<const double> signal) {
  return count_threshold_peaks(autocorrelation(signal)) > 1;
}

SubPathClass classify_subpath(const SubPath& sp) {
  if (sp.status == LegStatus::missing) return SubPathClass::missing;
  if (sp.samples.size() < 2) return SubPathClass::stable;

  std::vector<double> roll, pitch, yaw;
  roll.reserve(sp.samples.size());
  pitch.reserve(sp.samples.size());
  yaw.reserve(sp.samples.size());
  for (const PathSample& s : sp.samples) {
    roll.push_back(s.roll);
    pitch.push_back(s.pitch);
    yaw.push_back(s.yaw);
  }
  for (const std::vector<double>& angle : {roll, pitch, yaw}) {
    const std::vector<double> unwrapped = unwrap_angles(angle);
    if (classify_angle_unstable(unwrapped)) return SubPathClass::unstable;
  }
  return SubPathClass::stable;
}

PathCategory categorize_path(const SimulationResult& result) {
  PathCategory cat;
  cat.reserve(result.subpaths.size());
  for (const SubPath& sp : result.subpaths) cat.push_back(classify_subpath(sp));
  return cat;
}

long long max_category_count(int n_waypoints) {
  if (n_waypoints < 2)
    throw std::invalid_argument("max_category_count: need at least 2 waypoints");
  return (1ll << (n_waypoints - 1)) + 2ll * (n_waypoints - 2);
}

ClassSummary summarize_categories(const std::vector<PathCategory>& categories,
                                  int n_waypoints) {
  ClassSummary s;
  const long long max_cats = max_category_count(n_waypoints);
  long long counts[3] = {0, 0, 0};
  std::set<PathCategory> unique;
  for (const PathCategory& cat : categories) {
    unique.insert(cat);
    for (SubPathClass c : cat) ++counts[static_cast<int>(c)];
  }
  s.total_subpaths = counts[0] + counts[1] + counts[2];
  if (s.total_subpaths > 0) {
    const double total = static_cast<double>(s.total_subpaths);
    s.stable_pct = 100.0 * static_cast<double>(counts[0]) / total;
    s.unstable_pct = 100.0 * static_cast<double>(counts[1]) / total;
    s.missing_pct = 100.0 * static_cast<double>(counts[2]) / total;
  }
  s.unique_categories = static_cast<long long>(unique.size());
  s.unique_pct =
      100.0 * static_cast<double>(s.unique_categories) / static_cast<double>(max_cats);
  return s;
}

}  // namespace wpgen
