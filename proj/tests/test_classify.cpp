#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "wpgen/classify.hpp"
#include "wpgen/rng.hpp"

using namespace wpgen;

namespace {

std::vector<double> sinusoid(int periods, int samples_per_period, double phase = 0.0) {
  std::vector<double> s;
  const int n = periods * samples_per_period;
  for (int t = 0; t < n; ++t)
    s.push_back(std::sin(2.0 * std::numbers::pi * t / samples_per_period + phase));
  return s;
}

SubPath make_subpath(int leg, LegStatus status, const std::vector<double>& roll,
                     const std::vector<double>& pitch, const std::vector<double>& yaw) {
  SubPath sp;
  sp.leg_index = leg;
  sp.status = status;
  for (std::size_t i = 0; i < roll.size(); ++i)
    sp.samples.push_back({0.5 * static_cast<double>(i), 0, 0, 0, roll[i], pitch[i], yaw[i]});
  return sp;
}

}  // namespace

TEST_CASE("autocorrelation of a constant signal") {
  const std::vector<double> c(50, 1.25);
  const auto acf = autocorrelation(c);
  CHECK(acf[0] == 1.0);
  for (std::size_t k = 1; k < acf.size(); ++k) CHECK(acf[k] == 0.0);
  CHECK_THROWS_AS(autocorrelation(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("autocorrelation of an alternating signal at lag 1") {
  // mean-removed alternating +-1 of length n has acf(1) = -(n-1)/n
  std::vector<double> s;
  for (int i = 0; i < 100; ++i) s.push_back(i % 2 == 0 ? 1.0 : -1.0);
  const auto acf = autocorrelation(s);
  CHECK(acf[1] == doctest::Approx(-0.99).epsilon(1e-12));
}

TEST_CASE("autocorrelation of white noise stays inside the 0.1 band") {
  Rng rng(13);
  std::vector<double> s;
  for (int i = 0; i < 1000; ++i) s.push_back(rng.uniform(-1, 1));
  const auto acf = autocorrelation(s);
  // 95% band is about +-1.96/sqrt(n) ~= 0.062; 0.1 leaves headroom
  for (std::size_t k = 1; k < acf.size(); ++k) CHECK(std::abs(acf[k]) < 0.1);
}

TEST_CASE("autocorrelation output stays within [-1, 1]") {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> s;
    const int n = 10 + static_cast<int>(rng.index(200));
    for (int i = 0; i < n; ++i) s.push_back(rng.uniform(-5, 5));
    for (double v : autocorrelation(s)) {
      CHECK(v <= 1.0 + 1e-9);
      CHECK(v >= -1.0 - 1e-9);
    }
  }
}

TEST_CASE("count_threshold_peaks") {
  SUBCASE("monotone decay has no peaks") {
    std::vector<double> acf{1.0, 0.8, 0.6, 0.4, 0.2, 0.1, 0.05};
    CHECK(count_threshold_peaks(acf) == 0);
  }
  SUBCASE("bumps below the threshold do not count") {
    std::vector<double> acf{1.0, 0.3, 0.0, 0.05, 0.0, 0.02, 0.0};
    CHECK(count_threshold_peaks(acf) == 0);
  }
  SUBCASE("plateaus count once") {
    std::vector<double> acf{1.0, 0.0, 0.3, 0.3, 0.3, 0.0, 0.2, 0.0};
    CHECK(count_threshold_peaks(acf) == 2);
  }
  SUBCASE("sinusoid acf over enough periods has at least two peaks") {
    const auto acf = autocorrelation(sinusoid(5, 40));
    CHECK(count_threshold_peaks(acf) >= 2);
  }
}

TEST_CASE("classify_angle_unstable") {
  CHECK_FALSE(classify_angle_unstable(std::vector<double>(100, 0.7)));
  CHECK(classify_angle_unstable(sinusoid(5, 40)));

  // damped oscillation tuned so only the first acf peak clears 0.1:
  // decay per period e^-1.6 ~ 0.2 (first peak), e^-3.2 ~ 0.04 (second)
  std::vector<double> damped;
  const int period = 40;
  for (int t = 0; t < 400; ++t)
    damped.push_back(std::exp(-1.6 * t / period) *
                     std::cos(2.0 * std::numbers::pi * t / period));
  const auto acf = autocorrelation(damped);
  CHECK(count_threshold_peaks(acf) == 1);  // "more than one" is strict
  CHECK_FALSE(classify_angle_unstable(damped));
}

TEST_CASE("classify_subpath precedence and channels") {
  const std::vector<double> flat(200, 0.1);
  const std::vector<double> wavy = sinusoid(5, 40);

  SUBCASE("missing wins regardless of angle content") {
    const SubPath sp = make_subpath(1, LegStatus::missing, flat, flat, flat);
    CHECK(classify_subpath(sp) == SubPathClass::missing);
  }
  SUBCASE("completed and constant is stable") {
    const SubPath sp = make_subpath(1, LegStatus::completed, flat, flat, flat);
    CHECK(classify_subpath(sp) == SubPathClass::stable);
  }
  SUBCASE("one oscillating channel makes the sub-path unstable") {
    const SubPath sp = make_subpath(1, LegStatus::completed, flat, flat, wavy);
    CHECK(classify_subpath(sp) == SubPathClass::unstable);
    const SubPath sp2 = make_subpath(1, LegStatus::completed, wavy, flat, flat);
    CHECK(classify_subpath(sp2) == SubPathClass::unstable);
  }
}

TEST_CASE("a smooth wrapped turn is not misread as oscillation") {
  // heading ramp crossing the +-pi seam
  std::vector<double> yaw;
  for (int t = 0; t < 400; ++t)
    yaw.push_back(wrap_angle(2.5 + 0.005 * t));  // passes pi and wraps
  const auto unwrapped = unwrap_angles(yaw);
  for (std::size_t i = 1; i < unwrapped.size(); ++i)
    CHECK(std::abs(unwrapped[i] - unwrapped[i - 1]) < 0.01);
  CHECK_FALSE(classify_angle_unstable(unwrapped));
}

TEST_CASE("categorize_path maps sub-paths in leg order") {
  const std::vector<double> flat(120, 0.0);
  const std::vector<double> wavy = sinusoid(5, 24);
  SimulationResult res;
  res.subpaths.push_back(make_subpath(1, LegStatus::completed, flat, flat, flat));
  res.subpaths.push_back(make_subpath(2, LegStatus::completed, wavy, flat, flat));
  res.subpaths.push_back(make_subpath(3, LegStatus::missing, flat, flat, flat));
  res.reached_all = false;

  const PathCategory cat = categorize_path(res);
  REQUIRE(cat.size() == 3);
  CHECK(cat[0] == SubPathClass::stable);
  CHECK(cat[1] == SubPathClass::unstable);
  CHECK(cat[2] == SubPathClass::missing);
}

TEST_CASE("max_category_count follows the closed form") {
  CHECK(max_category_count(7) == 74);
  CHECK(max_category_count(6) == 40);
  CHECK_THROWS_AS(max_category_count(1), std::invalid_argument);
}

TEST_CASE("summarize_categories") {
  const PathCategory mixed{SubPathClass::stable, SubPathClass::unstable,
                           SubPathClass::missing};
  SUBCASE("one category repeated is a single unique path") {
    const std::vector<PathCategory> cats(30, mixed);
    const ClassSummary s = summarize_categories(cats, 7);
    CHECK(s.unique_categories == 1);
    CHECK(s.unique_pct == doctest::Approx(100.0 / 74.0));
    CHECK(s.stable_pct + s.unstable_pct + s.missing_pct ==
          doctest::Approx(100.0).epsilon(1e-6));
  }
  SUBCASE("adding a stable leg changes neither unstable nor missing counts") {
    std::vector<PathCategory> cats{mixed};
    const ClassSummary before = summarize_categories(cats, 7);
    PathCategory longer = mixed;
    longer.push_back(SubPathClass::stable);
    const ClassSummary after = summarize_categories({longer}, 7);
    const double n_before = static_cast<double>(before.total_subpaths);
    const double n_after = static_cast<double>(after.total_subpaths);
    CHECK(before.unstable_pct * n_before == doctest::Approx(after.unstable_pct * n_after));
    CHECK(before.missing_pct * n_before == doctest::Approx(after.missing_pct * n_after));
  }
  SUBCASE("rejects degenerate routes") {
    CHECK_THROWS_AS(summarize_categories({}, 1), std::invalid_argument);
  }
}
