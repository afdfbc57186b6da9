#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "wpgen/search.hpp"

using namespace wpgen;

namespace {

/// Fast vessel for search-loop tests: short legs, coarse dt.
VesselConfig quick_vessel() {
  VesselConfig v;
  v.name = "quick";
  v.kind = VesselKind::surface;
  v.min_wp_dist = 60.0;
  v.acceptance_radius = 8.0;
  v.max_leg_samples = 400;
  v.dt = 0.5;
  v.cruise_speed = 5.0;
  v.lookahead = 40.0;
  v.nomoto_k = 0.1;
  v.nomoto_t = 4.0;
  v.max_rudder = 0.6;
  v.max_rudder_rate = 0.6;
  v.heading_kp = 1.5;
  v.heading_kd = 7.0;
  v.roll_omega = 0.8;
  v.roll_zeta = 0.25;
  v.roll_gain = 0.3;
  return v;
}

WaypointSet quick_route() {
  return WaypointSet({{0, 0}, {150, 0}, {300, 60}, {450, 0}});
}

SearchConfig quick_config(Seeding s, std::uint64_t seed, int pop = 6, int gens = 8) {
  SearchConfig cfg;
  cfg.population_size = pop;
  cfg.max_generations = gens;
  cfg.seeding = s;
  cfg.rng_seed = seed;
  return cfg;
}

Member feasible_member(double dist, double unstable) {
  Member m;
  m.obj = ObjectiveVector{dist, unstable};
  return m;
}

/// O(n^2) dominance oracle used to cross-check the sorting routine.
std::vector<int> brute_force_ranks(const std::vector<Member>& pop) {
  const auto dom = [](const Member& a, const Member& b) {
    if (!a.obj) return false;
    if (!b.obj) return true;
    return dominates(*a.obj, *b.obj);
  };
  std::vector<int> rank(pop.size(), -1);
  std::vector<bool> assigned(pop.size(), false);
  int level = 0;
  std::size_t left = pop.size();
  while (left > 0) {
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (assigned[i]) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < pop.size(); ++j)
        if (!assigned[j] && j != i && dom(pop[j], pop[i])) {
          dominated = true;
          break;
        }
      if (!dominated) current.push_back(i);
    }
    for (std::size_t i : current) {
      rank[i] = level;
      assigned[i] = true;
    }
    left -= current.size();
    ++level;
  }
  return rank;
}

int count_differing_blocks(const Individual& a, const Individual& b, int dim) {
  int count = 0;
  for (std::size_t blk = 0; blk * dim < a.values.size(); ++blk) {
    bool differs = false;
    for (int c = 0; c < dim; ++c)
      if (a.values[blk * dim + c] != b.values[blk * dim + c]) differs = true;
    if (differs) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("seed_individual mutates whole waypoints inside the delta box") {
  const WaypointSet original = quick_route();
  const SearchBounds bounds = make_bounds(original, 50.0);
  Rng rng(61);
  const Individual base = flatten(original);

  int one_event_with_one_block = 0, calls_with_one_event = 0;
  for (int i = 0; i < 2000; ++i) {
    int events = 0;
    const Individual ind = seed_individual(original, bounds, rng, &events);
    CHECK(bounds.contains(ind.values));
    CHECK(events >= 1);
    const int blocks = count_differing_blocks(ind, base, bounds.dim);
    CHECK(blocks >= 1);
    CHECK(blocks <= events);
    if (events == 1) {
      ++calls_with_one_event;
      if (blocks == 1) ++one_event_with_one_block;
    }
  }
  // one loop iteration -> exactly one mutated waypoint
  CHECK(one_event_with_one_block == calls_with_one_event);
  // continuation probability after the first mutation is 0.5
  CHECK(calls_with_one_event > 2000 * 0.44);
  CHECK(calls_with_one_event < 2000 * 0.56);
}

TEST_CASE("init_population composition per strategy") {
  const WaypointSet original = quick_route();
  const SearchBounds bounds = make_bounds(original, 50.0);
  const Individual base = flatten(original);

  SUBCASE("rnd keeps exactly one copy of the original") {
    Rng rng(67);
    const auto pop = init_population(Seeding::rnd, 10, original, bounds, rng);
    REQUIRE(pop.size() == 10);
    int originals = 0;
    for (const Individual& ind : pop)
      if (ind == base) ++originals;
    CHECK(originals == 1);
    for (const Individual& ind : pop) CHECK(bounds.contains(ind.values));
  }
  SUBCASE("comb splits the remainder into ceil-half seeded plus random") {
    Rng rng(71);
    const auto pop = init_population(Seeding::comb, 10, original, bounds, rng);
    REQUIRE(pop.size() == 10);
    CHECK(pop[0] == base);
    // seeded members keep at least one waypoint of the original route,
    // uniform draws over all blocks almost surely do not
    int with_original_block = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
      const int blocks = static_cast<int>(pop[i].values.size()) / bounds.dim;
      if (count_differing_blocks(pop[i], base, bounds.dim) < blocks)
        ++with_original_block;
    }
    CHECK(with_original_block == 5);
  }
  SUBCASE("seed of size two is the original plus one mutant") {
    Rng rng(73);
    const auto pop = init_population(Seeding::seed, 2, original, bounds, rng);
    REQUIRE(pop.size() == 2);
    CHECK(pop[0] == base);
    CHECK(count_differing_blocks(pop[1], base, bounds.dim) >= 1);
  }
  SUBCASE("size below two is rejected") {
    Rng rng(79);
    CHECK_THROWS_AS(init_population(Seeding::seed, 1, original, bounds, rng),
                    std::invalid_argument);
  }
}

TEST_CASE("fast_nondominated_sort basics") {
  SUBCASE("single member forms one front") {
    const std::vector<Member> pop{feasible_member(1, 1)};
    const auto fronts = fast_nondominated_sort(pop);
    REQUIRE(fronts.size() == 1);
    CHECK(fronts[0] == std::vector<std::size_t>{0});
  }
  SUBCASE("(0,5) dominates (1,1)") {
    const std::vector<Member> pop{feasible_member(0, 5), feasible_member(1, 1)};
    const auto fronts = fast_nondominated_sort(pop);
    REQUIRE(fronts.size() == 2);
    CHECK(fronts[0] == std::vector<std::size_t>{0});
    CHECK(fronts[1] == std::vector<std::size_t>{1});
  }
  SUBCASE("infeasible members sink below every feasible front") {
    std::vector<Member> pop{feasible_member(3, 5), Member{}, feasible_member(1, 3)};
    const auto fronts = fast_nondominated_sort(pop);
    REQUIRE(fronts.size() == 2);
    CHECK(fronts[0] == std::vector<std::size_t>({0, 2}));
    CHECK(fronts[1] == std::vector<std::size_t>{1});
  }
}

TEST_CASE("fast_nondominated_sort matches the brute-force oracle") {
  Rng rng(83);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Member> pop;
    const int n = 2 + static_cast<int>(rng.index(30));
    for (int i = 0; i < n; ++i) {
      if (rng.uniform() < 0.1) pop.push_back(Member{});  // infeasible
      else
        pop.push_back(feasible_member(rng.uniform(0, 10),
                                      std::floor(rng.uniform(0, 5))));
    }
    const auto fronts = fast_nondominated_sort(pop);
    const auto expected = brute_force_ranks(pop);
    for (std::size_t f = 0; f < fronts.size(); ++f)
      for (std::size_t i : fronts[f])
        CHECK(expected[i] == static_cast<int>(f));
  }
}

TEST_CASE("crowding distance") {
  SUBCASE("a front of two is all boundary") {
    const std::vector<ObjectiveVector> front{{0, 1}, {1, 0}};
    const auto d = crowding_distance(front);
    CHECK(std::isinf(d[0]));
    CHECK(std::isinf(d[1]));
  }
  SUBCASE("equally spaced middle member gets 2 after normalization") {
    const std::vector<ObjectiveVector> front{{0, 4}, {1, 2}, {2, 0}};
    const auto d = crowding_distance(front);
    CHECK(std::isinf(d[0]));
    CHECK(d[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::isinf(d[2]));
  }
  SUBCASE("permutation leaves the multiset unchanged") {
    std::vector<ObjectiveVector> front{{0, 9}, {1, 7}, {3, 4}, {6, 2}, {9, 0}};
    auto d1 = crowding_distance(front);
    std::reverse(front.begin(), front.end());
    auto d2 = crowding_distance(front);
    std::sort(d1.begin(), d1.end());
    std::sort(d2.begin(), d2.end());
    CHECK(d1 == d2);
  }
}

TEST_CASE("sbx crossover honors the waypoint boundary rule") {
  const WaypointSet original = quick_route();
  const SearchBounds bounds = make_bounds(original, 50.0);
  SearchConfig cfg = quick_config(Seeding::rnd, 0);
  Rng rng(89);

  SUBCASE("probability zero copies the parents") {
    cfg.crossover_probability = 0.0;
    const Individual a = flatten(original);
    Individual b = a;
    b.values[0] += 10;
    const auto [ca, cb] = sbx_crossover(a, b, bounds, cfg, rng);
    CHECK(ca == a);
    CHECK(cb == b);
  }
  SUBCASE("identical parents are a fixed point") {
    const Individual a = flatten(original);
    for (int i = 0; i < 20; ++i) {
      const auto [ca, cb] = sbx_crossover(a, a, bounds, cfg, rng);
      CHECK(ca == a);
      CHECK(cb == a);
    }
  }
  SUBCASE("waypoints equal in both parents pass through untouched") {
    Individual a = flatten(original);
    Individual b = a;
    // parents differ only in the middle waypoint block
    b.values[bounds.dim] += 17.0;
    b.values[bounds.dim + 1] -= 9.0;
    for (int i = 0; i < 50; ++i) {
      const auto [ca, cb] = sbx_crossover(a, b, bounds, cfg, rng);
      for (std::size_t v = 0; v < a.values.size(); ++v) {
        if (v >= static_cast<std::size_t>(bounds.dim) &&
            v < static_cast<std::size_t>(2 * bounds.dim))
          continue;  // the differing block may blend
        CHECK(ca.values[v] == a.values[v]);
        CHECK(cb.values[v] == a.values[v]);
      }
      CHECK(bounds.contains(ca.values));
      CHECK(bounds.contains(cb.values));
    }
  }
  SUBCASE("children always stay inside bounds") {
    Rng gen(97);
    for (int i = 0; i < 100; ++i) {
      const Individual a = random_individual(bounds, gen);
      const Individual b = random_individual(bounds, gen);
      const auto [ca, cb] = sbx_crossover(a, b, bounds, cfg, gen);
      CHECK(bounds.contains(ca.values));
      CHECK(bounds.contains(cb.values));
    }
  }
}

TEST_CASE("polynomial mutation") {
  const WaypointSet original = quick_route();
  const SearchBounds bounds = make_bounds(original, 50.0);
  SearchConfig cfg = quick_config(Seeding::rnd, 0);
  const double min_dist = quick_vessel().min_wp_dist;

  SUBCASE("zero expected mutations is the identity") {
    cfg.expected_mutated_variables = 0.0;
    Rng rng(101);
    const Individual a = random_individual(bounds, rng);
    CHECK(polynomial_mutation(a, bounds, min_dist, original, cfg, rng) == a);
  }
  SUBCASE("output stays inside bounds") {
    cfg.expected_mutated_variables = 2.0;
    Rng rng(103);
    for (int i = 0; i < 200; ++i) {
      const Individual a = random_individual(bounds, rng);
      const Individual m =
          polynomial_mutation(a, bounds, min_dist, original, cfg, rng);
      CHECK(bounds.contains(m.values));
    }
  }
  SUBCASE("violating mutations are rolled back, valid ones applied") {
    // two-waypoint route whose single leg sits exactly at min_wp_dist:
    // any mutation pulling wp2 closer must be rolled back entirely
    const WaypointSet tight({{0, 0}, {100, 0}});
    const SearchBounds tb = make_bounds(tight, 30.0);
    SearchConfig mc = quick_config(Seeding::rnd, 0);
    mc.expected_mutated_variables = 2.0;  // both coordinates mutate
    const Individual base = flatten(tight);
    int rollbacks = 0, applied = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Rng rng(seed);
      const Individual out =
          polynomial_mutation(base, tb, 100.0, tight, mc, rng);
      // the contract: outputs never violate the constraint
      CHECK(validate_waypoint_set(decode(out, tight), 100.0));
      if (out == base) ++rollbacks;
      else ++applied;
    }
    CHECK(rollbacks > 0);
    CHECK(applied > 0);
  }
}

TEST_CASE("nsga2_run accounting, determinism, and front sanity") {
  const WaypointSet original = quick_route();
  const SearchBounds bounds = make_bounds(original, 60.0);
  const VesselConfig vessel = quick_vessel();
  const SearchConfig cfg = quick_config(Seeding::comb, 12345);

  EvalContext ctx(original, bounds, vessel);
  const RunRecord rec = nsga2_run(ctx, cfg);

  CHECK(rec.evals.size() == static_cast<std::size_t>(cfg.evaluation_budget()));
  CHECK(ctx.evaluations() == static_cast<std::uint64_t>(cfg.evaluation_budget()));
  CHECK(rec.approach == "WPgen_comb");
  REQUIRE(!rec.front.empty());

  SUBCASE("front members are mutually nondominated and feasible") {
    for (std::size_t i = 0; i < rec.front.size(); ++i) {
      CHECK(validate_waypoint_set(decode(rec.front[i].ind, original),
                                  vessel.min_wp_dist));
      CHECK(bounds.contains(rec.front[i].ind.values));
      for (std::size_t j = 0; j < rec.front.size(); ++j)
        if (i != j) CHECK_FALSE(dominates(rec.front[i].obj, rec.front[j].obj));
    }
  }
  SUBCASE("identical seeds reproduce the run bit for bit") {
    EvalContext ctx2(original, bounds, vessel);
    const RunRecord rec2 = nsga2_run(ctx2, cfg);
    REQUIRE(rec2.front.size() == rec.front.size());
    for (std::size_t i = 0; i < rec.front.size(); ++i) {
      CHECK(rec2.front[i].ind == rec.front[i].ind);
      CHECK(rec2.front[i].obj == rec.front[i].obj);
    }
    REQUIRE(rec2.evals.size() == rec.evals.size());
    for (std::size_t i = 0; i < rec.evals.size(); ++i) {
      CHECK(rec2.evals[i].ind == rec.evals[i].ind);
      CHECK(rec2.evals[i].objectives == rec.evals[i].objectives);
    }
  }
  SUBCASE("elitism never loses the best objective values") {
    double best_dist = std::numeric_limits<double>::infinity();
    double best_unstable = 0.0;
    for (const EvalRecord& e : rec.evals) {
      if (!e.objectives) continue;
      if (e.gen == 0) {
        best_dist = std::min(best_dist, e.objectives->dist_wps);
        best_unstable = std::max(best_unstable, e.objectives->unstable);
      }
    }
    double front_best_dist = std::numeric_limits<double>::infinity();
    double front_best_unstable = 0.0;
    for (const FrontEntry& e : rec.front) {
      front_best_dist = std::min(front_best_dist, e.obj.dist_wps);
      front_best_unstable = std::max(front_best_unstable, e.obj.unstable);
    }
    CHECK(front_best_dist <= best_dist + 1e-12);
    CHECK(front_best_unstable >= best_unstable - 1e-12);
  }
  SUBCASE("every evaluated individual stayed inside the search bounds") {
    for (const EvalRecord& e : rec.evals) CHECK(bounds.contains(e.ind.values));
  }
}

TEST_CASE("random_search_run uses the same budget and an all-log front") {
  const WaypointSet original = quick_route();
  const SearchBounds bounds = make_bounds(original, 60.0);
  const VesselConfig vessel = quick_vessel();
  const SearchConfig cfg = quick_config(Seeding::rnd, 999);

  EvalContext ctx(original, bounds, vessel);
  const RunRecord rec = random_search_run(ctx, cfg);
  CHECK(rec.evals.size() == static_cast<std::size_t>(cfg.evaluation_budget()));
  CHECK(rec.approach == "RS");

  SUBCASE("front equals the nondominated subset of the full log") {
    for (const FrontEntry& e : rec.front) {
      for (const EvalRecord& r : rec.evals) {
        if (!r.objectives) continue;
        CHECK_FALSE(dominates(*r.objectives, e.obj));
      }
    }
    // and every feasible evaluation not on the front is dominated or a duplicate
    for (const EvalRecord& r : rec.evals) {
      if (!r.objectives) continue;
      bool on_front = false;
      for (const FrontEntry& e : rec.front)
        if (e.ind == r.ind) on_front = true;
      if (on_front) continue;
      bool dominated_or_dup = false;
      for (const EvalRecord& other : rec.evals) {
        if (!other.objectives) continue;
        if (dominates(*other.objectives, *r.objectives)) dominated_or_dup = true;
      }
      for (const FrontEntry& e : rec.front)
        if (e.obj == *r.objectives) dominated_or_dup = true;
      CHECK(dominated_or_dup);
    }
  }
  SUBCASE("a budget of one returns just the original route") {
    SearchConfig tiny = cfg;
    tiny.population_size = 1;
    tiny.max_generations = 1;
    EvalContext ctx2(original, bounds, vessel);
    const RunRecord r = random_search_run(ctx2, tiny);
    CHECK(r.evals.size() == 1);
    REQUIRE(r.front.size() == 1);
    CHECK(r.front[0].ind == flatten(original));
    CHECK(r.front[0].obj.dist_wps == 0.0);
  }
}
