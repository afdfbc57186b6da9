#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wpgen/fitness.hpp"
#include "wpgen/rng.hpp"

namespace wpgen {

/// Initial-population strategies: fully seeded mutants of the original route,
/// half seeded / half random, or fully random. Every strategy plants one copy
/// of the original route.
enum class Seeding { seed, comb, rnd };

const char* approach_name(Seeding s);  // WPgen_seed / WPgen_comb / WPgen_rnd

struct SearchConfig {
  int population_size = 10;
  int max_generations = 1000;
  Seeding seeding = Seeding::seed;
  double crossover_probability = 1.0;
  double crossover_distribution_index = 20.0;
  double mutation_distribution_index = 20.0;
  double expected_mutated_variables = 1.0;
  std::uint64_t rng_seed = 0;

  long long evaluation_budget() const {
    return static_cast<long long>(population_size) * max_generations;
  }
};

struct Member {
  Individual ind;
  std::optional<ObjectiveVector> obj;
};

struct FrontEntry {
  Individual ind;
  ObjectiveVector obj;
};

/// Nondominated feasible solutions of one run.
using ParetoFront = std::vector<FrontEntry>;

struct RunRecord {
  std::string approach;
  int repetition = 0;
  std::uint64_t rng_seed = 0;
  double wall_clock_s = 0.0;
  ParetoFront front;
  std::vector<EvalRecord> evals;
};

/// Mutates at least one randomly chosen waypoint of the original route,
/// replacing all its coordinates with uniform draws from the search
/// intervals; after k mutations a further one happens with probability 0.5^k.
/// mutation_events, when given, receives the number of loop iterations.
Individual seed_individual(const WaypointSet& original, const SearchBounds& bounds,
                           Rng& rng, int* mutation_events = nullptr);

/// Uniform draw from the full search box.
Individual random_individual(const SearchBounds& bounds, Rng& rng);

std::vector<Individual> init_population(Seeding strategy, int size,
                                        const WaypointSet& original,
                                        const SearchBounds& bounds, Rng& rng);

/// Deb-style nondominated sorting over (dist_wps down, unstable up).
/// Infeasible members rank below every feasible member and end up together in
/// a trailing front.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    std::span<const Member> pop);

/// Crowding distances for one front of objective vectors; boundary members
/// get +inf, interior members the normalized cuboid perimeter sum. Ties in an
/// objective keep input order.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Simulated binary crossover with the exchange boundary restricted to whole
/// waypoints: one random waypoint-aligned cut decides which parent leads on
/// each side, so no waypoint's coordinates are ever split between children.
/// Children are clipped to the search bounds.
std::pair<Individual, Individual> sbx_crossover(const Individual& parent_a,
                                                const Individual& parent_b,
                                                const SearchBounds& bounds,
                                                const SearchConfig& config,
                                                Rng& rng);

/// Polynomial mutation at coordinate level, each variable with probability
/// expected_mutated_variables / num_variables, clipped to bounds. If the
/// mutated route violates min_wp_dist the whole mutation is rolled back.
Individual polynomial_mutation(const Individual& ind, const SearchBounds& bounds,
                               double min_wp_dist, const WaypointSet& original,
                               const SearchConfig& config, Rng& rng);

/// NSGA-II with binary tournament on (rank, crowding) and (mu+lambda)
/// selection. Stops after exactly population_size * max_generations
/// evaluations; deterministic for a fixed rng_seed.
RunRecord nsga2_run(EvalContext& ctx, const SearchConfig& config);

/// Random-search baseline on the identical evaluation budget; the first batch
/// includes one copy of the original route. The returned front is the
/// nondominated subset of every feasible individual evaluated.
RunRecord random_search_run(EvalContext& ctx, const SearchConfig& config);

}  // namespace wpgen
