#include "wpgen/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wpgen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

/// Dominance over optional objectives: any feasible member dominates any
/// infeasible one; infeasible members never dominate each other.
bool member_dominates(const std::optional<ObjectiveVector>& a,
                      const std::optional<ObjectiveVector>& b) {
  if (!a) return false;
  if (!b) return true;
  return dominates(*a, *b);
}

/// Canonical order for persisted fronts: along the dist axis, best unstable
/// first on ties.
void sort_front(ParetoFront& front) {
  std::sort(front.begin(), front.end(), [](const FrontEntry& a, const FrontEntry& b) {
    if (a.obj.dist_wps != b.obj.dist_wps) return a.obj.dist_wps < b.obj.dist_wps;
    if (a.obj.unstable != b.obj.unstable) return a.obj.unstable > b.obj.unstable;
    return a.ind.values < b.ind.values;
  });
  front.erase(std::unique(front.begin(), front.end(),
                          [](const FrontEntry& a, const FrontEntry& b) {
                            return a.ind.values == b.ind.values;
                          }),
              front.end());
}

}  // namespace

const char* approach_name(Seeding s) {
  switch (s) {
    case Seeding::seed: return "WPgen_seed";
    case Seeding::comb: return "WPgen_comb";
    case Seeding::rnd: return "WPgen_rnd";
  }
  return "?";
}

Individual seed_individual(const WaypointSet& original, const SearchBounds& bounds,
                           Rng& rng, int* mutation_events) {
  const int dim = bounds.dim;
  const std::size_t n = original.size();
  Individual ind = flatten(original);
  int events = 0;
  double p = 0.0;
  do {
    // waypoint index in 2..N; repeats allowed, later picks overwrite
    const std::size_t wp = 1 + rng.index(n - 1);
    for (int c = 0; c < dim; ++c) {
      const std::size_t v = (wp - 1) * dim + c;
      ind.values[v] = rng.uniform(bounds.intervals[v].lo, bounds.intervals[v].hi);
    }
    ++events;
    p = rng.uniform();
  } while (p < std::pow(0.5, events));
  if (mutation_events) *mutation_events = events;
  return ind;
}

Individual random_individual(const SearchBounds& bounds, Rng& rng) {
  Individual ind;
  ind.values.reserve(bounds.num_variables());
  for (const Interval& iv : bounds.intervals)
    ind.values.push_back(rng.uniform(iv.lo, iv.hi));
  return ind;
}

std::vector<Individual> init_population(Seeding strategy, int size,
                                        const WaypointSet& original,
                                        const SearchBounds& bounds, Rng& rng) {
  if (size < 2)
    throw std::invalid_argument("init_population: population size must be >= 2");
  std::vector<Individual> pop;
  pop.reserve(size);
  pop.push_back(flatten(original));  // every strategy keeps the original route
  const int rest = size - 1;
  switch (strategy) {
    case Seeding::seed:
      for (int i = 0; i < rest; ++i)
        pop.push_back(seed_individual(original, bounds, rng));
      break;
    case Seeding::comb: {
      const int seeded = (rest + 1) / 2;
      for (int i = 0; i < seeded; ++i)
        pop.push_back(seed_individual(original, bounds, rng));
      for (int i = seeded; i < rest; ++i)
        pop.push_back(random_individual(bounds, rng));
      break;
    }
    case Seeding::rnd:
      for (int i = 0; i < rest; ++i)
        pop.push_back(random_individual(bounds, rng));
      break;
  }
  return pop;
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    std::span<const Member> pop) {
  const std::size_t n = pop.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<int> dom_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;

  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (member_dominates(pop[i].obj, pop[j].obj)) dominated[i].push_back(j);
      else if (member_dominates(pop[j].obj, pop[i].obj)) ++dom_count[i];
    }
    if (dom_count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<std::size_t> next;
    for (std::size_t i : current)
      for (std::size_t j : dominated[i])
        if (--dom_count[j] == 0) next.push_back(j);
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
  const std::size_t n = front.size();
  if (n == 0) throw std::invalid_argument("crowding_distance: empty front");
  std::vector<double> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), kInf);
    return dist;
  }
  for (int obj = 0; obj < 2; ++obj) {
    const auto value = [&](std::size_t i) {
      return obj == 0 ? front[i].dist_wps : front[i].unstable;
    };
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value(a) < value(b); });
    const double range = value(order.back()) - value(order.front());
    dist[order.front()] = kInf;
    dist[order.back()] = kInf;
    if (range <= 0.0) continue;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const std::size_t i = order[k];
      if (dist[i] == kInf) continue;
      dist[i] += (value(order[k + 1]) - value(order[k - 1])) / range;
    }
  }
  return dist;
}

std::pair<Individual, Individual> sbx_crossover(const Individual& parent_a,
                                                const Individual& parent_b,
                                                const SearchBounds& bounds,
                                                const SearchConfig& config,
                                                Rng& rng) {
  if (parent_a.values.size() != bounds.num_variables() ||
      parent_b.values.size() != bounds.num_variables())
    throw std::invalid_argument("sbx_crossover: genotype length mismatch");

  if (rng.uniform() >= config.crossover_probability)
    return {parent_a, parent_b};

  const std::size_t nvars = bounds.num_variables();
  const std::size_t dim = static_cast<std::size_t>(bounds.dim);
  const std::size_t nblocks = nvars / dim;
  // cut between waypoints; parent roles swap across it
  const std::size_t cut = nblocks >= 2 ? 1 + rng.index(nblocks - 1) : nblocks;

  Individual child_a = parent_a;
  Individual child_b = parent_b;
  const double eta = config.crossover_distribution_index;
  for (std::size_t v = 0; v < nvars; ++v) {
    const bool lead_a = (v / dim) < cut;
    const double p = parent_a.values[v];
    const double q = parent_b.values[v];
    double c1 = p, c2 = q;
    if (rng.uniform() < 0.5 && std::abs(p - q) > 1e-14) {
      const double u = rng.uniform();
      const double beta = u <= 0.5
                              ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                              : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
      c1 = 0.5 * ((1.0 + beta) * p + (1.0 - beta) * q);
      c2 = 0.5 * ((1.0 - beta) * p + (1.0 + beta) * q);
      c1 = clamp(c1, bounds.intervals[v].lo, bounds.intervals[v].hi);
      c2 = clamp(c2, bounds.intervals[v].lo, bounds.intervals[v].hi);
    }
    child_a.values[v] = lead_a ? c1 : c2;
    child_b.values[v] = lead_a ? c2 : c1;
  }
  return {std::move(child_a), std::move(child_b)};
}

Individual polynomial_mutation(const Individual& ind, const SearchBounds& bounds,
                               double min_wp_dist, const WaypointSet& original,
                               const SearchConfig& config, Rng& rng) {
  const std::size_t nvars = bounds.num_variables();
  const double pm = config.expected_mutated_variables / static_cast<double>(nvars);
  const double eta = config.mutation_distribution_index;

  Individual out = ind;
  bool mutated = false;
  for (std::size_t v = 0; v < nvars; ++v) {
    if (rng.uniform() >= pm) continue;
    const double lo = bounds.intervals[v].lo;
    const double hi = bounds.intervals[v].hi;
    if (!(hi > lo)) continue;
    const double y = out.values[v];
    const double u = rng.uniform();
    const double d1 = (y - lo) / (hi - lo);
    const double d2 = (hi - y) / (hi - lo);
    double dq;
    if (u <= 0.5)
      dq = std::pow(2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0),
                    1.0 / (eta + 1.0)) -
           1.0;
    else
      dq = 1.0 - std::pow(2.0 * (1.0 - u) +
                              2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0),
                          1.0 / (eta + 1.0));
    out.values[v] = clamp(y + dq * (hi - lo), lo, hi);
    mutated = true;
  }
  if (!mutated) return ind;
  // constraint check: an infeasible mutation is not applied
  if (!validate_waypoint_set(decode(out, original), min_wp_dist)) return ind;
  return out;
}

namespace {

struct RankedPopulation {
  std::vector<Member> members;
  std::vector<int> rank;
  std::vector<double> crowd;
};

void rank_population(RankedPopulation& pop) {
  const auto fronts = fast_nondominated_sort(pop.members);
  pop.rank.assign(pop.members.size(), 0);
  pop.crowd.assign(pop.members.size(), 0.0);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    std::vector<ObjectiveVector> objs;
    std::vector<std::size_t> feasible;
    for (std::size_t i : fronts[f]) {
      pop.rank[i] = static_cast<int>(f);
      if (pop.members[i].obj) {
        feasible.push_back(i);
        objs.push_back(*pop.members[i].obj);
      }
    }
    if (!objs.empty()) {
      const std::vector<double> cd = crowding_distance(objs);
      for (std::size_t k = 0; k < feasible.size(); ++k)
        pop.crowd[feasible[k]] = cd[k];
    }
  }
}

/// rank up, then crowding down, then stable index order.
bool selection_less(const RankedPopulation& pop, std::size_t a, std::size_t b) {
  if (pop.rank[a] != pop.rank[b]) return pop.rank[a] < pop.rank[b];
  if (pop.crowd[a] != pop.crowd[b]) return pop.crowd[a] > pop.crowd[b];
  return a < b;
}

std::size_t binary_tournament(const RankedPopulation& pop, Rng& rng) {
  const std::size_t a = rng.index(pop.members.size());
  const std::size_t b = rng.index(pop.members.size());
  return selection_less(pop, a, b) ? a : b;
}

ParetoFront extract_front(std::span<const Member> members) {
  ParetoFront front;
  const auto fronts = fast_nondominated_sort(members);
  if (!fronts.empty())
    for (std::size_t i : fronts.front())
      if (members[i].obj) front.push_back({members[i].ind, *members[i].obj});
  sort_front(front);
  return front;
}

}  // namespace

RunRecord nsga2_run(EvalContext& ctx, const SearchConfig& config) {
  if (config.population_size < 2 || config.max_generations < 1)
    throw std::invalid_argument("nsga2_run: bad search configuration");
  const auto t0 = std::chrono::steady_clock::now();
  const long long budget = config.evaluation_budget();
  const int pop_size = config.population_size;
  Rng rng(config.rng_seed);

  RunRecord rec;
  rec.approach = approach_name(config.seeding);
  rec.rng_seed = config.rng_seed;
  rec.evals.reserve(static_cast<std::size_t>(budget));

  const auto evaluate = [&](Individual ind, int gen) {
    Member m;
    m.obj = ctx.evaluate(ind);
    m.ind = std::move(ind);
    rec.evals.push_back({gen, m.ind, m.obj});
    return m;
  };

  RankedPopulation pop;
  long long used = 0;
  for (Individual& ind : init_population(config.seeding, pop_size,
                                         ctx.original(), ctx.bounds(), rng)) {
    pop.members.push_back(evaluate(std::move(ind), 0));
    ++used;
  }
  rank_population(pop);

  int gen = 1;
  while (used + pop_size <= budget) {
    std::vector<Member> combined = pop.members;
    while (static_cast<int>(combined.size()) < 2 * pop_size) {
      const Individual& pa = pop.members[binary_tournament(pop, rng)].ind;
      const Individual& pb = pop.members[binary_tournament(pop, rng)].ind;
      auto [ca, cb] = sbx_crossover(pa, pb, ctx.bounds(), config, rng);
      ca = polynomial_mutation(ca, ctx.bounds(), ctx.vessel().min_wp_dist,
                               ctx.original(), config, rng);
      cb = polynomial_mutation(cb, ctx.bounds(), ctx.vessel().min_wp_dist,
                               ctx.original(), config, rng);
      combined.push_back(evaluate(std::move(ca), gen));
      ++used;
      if (static_cast<int>(combined.size()) < 2 * pop_size) {
        combined.push_back(evaluate(std::move(cb), gen));
        ++used;
      }
    }

    // (mu+lambda) environmental selection by rank, then crowding
    RankedPopulation merged;
    merged.members = std::move(combined);
    rank_population(merged);
    const auto fronts = fast_nondominated_sort(merged.members);
    RankedPopulation next;
    next.members.reserve(pop_size);
    for (const auto& front : fronts) {
      if (static_cast<int>(next.members.size()) == pop_size) break;
      const int room = pop_size - static_cast<int>(next.members.size());
      if (static_cast<int>(front.size()) <= room) {
        for (std::size_t i : front) next.members.push_back(merged.members[i]);
      } else {
        std::vector<std::size_t> order = front;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
          if (merged.crowd[a] != merged.crowd[b]) return merged.crowd[a] > merged.crowd[b];
          return a < b;
        });
        for (int k = 0; k < room; ++k)
          next.members.push_back(merged.members[order[k]]);
      }
    }
    pop = std::move(next);
    rank_population(pop);
    ++gen;
  }

  rec.front = extract_front(pop.members);
  rec.wall_clock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

RunRecord random_search_run(EvalContext& ctx, const SearchConfig& config) {
  if (config.population_size < 1 || config.max_generations < 1)
    throw std::invalid_argument("random_search_run: bad search configuration");
  const auto t0 = std::chrono::steady_clock::now();
  const long long budget = config.evaluation_budget();
  Rng rng(config.rng_seed);

  RunRecord rec;
  rec.approach = "RS";
  rec.rng_seed = config.rng_seed;
  rec.evals.reserve(static_cast<std::size_t>(budget));

  std::vector<Member> all;
  all.reserve(static_cast<std::size_t>(budget));
  for (long long i = 0; i < budget; ++i) {
    Individual ind = i == 0 ? flatten(ctx.original())
                            : random_individual(ctx.bounds(), rng);
    Member m;
    m.obj = ctx.evaluate(ind);
    m.ind = std::move(ind);
    rec.evals.push_back({static_cast<int>(i / config.population_size), m.ind, m.obj});
    all.push_back(std::move(m));
  }

  // nondominated subset of every feasible evaluation
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!all[i].obj) continue;
    bool dominated_by_any = false;
    for (std::size_t j = 0; j < all.size(); ++j)
      if (j != i && member_dominates(all[j].obj, all[i].obj)) {
        dominated_by_any = true;
        break;
      }
    if (!dominated_by_any) rec.front.push_back({all[i].ind, *all[i].obj});
  }
  sort_front(rec.front);
  rec.wall_clock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace wpgen
