#include "wpgen/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "wpgen/format.hpp"

namespace wpgen {

using nlohmann::json;

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// vessel registry

VesselConfig builtin_vessel(const std::string& name) {
  VesselConfig v;
  v.name = name;
  if (name == "mariner") {
    // 160 m surface tanker at 15 kn
    v.kind = VesselKind::surface;
    v.min_wp_dist = 1000.0;
    v.acceptance_radius = 320.0;  // two vessel lengths
    v.dt = 0.5;
    v.cruise_speed = 7.7;
    v.lookahead = 180.0;
    v.nomoto_k = 0.08;
    v.nomoto_t = 12.0;
    v.max_rudder = 0.6109;      // 35 deg
    v.max_rudder_rate = 0.015;  // slow steering gear, binds on hard maneuvers
    v.heading_kp = 2.2;
    v.heading_kd = 18.0;
    v.roll_omega = 0.5;
    v.roll_zeta = 0.25;
    v.roll_gain = 0.35;
  } else if (name == "remus100") {
    // 1.6 m torpedo-shaped AUV
    v.kind = VesselKind::underwater;
    v.min_wp_dist = 100.0;
    v.acceptance_radius = 3.2;
    v.dt = 0.1;
    v.cruise_speed = 2.3;
    v.lookahead = 12.0;
    v.nomoto_k = 0.5;
    v.nomoto_t = 2.5;
    v.max_rudder = 0.35;
    v.max_rudder_rate = 0.15;  // slow fin actuation, the source of weaving
    v.heading_kp = 1.5;
    v.heading_kd = 1.6;
    v.roll_omega = 1.5;
    v.roll_zeta = 0.2;
    v.roll_gain = 0.15;
    v.pitch_k = 0.3;
    v.pitch_t = 2.0;
    v.max_plane = 0.35;
    v.max_plane_rate = 1.0;
    v.pitch_kp = 2.0;
    v.pitch_kd = 3.0;
    v.max_pitch_ref = 0.35;
  } else if (name == "nspauv") {
    // 5.3 m research AUV
    v.kind = VesselKind::underwater;
    v.min_wp_dist = 120.0;
    v.acceptance_radius = 10.6;
    v.dt = 0.1;
    v.cruise_speed = 1.8;
    v.lookahead = 18.0;
    v.nomoto_k = 0.3;
    v.nomoto_t = 4.0;
    v.max_rudder = 0.4;
    v.max_rudder_rate = 0.3;
    v.heading_kp = 1.2;
    v.heading_kd = 1.6;
    v.roll_omega = 1.2;
    v.roll_zeta = 0.22;
    v.roll_gain = 0.2;
    v.pitch_k = 0.25;
    v.pitch_t = 3.0;
    v.max_plane = 0.4;
    v.max_plane_rate = 0.8;
    v.pitch_kp = 1.8;
    v.pitch_kd = 3.5;
    v.max_pitch_ref = 0.3;
  } else {
    throw std::invalid_argument("unknown vessel profile: " + name);
  }
  return v;
}

std::vector<std::string> builtin_vessel_names() {
  return {"mariner", "remus100", "nspauv"};
}

int default_max_leg_samples(const VesselConfig& vessel, const WaypointSet& route) {
  double longest = 0.0;
  for (std::size_t i = 0; i + 1 < route.size(); ++i)
    longest = std::max(longest, euclidean_distance(route[i], route[i + 1]));
  const double transit = longest / (vessel.cruise_speed * vessel.dt);
  return 4 * static_cast<int>(std::ceil(transit));
}

namespace {

WaypointSet builtin_route(const std::string& name) {
  if (name == "mariner")
    return WaypointSet({{0, 0},
                        {2000, 0},
                        {4000, 400},
                        {6000, 200},
                        {8000, 800},
                        {10000, 800}});
  if (name == "remus100")
    return WaypointSet({{0, 0, 10},
                        {250, 0, 12},
                        {500, 60, 14},
                        {750, 40, 16},
                        {1000, 100, 18},
                        {1250, 80, 20},
                        {1500, 140, 20}});
  if (name == "nspauv")
    return WaypointSet({{0, 0, 15},
                        {300, 0, 17},
                        {600, 70, 19},
                        {900, 50, 21},
                        {1200, 120, 23},
                        {1500, 100, 25},
                        {1800, 170, 25}});
  throw std::invalid_argument("unknown case study: " + name);
}

const std::vector<std::string> kAllApproaches = {"WPgen_seed", "WPgen_comb",
                                                 "WPgen_rnd", "RS"};

}  // namespace

ExperimentConfig builtin_case_study(const std::string& name) {
  ExperimentConfig cfg;
  cfg.vessel = builtin_vessel(name);
  cfg.original = builtin_route(name);
  cfg.delta = cfg.vessel.kind == VesselKind::surface ? 400.0 : 150.0;
  cfg.approaches = kAllApproaches;
  cfg.repetitions = 10;
  cfg.search.population_size = 10;
  cfg.search.max_generations = 100;
  cfg.base_seed = 42;
  cfg.out_dir = fs::path("runs") / name;
  if (cfg.vessel.max_leg_samples == 0)
    cfg.vessel.max_leg_samples = default_max_leg_samples(cfg.vessel, cfg.original);
  return cfg;
}

std::vector<ExperimentConfig> builtin_case_studies() {
  std::vector<ExperimentConfig> all;
  for (const std::string& name : builtin_vessel_names())
    all.push_back(builtin_case_study(name));
  return all;
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, std::string_view approach,
                              int repetition) {
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ hash_string(approach));
  h = mix64(h ^ static_cast<std::uint64_t>(repetition));
  return h;
}

// ---------------------------------------------------------------------------
// json (de)serialization

namespace {

json vessel_to_json(const VesselConfig& v) {
  return json{{"name", v.name},
              {"kind", v.kind == VesselKind::surface ? "surface" : "underwater"},
              {"min_wp_dist", v.min_wp_dist},
              {"acceptance_radius", v.acceptance_radius},
              {"max_leg_samples", v.max_leg_samples},
              {"dt", v.dt},
              {"cruise_speed", v.cruise_speed},
              {"lookahead", v.lookahead},
              {"nomoto_k", v.nomoto_k},
              {"nomoto_t", v.nomoto_t},
              {"max_rudder", v.max_rudder},
              {"max_rudder_rate", v.max_rudder_rate},
              {"heading_kp", v.heading_kp},
              {"heading_kd", v.heading_kd},
              {"roll_omega", v.roll_omega},
              {"roll_zeta", v.roll_zeta},
              {"roll_gain", v.roll_gain},
              {"pitch_k", v.pitch_k},
              {"pitch_t", v.pitch_t},
              {"max_plane", v.max_plane},
              {"max_plane_rate", v.max_plane_rate},
              {"pitch_kp", v.pitch_kp},
              {"pitch_kd", v.pitch_kd},
              {"max_pitch_ref", v.max_pitch_ref}};
}

VesselConfig vessel_from_json(const json& j) {
  VesselConfig v;
  if (j.is_string()) return builtin_vessel(j.get<std::string>());
  // start from a builtin profile when named, so partial overrides work
  if (j.contains("name") && j["name"].is_string()) {
    try {
      v = builtin_vessel(j["name"].get<std::string>());
    } catch (const std::invalid_argument&) {
      v.name = j["name"].get<std::string>();
    }
  }
  if (j.contains("kind"))
    v.kind = j["kind"].get<std::string>() == "underwater" ? VesselKind::underwater
                                                          : VesselKind::surface;
  const auto get = [&](const char* key, double& field) {
    if (j.contains(key)) field = j[key].get<double>();
  };
  get("min_wp_dist", v.min_wp_dist);
  get("acceptance_radius", v.acceptance_radius);
  if (j.contains("max_leg_samples")) v.max_leg_samples = j["max_leg_samples"].get<int>();
  get("dt", v.dt);
  get("cruise_speed", v.cruise_speed);
  get("lookahead", v.lookahead);
  get("nomoto_k", v.nomoto_k);
  get("nomoto_t", v.nomoto_t);
  get("max_rudder", v.max_rudder);
  get("max_rudder_rate", v.max_rudder_rate);
  get("heading_kp", v.heading_kp);
  get("heading_kd", v.heading_kd);
  get("roll_omega", v.roll_omega);
  get("roll_zeta", v.roll_zeta);
  get("roll_gain", v.roll_gain);
  get("pitch_k", v.pitch_k);
  get("pitch_t", v.pitch_t);
  get("max_plane", v.max_plane);
  get("max_plane_rate", v.max_plane_rate);
  get("pitch_kp", v.pitch_kp);
  get("pitch_kd", v.pitch_kd);
  get("max_pitch_ref", v.max_pitch_ref);
  return v;
}

json search_to_json(const SearchConfig& s) {
  return json{{"population_size", s.population_size},
              {"max_generations", s.max_generations},
              {"crossover_probability", s.crossover_probability},
              {"crossover_distribution_index", s.crossover_distribution_index},
              {"mutation_distribution_index", s.mutation_distribution_index},
              {"expected_mutated_variables", s.expected_mutated_variables}};
}

SearchConfig search_from_json(const json& j, SearchConfig s) {
  if (j.contains("population_size")) s.population_size = j["population_size"].get<int>();
  if (j.contains("max_generations")) s.max_generations = j["max_generations"].get<int>();
  if (j.contains("crossover_probability"))
    s.crossover_probability = j["crossover_probability"].get<double>();
  if (j.contains("crossover_distribution_index"))
    s.crossover_distribution_index = j["crossover_distribution_index"].get<double>();
  if (j.contains("mutation_distribution_index"))
    s.mutation_distribution_index = j["mutation_distribution_index"].get<double>();
  if (j.contains("expected_mutated_variables"))
    s.expected_mutated_variables = j["expected_mutated_variables"].get<double>();
  return s;
}

json waypoints_to_json(const WaypointSet& ws) {
  json rows = json::array();
  for (const Waypoint& wp : ws.waypoints()) {
    json row = json::array({wp.x, wp.y});
    if (wp.z) row.push_back(*wp.z);
    rows.push_back(std::move(row));
  }
  return rows;
}

WaypointSet waypoints_from_json(const json& rows) {
  std::vector<Waypoint> wps;
  for (const json& row : rows) {
    if (row.size() == 2) wps.emplace_back(row[0].get<double>(), row[1].get<double>());
    else if (row.size() == 3)
      wps.emplace_back(row[0].get<double>(), row[1].get<double>(), row[2].get<double>());
    else
      throw std::invalid_argument("waypoint rows need 2 or 3 coordinates");
  }
  return WaypointSet(std::move(wps));
}

Seeding seeding_for(const std::string& approach) {
  if (approach == "WPgen_seed") return Seeding::seed;
  if (approach == "WPgen_comb") return Seeding::comb;
  if (approach == "WPgen_rnd") return Seeding::rnd;
  throw std::invalid_argument("unknown approach: " + approach);
}

}  // namespace

ExperimentConfig load_experiment_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  json j = json::parse(in);

  ExperimentConfig cfg;
  const bool is_builtin = j.contains("vessel") && j["vessel"].is_string();
  if (is_builtin) {
    cfg = builtin_case_study(j["vessel"].get<std::string>());
  } else if (j.contains("vessel")) {
    cfg.vessel = vessel_from_json(j["vessel"]);
    cfg.approaches = kAllApproaches;
  } else {
    throw std::invalid_argument("experiment config: missing 'vessel'");
  }

  if (j.contains("waypoints")) {
    if (j["waypoints"].is_string())
      cfg.original = load_waypoints_csv(j["waypoints"].get<std::string>());
    else
      cfg.original = waypoints_from_json(j["waypoints"]);
  } else if (!is_builtin) {
    throw std::invalid_argument("experiment config: missing 'waypoints'");
  }
  if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
  if (j.contains("approaches")) {
    cfg.approaches.clear();
    for (const json& a : j["approaches"]) {
      const std::string name = a.get<std::string>();
      if (name != "RS") seeding_for(name);  // validates the name
      cfg.approaches.push_back(name);
    }
  }
  if (j.contains("repetitions")) cfg.repetitions = j["repetitions"].get<int>();
  if (j.contains("search")) cfg.search = search_from_json(j["search"], cfg.search);
  if (j.contains("seed")) cfg.base_seed = j["seed"].get<std::uint64_t>();
  if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();

  if (cfg.vessel.max_leg_samples == 0)
    cfg.vessel.max_leg_samples = default_max_leg_samples(cfg.vessel, cfg.original);
  return cfg;
}

// ---------------------------------------------------------------------------
// persistence

namespace {

std::string rep_dir_name(int repetition) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "rep_%03d", repetition);
  return buf;
}

std::vector<std::string> front_columns(int n_waypoints, int dim) {
  std::vector<std::string> cols = {"solution", "dist_wps", "unstable"};
  const char* axis = "xyz";
  for (int i = 2; i <= n_waypoints; ++i)
    for (int c = 0; c < dim; ++c)
      cols.push_back("wp" + std::to_string(i) + "_" + axis[c]);
  return cols;
}

void write_front_csv(const fs::path& path, const ParetoFront& front,
                     int n_waypoints, int dim) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const auto cols = front_columns(n_waypoints, dim);
  for (std::size_t i = 0; i < cols.size(); ++i)
    out << cols[i] << (i + 1 < cols.size() ? ',' : '\n');
  for (std::size_t i = 0; i < front.size(); ++i) {
    out << i << ',' << format_double(front[i].obj.dist_wps) << ','
        << format_double(front[i].obj.unstable);
    for (double v : front[i].ind.values) out << ',' << format_double(v);
    out << '\n';
  }
}

ParetoFront read_front_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty front csv");
  ParetoFront front;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cols;
    while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
    if (cols.size() < 4) throw std::runtime_error("bad front csv row: " + line);
    FrontEntry e;
    e.obj.dist_wps = cols[1];
    e.obj.unstable = cols[2];
    e.ind.values.assign(cols.begin() + 3, cols.end());
    front.push_back(std::move(e));
  }
  return front;
}

void write_evals_jsonl(const fs::path& path, const std::vector<EvalRecord>& evals) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const EvalRecord& e : evals) {
    json j{{"gen", e.gen},
           {"individual", e.ind.values},
           {"feasible", e.feasible()}};
    if (e.objectives) {
      j["dist_wps"] = e.objectives->dist_wps;
      j["unstable"] = e.objectives->unstable;
    } else {
      j["dist_wps"] = nullptr;
      j["unstable"] = nullptr;
    }
    out << j.dump() << '\n';
  }
}

}  // namespace

std::vector<EvalRecord> load_eval_log(const fs::path& dir) {
  std::ifstream in(dir / "evals.jsonl");
  if (!in) throw std::runtime_error("cannot read " + (dir / "evals.jsonl").string());
  std::vector<EvalRecord> evals;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    EvalRecord e;
    e.gen = j["gen"].get<int>();
    e.ind.values = j["individual"].get<std::vector<double>>();
    if (j["feasible"].get<bool>())
      e.objectives = ObjectiveVector{j["dist_wps"].get<double>(),
                                     j["unstable"].get<double>()};
    evals.push_back(std::move(e));
  }
  return evals;
}

void save_run(const fs::path& dir, const RunRecord& rec, const ExperimentConfig& cfg) {
  if (fs::exists(dir)) return;
  fs::create_directories(dir.parent_path());
  const fs::path tmp = dir.parent_path() / (".tmp-" + dir.filename().string());
  fs::remove_all(tmp);
  fs::create_directories(tmp / "traces");

  const int n = static_cast<int>(cfg.original.size());
  const int dim = cfg.original.dim();
  write_front_csv(tmp / "front.csv", rec.front, n, dim);
  write_evals_jsonl(tmp / "evals.jsonl", rec.evals);

  // per-solution traces for later classification
  EvalContext ctx(cfg.original, make_bounds(cfg.original, cfg.delta), cfg.vessel);
  for (std::size_t i = 0; i < rec.front.size(); ++i) {
    const SimulationResult res = ctx.simulate_candidate(rec.front[i].ind);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "sol_%03zu.csv", i);
    save_trace_csv(tmp / "traces" / buf, res, dim);
  }

  json meta{{"approach", rec.approach},
            {"repetition", rec.repetition},
            {"rng_seed", rec.rng_seed},
            {"wall_clock_s", rec.wall_clock_s},
            {"evaluations", rec.evals.size()},
            {"front_size", rec.front.size()},
            {"vessel", vessel_to_json(cfg.vessel)},
            {"search", search_to_json(cfg.search)},
            {"delta", cfg.delta},
            {"waypoints", waypoints_to_json(cfg.original)}};
  std::ofstream mout(tmp / "meta.json");
  mout << meta.dump(2) << '\n';
  mout.close();

  fs::rename(tmp, dir);  // atomic publish
}

LoadedRun load_run(const fs::path& dir) {
  std::ifstream min(dir / "meta.json");
  if (!min) throw std::runtime_error("cannot read " + (dir / "meta.json").string());
  json meta = json::parse(min);
  LoadedRun run;
  run.vessel = meta["vessel"]["name"].get<std::string>();
  run.approach = meta["approach"].get<std::string>();
  run.repetition = meta["repetition"].get<int>();
  run.rng_seed = meta["rng_seed"].get<std::uint64_t>();
  run.n_waypoints = static_cast<int>(meta["waypoints"].size());
  run.dim = static_cast<int>(meta["waypoints"][0].size());
  run.front = read_front_csv(dir / "front.csv");
  run.dir = dir;
  return run;
}

SimulationResult LoadedRun::load_trace(std::size_t solution) const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "sol_%03zu.csv", solution);
  return load_trace_csv(dir / "traces" / buf);
}

std::vector<LoadedRun> load_runs(const fs::path& root) {
  std::vector<fs::path> dirs;
  if (fs::exists(root / "meta.json")) {
    dirs.push_back(root);
  } else {
    for (const auto& entry : fs::recursive_directory_iterator(root))
      if (entry.is_directory() && fs::exists(entry.path() / "meta.json"))
        dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<LoadedRun> runs;
  runs.reserve(dirs.size());
  for (const fs::path& d : dirs) runs.push_back(load_run(d));
  std::sort(runs.begin(), runs.end(), [](const LoadedRun& a, const LoadedRun& b) {
    return std::tie(a.vessel, a.approach, a.repetition) <
           std::tie(b.vessel, b.approach, b.repetition);
  });
  return runs;
}

std::vector<fs::path> run_experiment(const ExperimentConfig& cfg) {
  cfg.vessel.validate();
  if (cfg.repetitions < 1)
    throw std::invalid_argument("run_experiment: repetitions must be >= 1");
  if (cfg.approaches.empty())
    throw std::invalid_argument("run_experiment: no approaches selected");
  if (!validate_waypoint_set(cfg.original, cfg.vessel.min_wp_dist))
    throw std::invalid_argument("run_experiment: original route violates min_wp_dist");

  // fail before any run if the output directory is unusable
  fs::create_directories(cfg.out_dir);
  {
    const fs::path probe = cfg.out_dir / ".write_probe";
    std::ofstream p(probe);
    if (!p) throw std::runtime_error("output directory not writable: " +
                                     cfg.out_dir.string());
    p.close();
    fs::remove(probe);
  }
  {
    json j{{"vessel", vessel_to_json(cfg.vessel)},
           {"waypoints", waypoints_to_json(cfg.original)},
           {"delta", cfg.delta},
           {"search", search_to_json(cfg.search)},
           {"approaches", cfg.approaches},
           {"repetitions", cfg.repetitions},
           {"seed", cfg.base_seed}};
    std::ofstream out(cfg.out_dir / "experiment.json");
    out << j.dump(2) << '\n';
  }

  const SearchBounds bounds = make_bounds(cfg.original, cfg.delta);
  std::vector<fs::path> run_dirs;
  for (const std::string& approach : cfg.approaches) {
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      const fs::path dir = cfg.out_dir / approach / rep_dir_name(rep);
      run_dirs.push_back(dir);
      if (fs::exists(dir / "meta.json")) continue;  // resume: already done

      SearchConfig sc = cfg.search;
      sc.rng_seed = derive_run_seed(cfg.base_seed, approach, rep);
      EvalContext ctx(cfg.original, bounds, cfg.vessel);
      RunRecord rec;
      if (approach == "RS") {
        rec = random_search_run(ctx, sc);
      } else {
        sc.seeding = seeding_for(approach);
        rec = nsga2_run(ctx, sc);
      }
      rec.approach = approach;
      rec.repetition = rep;
      save_run(dir, rec, cfg);
    }
  }
  return run_dirs;
}

// ---------------------------------------------------------------------------
// reporting

ReportTables report(const std::vector<LoadedRun>& runs) {
  if (runs.empty()) throw std::invalid_argument("report: no runs");
  ReportTables tables;

  // hypervolumes, normalized per vessel across all its approaches
  std::set<std::string> vessels;
  for (const LoadedRun& r : runs) vessels.insert(r.vessel);
  for (const std::string& vessel : vessels) {
    std::map<std::string, std::vector<std::vector<ObjectiveVector>>> fronts;
    for (const LoadedRun& r : runs) {
      if (r.vessel != vessel) continue;
      std::vector<ObjectiveVector> objs;
      objs.reserve(r.front.size());
      for (const FrontEntry& e : r.front) objs.push_back(e.obj);
      fronts[r.approach].push_back(std::move(objs));
    }
    const auto hv = hypervolumes_by_approach(fronts);
    std::map<std::string, std::vector<double>> hv_values;
    for (const auto& [approach, list] : hv) {
      tables.hv[{vessel, approach}] = list;
      std::vector<double>& vals = hv_values[approach];
      for (const RunHv& h : list) vals.push_back(h.hv);
    }
    if (hv_values.size() >= 2) {
      bool enough = true;
      for (const auto& [a, vals] : hv_values) enough = enough && vals.size() >= 2;
      if (enough) tables.comparisons[vessel] = compare(hv_values);
    }
  }

  // sub-path classes from persisted traces
  std::map<std::pair<std::string, std::string>, long long> counts[3];
  std::map<std::pair<std::string, std::string>, std::vector<double>> unique_pcts;
  for (const LoadedRun& r : runs) {
    const auto key = std::make_pair(r.vessel, r.approach);
    std::vector<PathCategory> cats;
    cats.reserve(r.front.size());
    for (std::size_t i = 0; i < r.front.size(); ++i)
      cats.push_back(categorize_path(r.load_trace(i)));
    for (const PathCategory& cat : cats)
      for (SubPathClass c : cat) ++counts[static_cast<int>(c)][key];
    const ClassSummary s = summarize_categories(cats, r.n_waypoints);
    unique_pcts[key].push_back(s.unique_pct);
  }
  for (const auto& [key, pcts] : unique_pcts) {
    ApproachClassReport rep;
    const double total = static_cast<double>(counts[0][key] + counts[1][key] +
                                             counts[2][key]);
    if (total > 0) {
      rep.stable_pct = 100.0 * static_cast<double>(counts[0][key]) / total;
      rep.unstable_pct = 100.0 * static_cast<double>(counts[1][key]) / total;
      rep.missing_pct = 100.0 * static_cast<double>(counts[2][key]) / total;
    }
    double sum = 0.0;
    for (double p : pcts) sum += p;
    rep.mean_unique_pct = pcts.empty() ? 0.0 : sum / static_cast<double>(pcts.size());
    tables.classes[key] = rep;
  }
  return tables;
}

// ---------------------------------------------------------------------------
// csv / json emitters

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::vector<std::string> vessels_of(const ReportTables& t) {
  std::set<std::string> vessels;
  for (const auto& [key, value] : t.classes) vessels.insert(key.first);
  for (const auto& [key, value] : t.hv) vessels.insert(key.first);
  return {vessels.begin(), vessels.end()};
}

std::vector<std::string> approaches_of(const ReportTables& t) {
  std::set<std::string> approaches;
  for (const auto& [key, value] : t.classes) approaches.insert(key.second);
  for (const auto& [key, value] : t.hv) approaches.insert(key.second);
  return {approaches.begin(), approaches.end()};
}

}  // namespace

void write_comparison_csv(const fs::path& path, const ReportTables& t) {
  auto out = open_out(path);
  out << "vessel,approach_a,approach_b,p_value,a12,verdict,strength\n";
  for (const auto& [vessel, comps] : t.comparisons)
    for (const ComparisonResult& c : comps) {
      const std::string verdict = c.verdict == Verdict::nd ? "ND"
                                  : c.verdict == Verdict::a_better ? c.approach_a
                                                                   : c.approach_b;
      out << vessel << ',' << c.approach_a << ',' << c.approach_b << ','
          << format_double(c.p_value) << ',' << format_double(c.a12) << ','
          << verdict << ',' << to_string(c.strength) << '\n';
    }
}

void write_hv_csv(const fs::path& path, const ReportTables& t) {
  auto out = open_out(path);
  out << "vessel,approach,repetition,hv,empty_front\n";
  for (const auto& [key, list] : t.hv)
    for (std::size_t i = 0; i < list.size(); ++i)
      out << key.first << ',' << key.second << ',' << i << ','
          << format_double(list[i].hv) << ',' << (list[i].empty_front ? 1 : 0)
          << '\n';
}

void write_subpath_class_csv(const fs::path& path, const ReportTables& t) {
  auto out = open_out(path);
  const auto vessels = vessels_of(t);
  const auto approaches = approaches_of(t);
  out << "approach,class";
  for (const std::string& v : vessels) out << ',' << v;
  out << '\n';
  for (const std::string& a : approaches) {
    for (int c = 0; c < 3; ++c) {
      out << a << ',' << to_string(static_cast<SubPathClass>(c));
      for (const std::string& v : vessels) {
        const auto it = t.classes.find({v, a});
        double pct = 0.0;
        if (it != t.classes.end())
          pct = c == 0   ? it->second.stable_pct
                : c == 1 ? it->second.unstable_pct
                         : it->second.missing_pct;
        out << ',' << format_double(pct);
      }
      out << '\n';
    }
  }
}

void write_unique_path_csv(const fs::path& path, const ReportTables& t) {
  auto out = open_out(path);
  const auto vessels = vessels_of(t);
  out << "approach";
  for (const std::string& v : vessels) out << ',' << v;
  out << '\n';
  for (const std::string& a : approaches_of(t)) {
    out << a;
    for (const std::string& v : vessels) {
      const auto it = t.classes.find({v, a});
      out << ',' << format_double(it == t.classes.end() ? 0.0
                                                        : it->second.mean_unique_pct);
    }
    out << '\n';
  }
}

void write_categories_csv(const fs::path& path, const std::vector<LoadedRun>& runs) {
  auto out = open_out(path);
  out << "run,solution,leg,class\n";
  for (const LoadedRun& r : runs) {
    const std::string run_id = r.approach + "/" + rep_dir_name(r.repetition);
    for (std::size_t i = 0; i < r.front.size(); ++i) {
      const SimulationResult res = r.load_trace(i);
      for (const SubPath& sp : res.subpaths)
        out << run_id << ',' << i << ',' << sp.leg_index << ','
            << to_string(classify_subpath(sp)) << '\n';
    }
  }
}

void write_classify_summary_json(const fs::path& path, const ReportTables& t) {
  json j;
  for (const auto& [key, rep] : t.classes) {
    j[key.first][key.second] = {{"stable_pct", rep.stable_pct},
                                {"unstable_pct", rep.unstable_pct},
                                {"missing_pct", rep.missing_pct},
                                {"mean_unique_pct", rep.mean_unique_pct}};
  }
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace wpgen
