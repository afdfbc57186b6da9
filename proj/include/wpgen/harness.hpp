#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wpgen/classify.hpp"
#include "wpgen/search.hpp"
#include "wpgen/stats.hpp"

namespace wpgen {

/// One experiment: a vessel, its original route, and the approaches to run.
struct ExperimentConfig {
  VesselConfig vessel;
  WaypointSet original;
  double delta = 0.0;
  std::vector<std::string> approaches;  // of WPgen_seed/WPgen_comb/WPgen_rnd/RS
  int repetitions = 10;
  SearchConfig search;
  std::uint64_t base_seed = 1;
  std::filesystem::path out_dir;
};

/// Built-in vessel profiles: "mariner" (surface), "remus100", "nspauv"
/// (underwater). Dynamics and autopilot values live here, not in the
/// simulator.
VesselConfig builtin_vessel(const std::string& name);
std::vector<std::string> builtin_vessel_names();

/// Step cap covering 4x the straight-line transit of the longest route leg.
int default_max_leg_samples(const VesselConfig& vessel, const WaypointSet& route);

/// Case-study presets at desk scale (10 repetitions, 100 generations):
/// mariner with a 6-waypoint route and delta 400, remus100 and nspauv with
/// 7-waypoint routes and delta 150.
ExperimentConfig builtin_case_study(const std::string& name);
std::vector<ExperimentConfig> builtin_case_studies();

/// Pinned seed derivation: mix64 chain over base seed, approach name hash and
/// repetition index, so every (approach, repetition) pair gets a distinct,
/// platform-independent stream.
std::uint64_t derive_run_seed(std::uint64_t base_seed, std::string_view approach,
                              int repetition);

/// Reads the experiment JSON: keys vessel (profile name or object), waypoints
/// (rows or a CSV path), delta, search, approaches, repetitions, seed, out.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Executes approaches x repetitions, persisting each run under
/// out_dir/<approach>/rep_<k>/ (front.csv, evals.jsonl, meta.json, traces/).
/// Runs whose directory already exists are skipped, so an interrupted
/// experiment resumes where it stopped. Returns the directories of all runs,
/// fresh and pre-existing.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& cfg);

/// A persisted run read back from disk.
struct LoadedRun {
  std::string vessel;
  std::string approach;
  int repetition = 0;
  int n_waypoints = 0;
  int dim = 2;
  std::uint64_t rng_seed = 0;
  ParetoFront front;
  std::filesystem::path dir;

  SimulationResult load_trace(std::size_t solution) const;
};

void save_run(const std::filesystem::path& dir, const RunRecord& rec,
              const ExperimentConfig& cfg);
LoadedRun load_run(const std::filesystem::path& dir);
std::vector<EvalRecord> load_eval_log(const std::filesystem::path& dir);

/// Every rep_* directory under root (root may hold several approaches or be
/// a single approach/run directory).
std::vector<LoadedRun> load_runs(const std::filesystem::path& root);

struct ApproachClassReport {
  double stable_pct = 0.0;    // pooled over all front solutions of all runs
  double unstable_pct = 0.0;
  double missing_pct = 0.0;
  double mean_unique_pct = 0.0;  // per-run unique categories, averaged
};

struct ReportTables {
  // keyed by (vessel, approach)
  std::map<std::pair<std::string, std::string>, std::vector<RunHv>> hv;
  std::map<std::string, std::vector<ComparisonResult>> comparisons;  // per vessel
  std::map<std::pair<std::string, std::string>, ApproachClassReport> classes;
};

/// Evaluation tables: per-run hypervolumes, pairwise statistical comparisons,
/// and sub-path class breakdowns from the persisted traces.
ReportTables report(const std::vector<LoadedRun>& runs);

void write_comparison_csv(const std::filesystem::path& path, const ReportTables& t);
void write_hv_csv(const std::filesystem::path& path, const ReportTables& t);
void write_subpath_class_csv(const std::filesystem::path& path, const ReportTables& t);
void write_unique_path_csv(const std::filesystem::path& path, const ReportTables& t);
void write_categories_csv(const std::filesystem::path& path,
                          const std::vector<LoadedRun>& runs);
void write_classify_summary_json(const std::filesystem::path& path,
                                 const ReportTables& t);

}  // namespace wpgen
