// wpgen command line tool: run experiments and evaluate their outputs.

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wpgen/harness.hpp"

namespace fs = std::filesystem;
using namespace wpgen;

namespace {

std::vector<LoadedRun> load_all(const std::vector<std::string>& roots) {
  std::vector<LoadedRun> runs;
  for (const std::string& root : roots) {
    auto part = load_runs(root);
    runs.insert(runs.end(), part.begin(), part.end());
  }
  if (runs.empty()) throw std::runtime_error("no persisted runs found");
  return runs;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& approaches,
            int reps, long long seed) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (!approaches.empty()) cfg.approaches = approaches;
  if (reps > 0) cfg.repetitions = reps;
  if (seed >= 0) cfg.base_seed = static_cast<std::uint64_t>(seed);
  const auto dirs = run_experiment(cfg);
  std::printf("%zu runs under %s\n", dirs.size(), cfg.out_dir.string().c_str());
  return 0;
}

int cmd_compare(const std::vector<std::string>& roots, const std::string& out_dir) {
  const auto runs = load_all(roots);
  const ReportTables tables = report(runs);
  const fs::path out = out_dir.empty() ? fs::path(roots.front()) : fs::path(out_dir);
  fs::create_directories(out);
  write_comparison_csv(out / "comparison.csv", tables);
  std::printf("wrote %s\n", (out / "comparison.csv").string().c_str());
  for (const auto& [vessel, comps] : tables.comparisons)
    for (const ComparisonResult& c : comps) {
      const std::string best = c.verdict == Verdict::nd ? "ND"
                               : c.verdict == Verdict::a_better ? c.approach_a
                                                                : c.approach_b;
      std::printf("%-10s %-12s vs %-12s p=%-10.4g A12=%-6.3f best=%-12s %s\n",
                  vessel.c_str(), c.approach_a.c_str(), c.approach_b.c_str(),
                  c.p_value, c.a12, best.c_str(), to_string(c.strength));
    }
  return 0;
}

int cmd_classify(const std::vector<std::string>& roots, const std::string& out_dir) {
  const auto runs = load_all(roots);
  const ReportTables tables = report(runs);
  const fs::path out = out_dir.empty() ? fs::path(roots.front()) : fs::path(out_dir);
  fs::create_directories(out);
  write_categories_csv(out / "categories.csv", runs);
  write_classify_summary_json(out / "classify_summary.json", tables);
  std::printf("wrote %s and %s\n", (out / "categories.csv").string().c_str(),
              (out / "classify_summary.json").string().c_str());
  return 0;
}

int cmd_hv(const std::vector<std::string>& roots, const std::string& out_dir) {
  const auto runs = load_all(roots);
  const ReportTables tables = report(runs);
  const fs::path out = out_dir.empty() ? fs::path(roots.front()) : fs::path(out_dir);
  fs::create_directories(out);
  write_hv_csv(out / "hv.csv", tables);
  std::printf("wrote %s\n", (out / "hv.csv").string().c_str());
  return 0;
}

int cmd_report(const std::vector<std::string>& roots, const std::string& out_dir) {
  const auto runs = load_all(roots);
  const ReportTables tables = report(runs);
  const fs::path out = out_dir.empty() ? fs::path(roots.front()) : fs::path(out_dir);
  fs::create_directories(out);
  write_comparison_csv(out / "comparison.csv", tables);
  write_hv_csv(out / "hv.csv", tables);
  write_subpath_class_csv(out / "subpath_classes.csv", tables);
  write_unique_path_csv(out / "unique_paths.csv", tables);
  write_categories_csv(out / "categories.csv", runs);
  write_classify_summary_json(out / "classify_summary.json", tables);
  std::printf("report written under %s\n", out.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"search-based generation of waypoint perturbations that destabilize "
               "waypoint-following navigation"};
  app.require_subcommand(1);

  // run
  std::string config_path;
  std::vector<std::string> approaches;
  int reps = 0;
  long long seed = -1;
  CLI::App* run = app.add_subcommand("run", "execute an experiment from a config file");
  run->add_option("--config", config_path, "experiment JSON (or builtin preset name)")
      ->required();
  run->add_option("--approach", approaches,
                  "restrict to these approaches (WPgen_seed, WPgen_comb, WPgen_rnd, RS)");
  run->add_option("--reps", reps, "override the number of repetitions");
  run->add_option("--seed", seed, "override the base seed");

  // evaluation subcommands share --runs/--out
  std::vector<std::string> roots;
  std::string out_dir;
  const auto add_eval = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--runs", roots, "run record directories")->required();
    sub->add_option("--out", out_dir, "output directory (default: first runs dir)");
    return sub;
  };
  CLI::App* compare_cmd = add_eval("compare", "pairwise statistical comparison of approaches");
  CLI::App* classify_cmd = add_eval("classify", "classify persisted traces into stable/unstable/missing");
  CLI::App* hv_cmd = add_eval("hv", "per-run hypervolume values");
  CLI::App* report_cmd = add_eval("report", "all evaluation tables");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      // convenience: accept a bare preset name in place of a config file
      if (!fs::exists(config_path)) {
        ExperimentConfig cfg = builtin_case_study(config_path);
        if (!approaches.empty()) cfg.approaches = approaches;
        if (reps > 0) cfg.repetitions = reps;
        if (seed >= 0) cfg.base_seed = static_cast<std::uint64_t>(seed);
        const auto dirs = run_experiment(cfg);
        std::printf("%zu runs under %s\n", dirs.size(), cfg.out_dir.string().c_str());
        return 0;
      }
      return cmd_run(config_path, approaches, reps, seed);
    }
    if (compare_cmd->parsed()) return cmd_compare(roots, out_dir);
    if (classify_cmd->parsed()) return cmd_classify(roots, out_dir);
    if (hv_cmd->parsed()) return cmd_hv(roots, out_dir);
    if (report_cmd->parsed()) return cmd_report(roots, out_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
