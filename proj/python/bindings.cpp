// python bindings for the core operations

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "wpgen/harness.hpp"

namespace py = pybind11;
using namespace wpgen;

namespace {

WaypointSet waypoints_from_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<Waypoint> wps;
  wps.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() == 2) wps.emplace_back(row[0], row[1]);
    else if (row.size() == 3) wps.emplace_back(row[0], row[1], row[2]);
    else throw std::invalid_argument("waypoint rows need 2 or 3 coordinates");
  }
  return WaypointSet(std::move(wps));
}

std::vector<std::vector<double>> waypoints_to_rows(const WaypointSet& ws) {
  std::vector<std::vector<double>> rows;
  rows.reserve(ws.size());
  for (const Waypoint& wp : ws.waypoints()) {
    std::vector<double> row{wp.x, wp.y};
    if (wp.z) row.push_back(*wp.z);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "multi-objective generation of destabilizing waypoint perturbations";

  py::enum_<VesselKind>(m, "VesselKind")
      .value("surface", VesselKind::surface)
      .value("underwater", VesselKind::underwater);

  py::class_<VesselConfig>(m, "VesselConfig")
      .def(py::init<>())
      .def_readwrite("name", &VesselConfig::name)
      .def_readwrite("kind", &VesselConfig::kind)
      .def_readwrite("min_wp_dist", &VesselConfig::min_wp_dist)
      .def_readwrite("acceptance_radius", &VesselConfig::acceptance_radius)
      .def_readwrite("max_leg_samples", &VesselConfig::max_leg_samples)
      .def_readwrite("dt", &VesselConfig::dt)
      .def_readwrite("cruise_speed", &VesselConfig::cruise_speed)
      .def_readwrite("lookahead", &VesselConfig::lookahead)
      .def_readwrite("nomoto_k", &VesselConfig::nomoto_k)
      .def_readwrite("nomoto_t", &VesselConfig::nomoto_t)
      .def_readwrite("max_rudder", &VesselConfig::max_rudder)
      .def_readwrite("max_rudder_rate", &VesselConfig::max_rudder_rate)
      .def_readwrite("heading_kp", &VesselConfig::heading_kp)
      .def_readwrite("heading_kd", &VesselConfig::heading_kd)
      .def_readwrite("roll_omega", &VesselConfig::roll_omega)
      .def_readwrite("roll_zeta", &VesselConfig::roll_zeta)
      .def_readwrite("roll_gain", &VesselConfig::roll_gain)
      .def_readwrite("pitch_k", &VesselConfig::pitch_k)
      .def_readwrite("pitch_t", &VesselConfig::pitch_t)
      .def_readwrite("max_plane", &VesselConfig::max_plane)
      .def_readwrite("max_plane_rate", &VesselConfig::max_plane_rate)
      .def_readwrite("pitch_kp", &VesselConfig::pitch_kp)
      .def_readwrite("pitch_kd", &VesselConfig::pitch_kd)
      .def_readwrite("max_pitch_ref", &VesselConfig::max_pitch_ref);

  py::class_<SearchBounds>(m, "SearchBounds")
      .def_property_readonly("num_variables", &SearchBounds::num_variables)
      .def_readonly("delta", &SearchBounds::delta)
      .def_readonly("dim", &SearchBounds::dim)
      .def("contains", &SearchBounds::contains)
      .def_property_readonly("intervals", [](const SearchBounds& b) {
        std::vector<std::pair<double, double>> out;
        for (const Interval& iv : b.intervals) out.emplace_back(iv.lo, iv.hi);
        return out;
      });

  py::enum_<LegStatus>(m, "LegStatus")
      .value("completed", LegStatus::completed)
      .value("missing", LegStatus::missing);

  py::class_<PathSample>(m, "PathSample")
      .def_readonly("t", &PathSample::t)
      .def_readonly("x", &PathSample::x)
      .def_readonly("y", &PathSample::y)
      .def_readonly("z", &PathSample::z)
      .def_readonly("roll", &PathSample::roll)
      .def_readonly("pitch", &PathSample::pitch)
      .def_readonly("yaw", &PathSample::yaw);

  py::class_<SubPath>(m, "SubPath")
      .def_readonly("leg_index", &SubPath::leg_index)
      .def_readonly("status", &SubPath::status)
      .def_readonly("samples", &SubPath::samples);

  py::class_<SimulationResult>(m, "SimulationResult")
      .def_readonly("subpaths", &SimulationResult::subpaths)
      .def_readonly("reached_all", &SimulationResult::reached_all);

  py::enum_<SubPathClass>(m, "SubPathClass")
      .value("stable", SubPathClass::stable)
      .value("unstable", SubPathClass::unstable)
      .value("missing", SubPathClass::missing);

  py::enum_<Seeding>(m, "Seeding")
      .value("seed", Seeding::seed)
      .value("comb", Seeding::comb)
      .value("rnd", Seeding::rnd);

  py::class_<SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("population_size", &SearchConfig::population_size)
      .def_readwrite("max_generations", &SearchConfig::max_generations)
      .def_readwrite("seeding", &SearchConfig::seeding)
      .def_readwrite("crossover_probability", &SearchConfig::crossover_probability)
      .def_readwrite("crossover_distribution_index",
                     &SearchConfig::crossover_distribution_index)
      .def_readwrite("mutation_distribution_index",
                     &SearchConfig::mutation_distribution_index)
      .def_readwrite("expected_mutated_variables",
                     &SearchConfig::expected_mutated_variables)
      .def_readwrite("rng_seed", &SearchConfig::rng_seed)
      .def_property_readonly("evaluation_budget", &SearchConfig::evaluation_budget);

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("approach", &RunRecord::approach)
      .def_readonly("repetition", &RunRecord::repetition)
      .def_readonly("rng_seed", &RunRecord::rng_seed)
      .def_readonly("wall_clock_s", &RunRecord::wall_clock_s)
      .def_property_readonly("front",
                             [](const RunRecord& r) {
                               std::vector<std::tuple<std::vector<double>, double, double>> out;
                               for (const FrontEntry& e : r.front)
                                 out.emplace_back(e.ind.values, e.obj.dist_wps,
                                                  e.obj.unstable);
                               return out;
                             })
      .def_property_readonly("evaluations",
                             [](const RunRecord& r) { return r.evals.size(); });

  py::class_<EvalContext>(m, "EvalContext")
      .def(py::init([](const std::vector<std::vector<double>>& original,
                       double delta, const VesselConfig& vessel) {
             const WaypointSet ws = waypoints_from_rows(original);
             return new EvalContext(ws, make_bounds(ws, delta), vessel);
           }),
           py::arg("original"), py::arg("delta"), py::arg("vessel"))
      .def("evaluate",
           [](EvalContext& ctx, const std::vector<double>& values)
               -> std::optional<std::pair<double, double>> {
             const auto out = ctx.evaluate(Individual{values});
             if (!out) return std::nullopt;
             return std::make_pair(out->dist_wps, out->unstable);
           })
      .def("simulate_candidate",
           [](const EvalContext& ctx, const std::vector<double>& values) {
             return ctx.simulate_candidate(Individual{values});
           })
      .def_property_readonly("evaluations", &EvalContext::evaluations)
      .def_property_readonly("simulations", &EvalContext::simulations);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("vessel", &ExperimentConfig::vessel)
      .def_property("original",
                    [](const ExperimentConfig& c) { return waypoints_to_rows(c.original); },
                    [](ExperimentConfig& c, const std::vector<std::vector<double>>& rows) {
                      c.original = waypoints_from_rows(rows);
                    })
      .def_readwrite("delta", &ExperimentConfig::delta)
      .def_readwrite("approaches", &ExperimentConfig::approaches)
      .def_readwrite("repetitions", &ExperimentConfig::repetitions)
      .def_readwrite("search", &ExperimentConfig::search)
      .def_readwrite("base_seed", &ExperimentConfig::base_seed)
      .def_readwrite("out_dir", &ExperimentConfig::out_dir);

  // domain
  m.def("euclidean_distance",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          const auto wp = [](const std::vector<double>& v) {
            if (v.size() == 2) return Waypoint(v[0], v[1]);
            if (v.size() == 3) return Waypoint(v[0], v[1], v[2]);
            throw std::invalid_argument("waypoints need 2 or 3 coordinates");
          };
          return euclidean_distance(wp(a), wp(b));
        });
  m.def("validate_waypoint_set",
        [](const std::vector<std::vector<double>>& rows, double min_wp_dist) {
          return validate_waypoint_set(waypoints_from_rows(rows), min_wp_dist);
        });
  m.def("make_bounds",
        [](const std::vector<std::vector<double>>& rows, double delta) {
          return make_bounds(waypoints_from_rows(rows), delta);
        });
  m.def("flatten", [](const std::vector<std::vector<double>>& rows) {
    return flatten(waypoints_from_rows(rows)).values;
  });
  m.def("decode", [](const std::vector<double>& values,
                     const std::vector<std::vector<double>>& rows) {
    return waypoints_to_rows(decode(Individual{values}, waypoints_from_rows(rows)));
  });

  // simulator
  m.def("simulate", [](const VesselConfig& cfg,
                       const std::vector<std::vector<double>>& rows) {
    const WaypointSet ws = waypoints_from_rows(rows);
    return simulate(cfg, ws, initial_state_for(cfg, ws));
  });

  // fitness
  m.def("fit_dist_wps", [](const std::vector<std::vector<double>>& candidate,
                           const std::vector<std::vector<double>>& original) {
    return fit_dist_wps(waypoints_from_rows(candidate), waypoints_from_rows(original));
  });
  m.def("fit_unstable", [](const SimulationResult& result,
                           const std::vector<std::vector<double>>& original) {
    return fit_unstable(result, waypoints_from_rows(original));
  });

  // search
  m.def("nsga2_run", &nsga2_run, py::arg("ctx"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("random_search_run", &random_search_run, py::arg("ctx"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("seed_individual",
        [](const std::vector<std::vector<double>>& original, double delta,
           std::uint64_t seed) {
          const WaypointSet ws = waypoints_from_rows(original);
          Rng rng(seed);
          return seed_individual(ws, make_bounds(ws, delta), rng).values;
        });

  // classify
  m.def("autocorrelation", [](const std::vector<double>& signal) {
    return autocorrelation(signal);
  });
  m.def("count_threshold_peaks",
        [](const std::vector<double>& acf, double threshold) {
          return count_threshold_peaks(acf, threshold);
        },
        py::arg("acf"), py::arg("threshold") = 0.1);
  m.def("classify_angle_unstable", [](const std::vector<double>& signal) {
    return classify_angle_unstable(signal);
  });
  m.def("classify_subpath", &classify_subpath);
  m.def("categorize_path", &categorize_path);
  m.def("max_category_count", &max_category_count);

  // stats
  m.def("hypervolume_2d", &hypervolume_2d, py::arg("front"), py::arg("reference"));
  m.def("choose_reference", &choose_reference);
  m.def("mann_whitney_u", [](const std::vector<double>& a, const std::vector<double>& b) {
    return mann_whitney_u(a, b);
  });
  m.def("vargha_delaney_a12",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return vargha_delaney_a12(a, b);
        });
  m.def("strength_of", [](double a12) { return std::string(to_string(strength_of(a12))); });

  // harness
  m.def("builtin_vessel", &builtin_vessel);
  m.def("builtin_vessel_names", &builtin_vessel_names);
  m.def("builtin_case_study", &builtin_case_study);
  m.def("derive_run_seed", &derive_run_seed);
  m.def("load_experiment_config", &load_experiment_config);
  m.def("run_experiment", &run_experiment, py::call_guard<py::gil_scoped_release>());
}
