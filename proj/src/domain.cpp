#include "wpgen/domain.hpp"

#include "wpgen/format.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wpgen {

double Waypoint::coord(int c) const {
  switch (c) {
    case 0: return x;
    case 1: return y;
    case 2:
      if (!z) throw std::out_of_range("waypoint has no z coordinate");
      return *z;
    default: throw std::out_of_range("coordinate index out of range");
  }
}

void Waypoint::set_coord(int c, double v) {
  switch (c) {
    case 0: x = v; return;
    case 1: y = v; return;
    case 2:
      if (!z) throw std::out_of_range("waypoint has no z coordinate");
      z = v;
      return;
    default: throw std::out_of_range("coordinate index out of range");
  }
}

WaypointSet::WaypointSet(std::vector<Waypoint> wps) : waypoints_(std::move(wps)) {
  if (waypoints_.size() < 2)
    throw std::invalid_argument("waypoint set needs at least two waypoints");
  const int d = waypoints_.front().dim();
  for (const Waypoint& wp : waypoints_) {
    if (wp.dim() != d)
      throw std::invalid_argument("mixed 2D/3D waypoints in one set");
    for (int c = 0; c < d; ++c)
      if (!std::isfinite(wp.coord(c)))
        throw std::invalid_argument("non-finite waypoint coordinate");
  }
}

double euclidean_distance(const Waypoint& a, const Waypoint& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("euclidean_distance: dimensionality mismatch");
  double sum = 0.0;
  for (int c = 0; c < a.dim(); ++c) {
    const double d = a.coord(c) - b.coord(c);
    sum += d * d;
  }
  return std::sqrt(sum);
}

bool validate_waypoint_set(const WaypointSet& ws, double min_wp_dist) {
  for (std::size_t i = 0; i + 1 < ws.size(); ++i)
    if (euclidean_distance(ws[i], ws[i + 1]) < min_wp_dist) return false;
  return true;
}

bool SearchBounds::contains(const std::vector<double>& values) const {
  if (values.size() != intervals.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] < intervals[i].lo || values[i] > intervals[i].hi) return false;
  return true;
}

SearchBounds make_bounds(const WaypointSet& original, double delta) {
  if (!(delta > 0.0))
    throw std::invalid_argument("make_bounds: delta must be > 0");
  SearchBounds b;
  b.delta = delta;
  b.dim = original.dim();
  b.intervals.reserve((original.size() - 1) * b.dim);
  for (std::size_t i = 1; i < original.size(); ++i)
    for (int c = 0; c < b.dim; ++c) {
      const double v = original[i].coord(c);
      b.intervals.push_back({v - delta, v + delta});
    }
  return b;
}

Individual flatten(const WaypointSet& ws) {
  Individual ind;
  ind.values.reserve((ws.size() - 1) * ws.dim());
  for (std::size_t i = 1; i < ws.size(); ++i)
    for (int c = 0; c < ws.dim(); ++c) ind.values.push_back(ws[i].coord(c));
  return ind;
}

WaypointSet decode(const Individual& ind, const WaypointSet& original) {
  const int d = original.dim();
  const std::size_t expected = (original.size() - 1) * d;
  if (ind.values.size() != expected)
    throw std::invalid_argument("decode: individual length does not match route");
  std::vector<Waypoint> wps;
  wps.reserve(original.size());
  wps.push_back(original[0]);
  for (std::size_t i = 1; i < original.size(); ++i) {
    const double* v = ind.values.data() + (i - 1) * d;
    wps.push_back(d == 3 ? Waypoint(v[0], v[1], v[2]) : Waypoint(v[0], v[1]));
  }
  return WaypointSet(std::move(wps));
}

void VesselConfig::validate() const {
  if (!(min_wp_dist > 0.0))
    throw std::invalid_argument("vessel config: min_wp_dist must be > 0");
  if (!(acceptance_radius > 0.0))
    throw std::invalid_argument("vessel config: acceptance_radius must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("vessel config: dt must be > 0");
  if (max_leg_samples <= 0)
    throw std::invalid_argument("vessel config: max_leg_samples must be > 0");
  if (!(cruise_speed > 0.0))
    throw std::invalid_argument("vessel config: cruise_speed must be > 0");
  if (!(lookahead > 0.0))
    throw std::invalid_argument("vessel config: lookahead must be > 0");
  if (!(nomoto_k > 0.0) || !(nomoto_t > 0.0))
    throw std::invalid_argument("vessel config: steering parameters must be > 0");
  if (kind == VesselKind::underwater && (!(pitch_k > 0.0) || !(pitch_t > 0.0)))
    throw std::invalid_argument("vessel config: pitch parameters must be > 0");
}

void save_waypoints_csv(const std::filesystem::path& path, const WaypointSet& ws) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << (ws.dim() == 3 ? "idx,x,y,z\n" : "idx,x,y\n");
  for (std::size_t i = 0; i < ws.size(); ++i) {
    out << (i + 1) << ',' << format_double(ws[i].x) << ',' << format_double(ws[i].y);
    if (ws.dim() == 3) out << ',' << format_double(*ws[i].z);
    out << '\n';
  }
}

WaypointSet load_waypoints_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty waypoint csv");
  const bool has_z = line.find(",z") != std::string::npos;
  std::vector<Waypoint> wps;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cols;
    while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
    if (cols.size() != (has_z ? 4u : 3u))
      throw std::runtime_error("bad waypoint csv row: " + line);
    wps.push_back(has_z ? Waypoint(cols[1], cols[2], cols[3])
                        : Waypoint(cols[1], cols[2]));
  }
  return WaypointSet(std::move(wps));
}

}  // namespace wpgen
