#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wpgen {

/// Coordinate destination in a North-East(-Down) frame, meters.
/// z is set iff the vessel operates underwater.
struct Waypoint {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> z;

  Waypoint() = default;
  Waypoint(double x_, double y_) : x(x_), y(y_) {}
  Waypoint(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  int dim() const { return z.has_value() ? 3 : 2; }
  double coord(int c) const;
  void set_coord(int c, double v);

  bool operator==(const Waypoint& other) const = default;
};

/// Ordered route of at least two waypoints with uniform dimensionality.
class WaypointSet {
 public:
  WaypointSet() = default;
  explicit WaypointSet(std::vector<Waypoint> wps);

  std::size_t size() const { return waypoints_.size(); }
  int dim() const { return waypoints_.empty() ? 2 : waypoints_.front().dim(); }
  const Waypoint& operator[](std::size_t i) const { return waypoints_[i]; }
  const std::vector<Waypoint>& waypoints() const { return waypoints_; }

  bool operator==(const WaypointSet& other) const = default;

 private:
  std::vector<Waypoint> waypoints_;
};

double euclidean_distance(const Waypoint& a, const Waypoint& b);

/// True iff every consecutive pair is at least min_wp_dist apart
/// (inclusive: exactly min_wp_dist is valid).
bool validate_waypoint_set(const WaypointSet& ws, double min_wp_dist);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Per-coordinate search intervals for waypoints 2..N (waypoint 1 is fixed),
/// flattened in waypoint-major order: (wp2.x, wp2.y[, wp2.z], wp3.x, ...).
struct SearchBounds {
  std::vector<Interval> intervals;
  double delta = 0.0;
  int dim = 2;

  std::size_t num_variables() const { return intervals.size(); }
  bool contains(const std::vector<double>& values) const;
};

/// Search genotype: flat coordinate assignment for waypoints 2..N.
struct Individual {
  std::vector<double> values;

  bool operator==(const Individual& other) const = default;
};

/// Intervals [orig - delta, orig + delta] around every searched coordinate.
SearchBounds make_bounds(const WaypointSet& original, double delta);

/// Flattens waypoints 2..N into a genotype.
Individual flatten(const WaypointSet& ws);

/// Rebuilds a full waypoint set from a genotype; the first waypoint is copied
/// verbatim from the original and is never searched.
WaypointSet decode(const Individual& ind, const WaypointSet& original);

enum class VesselKind { surface, underwater };

/// Vessel profile: guidance/switching settings plus the steering, roll and
/// (for underwater vessels) pitch/depth dynamics parameters consumed by the
/// simulator. Values for the built-in profiles live in the vessel registry.
struct VesselConfig {
  std::string name;
  VesselKind kind = VesselKind::surface;

  double min_wp_dist = 0.0;       // m, minimum spacing of consecutive waypoints
  double acceptance_radius = 0.0; // m, circle of acceptance for switching
  int max_leg_samples = 0;        // step cap per leg; 0 = derive from route
  double dt = 0.5;                // s, sample period

  double cruise_speed = 0.0;      // m/s, constant surge speed
  double lookahead = 0.0;         // m, line-of-sight lookahead distance

  // first-order steering dynamics (yaw): T r' + r = K delta
  double nomoto_k = 0.0;          // 1/s
  double nomoto_t = 0.0;          // s
  double max_rudder = 0.0;        // rad
  double max_rudder_rate = 0.0;   // rad/s
  double heading_kp = 0.0;
  double heading_kd = 0.0;

  // roll: damped oscillator excited by yaw rate
  double roll_omega = 0.0;        // rad/s, natural frequency
  double roll_zeta = 0.0;         // damping ratio
  double roll_gain = 0.0;         // steady heel per unit yaw rate, rad/(rad/s)

  // pitch/depth channel (underwater only): T q' + q = K delta_s
  double pitch_k = 0.0;           // 1/s
  double pitch_t = 0.0;           // s
  double max_plane = 0.0;         // rad
  double max_plane_rate = 0.0;    // rad/s
  double pitch_kp = 0.0;
  double pitch_kd = 0.0;
  double max_pitch_ref = 0.0;     // rad, cap on commanded pitch

  int waypoint_dim() const { return kind == VesselKind::underwater ? 3 : 2; }
  void validate() const;  // throws std::invalid_argument on bad settings
};

/// CSV round trip, header "idx,x,y" or "idx,x,y,z".
void save_waypoints_csv(const std::filesystem::path& path, const WaypointSet& ws);
WaypointSet load_waypoints_csv(const std::filesystem::path& path);

}  // namespace wpgen
