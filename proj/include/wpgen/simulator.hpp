#pragma once

#include <vector>

#include "wpgen/domain.hpp"

namespace wpgen {

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

/// Full vessel state. Surface vessels keep pitch/plane fields at zero.
/// rudder/plane are the rate-limited actuator positions.
struct VesselState {
  double x = 0.0, y = 0.0, z = 0.0;  // m North, East, Down
  double yaw = 0.0;                  // rad, wrapped to (-pi, pi]
  double yaw_rate = 0.0;             // rad/s
  double speed = 0.0;                // m/s
  double pitch = 0.0, pitch_rate = 0.0;
  double roll = 0.0, roll_rate = 0.0;
  double rudder = 0.0, plane = 0.0;  // rad
};

struct PathSample {
  double t = 0.0;
  double x = 0.0, y = 0.0, z = 0.0;
  double roll = 0.0, pitch = 0.0, yaw = 0.0;
};

enum class LegStatus { completed, missing };

/// The section of the simulated path spent heading for waypoint
/// leg_index + 1; missing means the step cap expired before the vessel
/// entered the acceptance circle.
struct SubPath {
  int leg_index = 0;  // 1-based
  LegStatus status = LegStatus::completed;
  std::vector<PathSample> samples;
};

struct SimulationResult {
  std::vector<SubPath> subpaths;  // contiguous from leg 1
  bool reached_all = false;       // true iff every leg completed

  std::vector<PathSample> full_path() const;
};

/// Line-of-sight reference: desired heading, and desired pitch for 3D legs.
struct LosReference {
  double heading = 0.0;
  double pitch = 0.0;
};

/// Lookahead line-of-sight guidance toward the leg from -> to. With zero
/// cross-track error the desired heading equals the leg bearing; a lateral
/// offset e contributes a correction of atan(-e / lookahead). For 3D legs the
/// pitch reference tracks the leg's depth profile the same way.
LosReference los_guidance(const VesselState& state, const Waypoint& from,
                          const Waypoint& to, double lookahead);

/// PD autopilots mapping guidance references to actuator commands.
double heading_autopilot(const VesselState& state, double desired_heading,
                         const VesselConfig& cfg);
double pitch_autopilot(const VesselState& state, double desired_pitch,
                       const VesselConfig& cfg);

/// One integration step of the surface dynamics: first-order steering
/// (T r' + r = K delta) under rudder saturation and rate limits, constant
/// surge speed, and a damped roll oscillator excited by the yaw rate.
VesselState step_surface(const VesselState& state, double rudder_command,
                         const VesselConfig& cfg, double dt);

/// Surface step plus the pitch/depth channel: first-order pitch dynamics
/// driven by the stern plane, depth rate -U sin(pitch).
VesselState step_underwater(const VesselState& state, double rudder_command,
                            double plane_command, const VesselConfig& cfg,
                            double dt);

/// State at the first waypoint, heading along the first leg, at cruise speed.
VesselState initial_state_for(const VesselConfig& cfg, const WaypointSet& wps);

/// Runs the waypoint-following loop: leg k targets waypoint k+1 and ends when
/// the vessel enters its acceptance circle (completed) or after
/// max_leg_samples steps (missing, guidance then advances to the next
/// waypoint). Deterministic for identical inputs.
SimulationResult simulate(const VesselConfig& cfg, const WaypointSet& wps,
                          const VesselState& initial);

/// Trace CSV round trip, header "leg,t,x,y[,z],roll,pitch,yaw,status".
void save_trace_csv(const std::filesystem::path& path,
                    const SimulationResult& result, int dim);
SimulationResult load_trace_csv(const std::filesystem::path& path);

}  // namespace wpgen
