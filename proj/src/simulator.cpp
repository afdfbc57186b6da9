#include "wpgen/simulator.hpp"

#include "wpgen/format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace wpgen {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

/// Moves actuator toward command, respecting saturation and slew rate.
double slew(double current, double command, double limit, double rate, double dt) {
  const double target = clamp(command, -limit, limit);
  const double max_step = rate * dt;
  return current + clamp(target - current, -max_step, max_step);
}

void check_finite(const VesselState& s) {
  if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.z) ||
      !std::isfinite(s.yaw) || !std::isfinite(s.yaw_rate) ||
      !std::isfinite(s.pitch) || !std::isfinite(s.roll))
    throw std::runtime_error("dynamics diverged: non-finite vessel state");
}

}  // namespace

double wrap_angle(double a) {
  const double two_pi = 2.0 * kPi;
  double w = a - two_pi * std::floor((a + kPi) / two_pi);  // [-pi, pi)
  if (w == -kPi) w = kPi;
  return w;
}

std::vector<PathSample> SimulationResult::full_path() const {
  std::vector<PathSample> path;
  for (const SubPath& sp : subpaths)
    path.insert(path.end(), sp.samples.begin(), sp.samples.end());
  return path;
}

LosReference los_guidance(const VesselState& state, const Waypoint& from,
                          const Waypoint& to, double lookahead) {
  if (from == to)
    throw std::invalid_argument("los_guidance: coincident leg endpoints");
  LosReference ref;
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double horiz = std::hypot(dx, dy);
  double along = 0.0;
  if (horiz < 1e-9) {
    // purely vertical leg: hold heading, steer depth only
    ref.heading = state.yaw;
  } else {
    const double bearing = std::atan2(dy, dx);
    along = (state.x - from.x) * std::cos(bearing) +
            (state.y - from.y) * std::sin(bearing);
    // aim at the line point one lookahead ahead of the projection, clamped to
    // the leg end so an overshot vessel turns back instead of sailing on
    const double s_aim = std::min(along + lookahead, horiz);
    const double aim_x = from.x + s_aim * std::cos(bearing);
    const double aim_y = from.y + s_aim * std::sin(bearing);
    const double rx = aim_x - state.x;
    const double ry = aim_y - state.y;
    ref.heading = std::hypot(rx, ry) < 1e-9 ? bearing : std::atan2(ry, rx);
  }
  if (from.z && to.z) {
    const double path_pitch = horiz < 1e-9
                                  ? (*to.z > *from.z ? -kPi / 2 : kPi / 2)
                                  : std::atan2(-(*to.z - *from.z), horiz);
    double z_leg = *from.z;
    if (horiz >= 1e-9)
      z_leg += (*to.z - *from.z) * clamp(along / horiz, 0.0, 1.0);
    const double depth_error = state.z - z_leg;  // >0: too deep, pitch up
    ref.pitch = path_pitch + std::atan(depth_error / lookahead);
  }
  return ref;
}

double heading_autopilot(const VesselState& state, double desired_heading,
                         const VesselConfig& cfg) {
  const double error = wrap_angle(desired_heading - state.yaw);
  return cfg.heading_kp * error - cfg.heading_kd * state.yaw_rate;
}

double pitch_autopilot(const VesselState& state, double desired_pitch,
                       const VesselConfig& cfg) {
  const double target = clamp(desired_pitch, -cfg.max_pitch_ref, cfg.max_pitch_ref);
  return cfg.pitch_kp * (target - state.pitch) - cfg.pitch_kd * state.pitch_rate;
}

VesselState step_surface(const VesselState& state, double rudder_command,
                         const VesselConfig& cfg, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  VesselState n = state;
  n.rudder = slew(state.rudder, rudder_command, cfg.max_rudder,
                  cfg.max_rudder_rate, dt);

  // yaw: T r' + r = K delta (semi-implicit)
  const double r_dot = (cfg.nomoto_k * n.rudder - state.yaw_rate) / cfg.nomoto_t;
  n.yaw_rate = state.yaw_rate + r_dot * dt;
  n.yaw = wrap_angle(state.yaw + n.yaw_rate * dt);

  // roll oscillator, equilibrium heel proportional to yaw rate
  const double w = cfg.roll_omega;
  const double roll_acc = w * w * (cfg.roll_gain * state.yaw_rate - state.roll) -
                          2.0 * cfg.roll_zeta * w * state.roll_rate;
  n.roll_rate = state.roll_rate + roll_acc * dt;
  n.roll = state.roll + n.roll_rate * dt;

  n.speed = cfg.cruise_speed;
  n.x = state.x + cfg.cruise_speed * std::cos(state.yaw) * dt;
  n.y = state.y + cfg.cruise_speed * std::sin(state.yaw) * dt;
  check_finite(n);
  return n;
}

VesselState step_underwater(const VesselState& state, double rudder_command,
                            double plane_command, const VesselConfig& cfg,
                            double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  VesselState n = state;
  n.rudder = slew(state.rudder, rudder_command, cfg.max_rudder,
                  cfg.max_rudder_rate, dt);
  n.plane = slew(state.plane, plane_command, cfg.max_plane,
                 cfg.max_plane_rate, dt);

  const double r_dot = (cfg.nomoto_k * n.rudder - state.yaw_rate) / cfg.nomoto_t;
  n.yaw_rate = state.yaw_rate + r_dot * dt;
  n.yaw = wrap_angle(state.yaw + n.yaw_rate * dt);

  const double q_dot = (cfg.pitch_k * n.plane - state.pitch_rate) / cfg.pitch_t;
  n.pitch_rate = state.pitch_rate + q_dot * dt;
  n.pitch = clamp(state.pitch + n.pitch_rate * dt, -kPi / 2 + 0.01, kPi / 2 - 0.01);

  const double w = cfg.roll_omega;
  const double roll_acc = w * w * (cfg.roll_gain * state.yaw_rate - state.roll) -
                          2.0 * cfg.roll_zeta * w * state.roll_rate;
  n.roll_rate = state.roll_rate + roll_acc * dt;
  n.roll = state.roll + n.roll_rate * dt;

  n.speed = cfg.cruise_speed;
  const double horiz = cfg.cruise_speed * std::cos(state.pitch);
  n.x = state.x + horiz * std::cos(state.yaw) * dt;
  n.y = state.y + horiz * std::sin(state.yaw) * dt;
  n.z = state.z - cfg.cruise_speed * std::sin(state.pitch) * dt;
  check_finite(n);
  return n;
}

VesselState initial_state_for(const VesselConfig& cfg, const WaypointSet& wps) {
  VesselState s;
  s.x = wps[0].x;
  s.y = wps[0].y;
  s.z = wps[0].z.value_or(0.0);
  s.yaw = std::atan2(wps[1].y - wps[0].y, wps[1].x - wps[0].x);
  s.speed = cfg.cruise_speed;
  return s;
}

SimulationResult simulate(const VesselConfig& cfg, const WaypointSet& wps,
                          const VesselState& initial) {
  cfg.validate();
  if (wps.dim() != cfg.waypoint_dim())
    throw std::invalid_argument("simulate: waypoint dimensionality does not match vessel kind");
  if (!validate_waypoint_set(wps, cfg.min_wp_dist))
    throw std::invalid_argument("simulate: waypoint set violates min_wp_dist");

  const bool underwater = cfg.kind == VesselKind::underwater;
  SimulationResult result;
  result.reached_all = true;
  VesselState state = initial;
  double t = 0.0;

  for (std::size_t leg = 0; leg + 1 < wps.size(); ++leg) {
    const Waypoint& from = wps[leg];
    const Waypoint& to = wps[leg + 1];
    SubPath sp;
    sp.leg_index = static_cast<int>(leg) + 1;
    sp.status = LegStatus::missing;
    sp.samples.reserve(64);

    for (int step = 0; step < cfg.max_leg_samples; ++step) {
      const LosReference ref = los_guidance(state, from, to, cfg.lookahead);
      const double rudder_cmd = heading_autopilot(state, ref.heading, cfg);
      if (underwater) {
        const double plane_cmd = pitch_autopilot(state, ref.pitch, cfg);
        state = step_underwater(state, rudder_cmd, plane_cmd, cfg, cfg.dt);
      } else {
        state = step_surface(state, rudder_cmd, cfg, cfg.dt);
      }
      t += cfg.dt;
      sp.samples.push_back(
          {t, state.x, state.y, state.z, state.roll, state.pitch, state.yaw});

      Waypoint pos = underwater ? Waypoint(state.x, state.y, state.z)
                                : Waypoint(state.x, state.y);
      if (euclidean_distance(pos, to) <= cfg.acceptance_radius) {
        sp.status = LegStatus::completed;
        break;
      }
    }
    if (sp.status == LegStatus::missing) result.reached_all = false;
    result.subpaths.push_back(std::move(sp));
  }
  return result;
}

void save_trace_csv(const std::filesystem::path& path,
                    const SimulationResult& result, int dim) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << (dim == 3 ? "leg,t,x,y,z,roll,pitch,yaw,status\n"
                   : "leg,t,x,y,roll,pitch,yaw,status\n");
  for (const SubPath& sp : result.subpaths) {
    const char* status = sp.status == LegStatus::completed ? "completed" : "missing";
    for (const PathSample& s : sp.samples) {
      out << sp.leg_index << ',' << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.y);
      if (dim == 3) out << ',' << format_double(s.z);
      out << ',' << format_double(s.roll) << ',' << format_double(s.pitch) << ',' << format_double(s.yaw) << ','
          << status << '\n';
    }
  }
}

SimulationResult load_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace csv");
  const bool has_z = line.find(",z,") != std::string::npos;

  SimulationResult result;
  result.reached_all = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cols;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    if (cols.size() != (has_z ? 9u : 8u))
      throw std::runtime_error("bad trace csv row: " + line);
    const int leg = std::stoi(cols[0]);
    if (result.subpaths.empty() || result.subpaths.back().leg_index != leg) {
      SubPath sp;
      sp.leg_index = leg;
      sp.status = cols.back() == "missing" ? LegStatus::missing
                                           : LegStatus::completed;
      if (sp.status == LegStatus::missing) result.reached_all = false;
      result.subpaths.push_back(std::move(sp));
    }
    PathSample s;
    s.t = std::stod(cols[1]);
    s.x = std::stod(cols[2]);
    s.y = std::stod(cols[3]);
    std::size_t k = 4;
    if (has_z) s.z = std::stod(cols[k++]);
    s.roll = std::stod(cols[k++]);
    s.pitch = std::stod(cols[k++]);
    s.yaw = std::stod(cols[k++]);
    result.subpaths.back().samples.push_back(s);
  }
  return result;
}

}  // namespace wpgen
