#include "gaitreward/trajectory_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gaitreward {

namespace {

using nlohmann::json;

json vec_to_json(std::span<const double> v) {
  json arr = json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << "trajectory line " << line << ": " << what;
  throw std::runtime_error(os.str());
}

double get_finite(const json& rec, const char* key, std::size_t line) {
  const json& v = rec.at(key);
  if (!v.is_number()) fail(line, std::string("field '") + key + "' is not a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(line, std::string("field '") + key + "' is not finite");
  return x;
}

void read_fixed(const json& rec, const char* key, std::size_t line,
                std::span<double> out) {
  const json& v = rec.at(key);
  if (!v.is_array() || v.size() != out.size()) {
    std::ostringstream os;
    os << "field '" << key << "' must be an array of " << out.size();
    fail(line, os.str());
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!v[i].is_number()) fail(line, std::string("field '") + key + "' has a non-numeric entry");
    out[i] = v[i].get<double>();
    if (!std::isfinite(out[i]))
      fail(line, std::string("field '") + key + "' is not finite");
  }
}

std::vector<double> read_vector(const json& rec, const char* key,
                                std::size_t line) {
  const json& v = rec.at(key);
  if (!v.is_array()) fail(line, std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) fail(line, std::string("field '") + key + "' has a non-numeric entry");
    const double x = e.get<double>();
    if (!std::isfinite(x)) fail(line, std::string("field '") + key + "' is not finite");
    out.push_back(x);
  }
  return out;
}

const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields = {
      "t",      "frc_l",  "frc_r",  "spd_l",   "spd_r", "pelvis_vel",
      "quat",   "rot_vel", "accel", "action",  "torques", "pos_l",
      "pos_r",  "cmd_x",  "cmd_y",  "cmd_quat"};
  return fields;
}

}  // namespace

void emit_trajectory(std::ostream& os, const Trajectory& traj) {
  if (traj.commands.size() != traj.steps.size()) {
    throw std::invalid_argument("emit_trajectory: commands/steps mismatch");
  }
  for (std::size_t i = 0; i < traj.steps.size(); ++i) {
    const TrajectoryStep& s = traj.steps[i];
    const Commands& c = traj.commands[i];
    json rec;
    rec["t"] = s.timestep;
    rec["frc_l"] = vec_to_json(s.foot_force_left);
    rec["frc_r"] = vec_to_json(s.foot_force_right);
    rec["spd_l"] = vec_to_json(s.foot_speed_left);
    rec["spd_r"] = vec_to_json(s.foot_speed_right);
    rec["pelvis_vel"] = vec_to_json(s.pelvis_velocity);
    rec["quat"] = vec_to_json(s.pelvis_orientation);
    rec["rot_vel"] = vec_to_json(s.pelvis_rot_velocity);
    rec["accel"] = vec_to_json(s.pelvis_acceleration);
    rec["action"] = vec_to_json(s.action);
    rec["torques"] = vec_to_json(s.joint_torques);
    rec["pos_l"] = vec_to_json(s.foot_pos_left);
    rec["pos_r"] = vec_to_json(s.foot_pos_right);
    rec["cmd_x"] = c.xdot_desired;
    rec["cmd_y"] = c.ydot_desired;
    rec["cmd_quat"] = vec_to_json(c.quat_desired);
    os << rec.dump() << '\n';
  }
}

std::string emit_trajectory(const Trajectory& traj) {
  std::ostringstream os;
  emit_trajectory(os, traj);
  return os.str();
}

Trajectory ingest_trajectory(std::istream& is, const WarningSink& warn) {
  Trajectory traj;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(lineno, std::string("malformed record: ") + e.what());
    }
    if (!rec.is_object()) fail(lineno, "record is not an object");

    for (auto it = rec.begin(); it != rec.end(); ++it) {
      if (!known_fields().count(it.key()) && warn) {
        std::ostringstream os;
        os << "line " << lineno << ": ignoring unknown field '" << it.key()
           << "'";
        warn(os.str());
      }
    }
    for (const std::string& key : known_fields()) {
      if (!rec.contains(key)) {
        fail(lineno, "missing required field '" + key + "'");
      }
    }

    TrajectoryStep s;
    if (!rec.at("t").is_number_integer()) fail(lineno, "field 't' must be an integer");
    s.timestep = rec.at("t").get<std::int64_t>();
    read_fixed(rec, "frc_l", lineno, s.foot_force_left);
    read_fixed(rec, "frc_r", lineno, s.foot_force_right);
    read_fixed(rec, "spd_l", lineno, s.foot_speed_left);
    read_fixed(rec, "spd_r", lineno, s.foot_speed_right);
    read_fixed(rec, "pelvis_vel", lineno, s.pelvis_velocity);
    read_fixed(rec, "quat", lineno, s.pelvis_orientation);
    read_fixed(rec, "rot_vel", lineno, s.pelvis_rot_velocity);
    read_fixed(rec, "accel", lineno, s.pelvis_acceleration);
    s.action = read_vector(rec, "action", lineno);
    s.joint_torques = read_vector(rec, "torques", lineno);
    read_fixed(rec, "pos_l", lineno, s.foot_pos_left);
    read_fixed(rec, "pos_r", lineno, s.foot_pos_right);

    const double qn =
        std::sqrt(s.pelvis_orientation[0] * s.pelvis_orientation[0] +
                  s.pelvis_orientation[1] * s.pelvis_orientation[1] +
                  s.pelvis_orientation[2] * s.pelvis_orientation[2] +
                  s.pelvis_orientation[3] * s.pelvis_orientation[3]);
    if (std::fabs(qn - 1.0) > 1e-3) {
      fail(lineno, "field 'quat' norm deviates from 1 by more than 1e-3");
    }
    for (double& q : s.pelvis_orientation) q /= qn;

    // prev_action back-fills from the previous record; first step uses zeros
    if (traj.steps.empty()) {
      s.prev_action.assign(s.action.size(), 0.0);
    } else {
      const std::vector<double>& prev = traj.steps.back().action;
      if (prev.size() != s.action.size()) {
        fail(lineno, "action length changed between records");
      }
      s.prev_action = prev;
    }

    Commands c;
    c.xdot_desired = get_finite(rec, "cmd_x", lineno);
    c.ydot_desired = get_finite(rec, "cmd_y", lineno);
    read_fixed(rec, "cmd_quat", lineno, c.quat_desired);
    const double cn = std::sqrt(
        c.quat_desired[0] * c.quat_desired[0] +
        c.quat_desired[1] * c.quat_desired[1] +
        c.quat_desired[2] * c.quat_desired[2] +
        c.quat_desired[3] * c.quat_desired[3]);
    if (std::fabs(cn - 1.0) > 1e-3) {
      fail(lineno, "field 'cmd_quat' norm deviates from 1 by more than 1e-3");
    }
    for (double& q : c.quat_desired) q /= cn;

    traj.steps.push_back(std::move(s));
    traj.commands.push_back(c);
  }
  return traj;
}

Trajectory ingest_trajectory_file(const std::string& path,
                                  const WarningSink& warn) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trajectory file: " + path);
  }
  return ingest_trajectory(in, warn);
}

}  // namespace gaitreward
