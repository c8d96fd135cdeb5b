#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gaitreward/reward.hpp"

namespace gaitreward {

// A logged trajectory: measurements plus the commands active at each step.
struct Trajectory {
  std::vector<TrajectoryStep> steps;
  std::vector<Commands> commands;
};

// Line-delimited JSON, one object per timestep. Field names:
// t, frc_l, frc_r, spd_l, spd_r, pelvis_vel, quat, rot_vel, accel, action,
// torques, pos_l, pos_r, cmd_x, cmd_y, cmd_quat. prev_action is back-filled
// from the preceding record (zeros for the first).
std::string emit_trajectory(const Trajectory& traj);
void emit_trajectory(std::ostream& os, const Trajectory& traj);

using WarningSink = std::function<void(const std::string&)>;

// Parses and validates a record stream. Unknown fields are reported through
// `warn` and ignored; malformed records throw std::runtime_error naming the
// field and line.
Trajectory ingest_trajectory(std::istream& is, const WarningSink& warn = {});
Trajectory ingest_trajectory_file(const std::string& path,
                                  const WarningSink& warn = {});

}  // namespace gaitreward
