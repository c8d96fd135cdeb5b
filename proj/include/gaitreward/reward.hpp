#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gaitreward/gait_spec.hpp"

namespace gaitreward {

using Vec3 = std::array<double, 3>;
using Quat = std::array<double, 4>;  // scalar-first unit quaternion

double norm(const Vec3& v);
double norm_sq(const Vec3& v);

// One timestep of measurements, everything the reward kernels consume.
struct TrajectoryStep {
  std::int64_t timestep = 0;
  Vec3 foot_force_left{};   // newtons
  Vec3 foot_force_right{};
  Vec3 foot_speed_left{};   // m/s
  Vec3 foot_speed_right{};
  std::array<double, 2> pelvis_velocity{};  // (xdot, ydot) m/s
  Quat pelvis_orientation{1.0, 0.0, 0.0, 0.0};
  Vec3 pelvis_rot_velocity{};   // rad/s
  Vec3 pelvis_acceleration{};   // m/s^2
  std::vector<double> action;
  std::vector<double> prev_action;
  std::vector<double> joint_torques;  // N*m
  Vec3 foot_pos_left{};   // meters
  Vec3 foot_pos_right{};
};

// Empty string means the step satisfies its invariants.
std::string check_step(const TrajectoryStep& step);

struct Commands {
  double xdot_desired = 0.0;
  double ydot_desired = 0.0;
  Quat quat_desired{1.0, 0.0, 0.0, 0.0};
};

// Sigmoid of the swing ratio; ~1 during normal locomotion, ~0 near standing.
double omega(double swing_ratio);

// The measurement kernels, each bounded in [0, 1). The force, speed and
// velocity-tracking kernels carry the omega gate.
struct KernelValues {
  double frc_left = 0.0;
  double frc_right = 0.0;
  double spd_left = 0.0;
  double spd_right = 0.0;
  double xdot = 0.0;
  double ydot = 0.0;
  double orientation = 0.0;
  double action_diff = 0.0;
  double torque = 0.0;
  double pelvis_acc = 0.0;
};
KernelValues measurement_kernels(const TrajectoryStep& step,
                                 const Commands& cmd, double omega_value);

// Squared planar (x, y) distance between the feet.
double foot_symmetry_err(const TrajectoryStep& step);

// The printed hop-symmetry gate exp(-5|sin(2*pi*dtheta)|) is maximal at both
// dtheta = 0 and dtheta = 0.5; period_one replaces it with
// exp(-5|sin(pi*dtheta)|), which is maximal only when the offsets match.
enum class HopSymGate { as_printed, period_one };

double hop_symmetry_cost(const TrajectoryStep& step, const GaitSpec& spec,
                         HopSymGate gate = HopSymGate::as_printed);

// 1 - exp(-(err_sym + 20 * q_action_diff)); the composition scales it by
// (omega - 1) so it only binds near standing.
double standing_cost(const TrajectoryStep& step);

// Sum over foot x channel of E[C] * q; <= 0 for penalty-style coefficients.
double bipedal_reward(const CompiledGait& gait, CycleTime phi,
                      const TrajectoryStep& step, const Commands& cmd,
                      double omega_value = 1.0);

double cmd_reward(const TrajectoryStep& step, const Commands& cmd,
                  double omega_value = 1.0);
double smooth_reward(const TrajectoryStep& step);

struct RewardWeights {
  double bipedal = 0.400;
  double cmd = 0.300;
  double smooth = 0.100;
  double standing = 0.100;
  double hop_sym = 0.100;
  double beta = 1.0;
  HopSymGate gate = HopSymGate::as_printed;
};

// Full multi-gait reward; omega comes from the spec's swing ratio.
double multi_reward(const CompiledGait& gait, CycleTime phi,
                    const TrajectoryStep& step, const Commands& cmd,
                    const RewardWeights& weights = {});

// Single-gait reward: bipedal + smooth + cmd + beta at omega = 1.
double single_gait_reward(const CompiledGait& gait, CycleTime phi,
                          const TrajectoryStep& step, const Commands& cmd,
                          double beta = 1.0);

enum class RewardMode { single, multi };

struct StepBreakdown {
  std::int64_t timestep = 0;
  double phi = 0.0;
  double omega_value = 1.0;
  CompiledGait::Coeffs coeffs{};
  KernelValues kernels{};
  double q_hop_sym = 0.0;
  double q_standing = 0.0;
  double r_bipedal = 0.0;
  double r_cmd = 0.0;
  double r_smooth = 0.0;
  double total = 0.0;
};

struct RewardBreakdown {
  std::vector<StepBreakdown> steps;
  double total_sum = 0.0;         // undiscounted
  double discounted_return = 0.0; // sum gamma^t R_t
  double gamma = 0.99;
  RewardMode mode = RewardMode::single;
};

// Scores a trajectory against one gait. phi starts at (t0 mod L)/L and
// advances by 1/L per step. Commands may be per-step (size == steps) or a
// single entry applied throughout.
RewardBreakdown score_trajectory(std::span<const TrajectoryStep> steps,
                                 const CompiledGait& gait,
                                 std::span<const Commands> commands,
                                 double gamma, RewardMode mode,
                                 const RewardWeights& weights = {});

// Per-step gait index into `gaits` for schedules that switch specs.
struct SchedulePoint {
  int gait_index = 0;
  Commands cmd;
};
RewardBreakdown score_trajectory(std::span<const TrajectoryStep> steps,
                                 std::span<const CompiledGait> gaits,
                                 std::span<const SchedulePoint> schedule,
                                 double gamma, RewardMode mode,
                                 const RewardWeights& weights = {});

// CSV: header, one row per step, one column per component, and a footer row
// of per-column undiscounted sums.
std::string breakdown_csv(const RewardBreakdown& breakdown);

}  // namespace gaitreward
