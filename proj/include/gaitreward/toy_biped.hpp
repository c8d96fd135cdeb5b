#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "gaitreward/gait_spec.hpp"
#include "gaitreward/trajectory_io.hpp"

namespace gaitreward {

using Vec2 = std::array<double, 2>;

// Per-rollout dynamics randomization, drawn uniformly. Defaults are the
// nominal (unrandomized) model.
struct RandomizationConfig {
  double damping_scale = 1.0;   // x leg PD damping
  double mass_scale = 1.0;      // x pelvis mass and inertia
  double ground_friction = 0.8;
  double ground_slope = 0.0;    // rad
  double encoder_offset = 0.0;  // rad, applied to reported angles only
};

RandomizationConfig draw_randomization(std::uint64_t seed);

struct ContactParams {
  double stiffness = 3.0e4;        // N/m
  double damping = 1.0e3;          // N*s/m
  double tangential_gain = 2.0e3;  // N*s/m, clamped to mu * normal
};

struct BipedParams {
  double pelvis_mass = 28.0;   // kg
  double foot_mass = 1.0;      // kg each
  double pelvis_inertia = 1.4; // kg*m^2
  double gravity = 9.81;
  Vec2 hip_offset{0.0, -0.05};   // both hips co-located, pelvis frame
  double leg_kp = 3000.0;        // N/m
  double leg_kd = 120.0;         // N*s/m
  double leg_force_limit = 1200.0;
  double pitch_damping = 2.0;    // N*m*s/rad, crude rotational drag
  double neutral_leg_drop = -0.85;  // nominal hip-to-foot z offset
  double control_dt = 1.0 / 40.0;
  int substeps = 40;
  double fall_height = 0.4;
  double max_penetration = 0.05;
  // execution-rate jitter on control_dt, off by default
  bool randomize_rate = false;
  double rate_jitter = 0.10;

  double total_mass() const { return pelvis_mass + 2.0 * foot_mass; }
  double weight() const { return total_mass() * gravity; }
};

// Foot target offsets relative to the hip, in the pelvis frame, plus a
// stiffness scale per leg. Construction clamps to the leg workspace.
struct ToyAction {
  Vec2 offset_left{0.0, -0.85};
  Vec2 offset_right{0.0, -0.85};
  double stiffness_left = 1.0;
  double stiffness_right = 1.0;

  static ToyAction neutral(const BipedParams& p);
  static ToyAction clamped(Vec2 left, Vec2 right, double stiff_l,
                           double stiff_r);
  std::vector<double> flatten() const;
};

struct FootState {
  Vec2 pos{};
  Vec2 vel{};
  bool contact = false;
};

struct ToyBipedState {
  Vec2 pelvis_pos{0.0, 0.9};
  Vec2 pelvis_vel{};
  double pitch = 0.0;
  double pitch_rate = 0.0;
  FootState foot_left;
  FootState foot_right;
  double time = 0.0;
  std::int64_t tick = 0;
  // carried for acceleration and action-difference measurements
  Vec2 prev_pelvis_vel{};
  std::vector<double> prev_action;
};

// Nominal standing state: pelvis at z = 0.9, feet on the ground surface.
ToyBipedState reset_state(const BipedParams& params = {},
                          const RandomizationConfig& config = {});

// reset per the environment contract: nominal state plus the randomization
// draw (identity config when randomize is off).
std::pair<ToyBipedState, RandomizationConfig> reset(
    std::uint64_t seed, bool randomize, const BipedParams& params = {});

struct StepResult {
  ToyBipedState state;
  TrajectoryStep measurement;
};

// One 1/40 s control step: 40 semi-implicit Euler substeps of leg PD force
// tracking plus spring-damper ground contact. Throws on non-finite state.
StepResult step(const ToyBipedState& state, const ToyAction& action,
                const RandomizationConfig& config,
                const BipedParams& params = {},
                const ContactParams& contact = {},
                double control_dt_override = 0.0);

using PolicyFn = std::function<ToyAction(
    const ToyBipedState& state, const GaitObservation& obs, double phi)>;

struct RolloutResult {
  Trajectory trajectory;
  bool fell = false;
  RandomizationConfig config;
};

// Closed-loop rollout: observation -> policy -> step, early exit on fall
// (pelvis below fall_height). Deterministic for a fixed seed.
RolloutResult rollout(const PolicyFn& policy, const GaitSpec& spec,
                      const Commands& cmd, int horizon, std::uint64_t seed,
                      bool randomize = true, const BipedParams& params = {},
                      const ContactParams& contact = {});

// Kinematic trajectory whose contact pattern follows the spec's stance
// windows exactly, optionally time-shifted by delta cycles. Stance feet share
// body weight; swing feet move at 1 m/s. Two-phase-per-foot specs only.
Trajectory synthetic_contact_trajectory(const GaitSpec& spec, int horizon,
                                        double delta = 0.0,
                                        const BipedParams& params = {});

}  // namespace gaitreward
