#include "gaitreward/reward.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gaitreward {

namespace {

double vec_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double quat_dot(const Quat& a, const Quat& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double kernel(double arg) { return 1.0 - std::exp(-arg); }

// component sum of R_bipedal given coefficients and kernels
double bipedal_from_parts(const CompiledGait::Coeffs& c,
                          const KernelValues& q) {
  return c.frc_left * q.frc_left + c.frc_right * q.frc_right +
         c.spd_left * q.spd_left + c.spd_right * q.spd_right;
}

StepBreakdown score_step(const CompiledGait& gait,
                         const CompiledGait::Coeffs& coeffs, double phi,
                         const TrajectoryStep& step, const Commands& cmd,
                         RewardMode mode, const RewardWeights& weights) {
  StepBreakdown row;
  row.timestep = step.timestep;
  row.phi = phi;
  row.coeffs = coeffs;
  row.omega_value =
      mode == RewardMode::single ? 1.0 : omega(swing_ratio(gait.spec()));
  row.kernels = measurement_kernels(step, cmd, row.omega_value);
  row.q_hop_sym = hop_symmetry_cost(step, gait.spec(), weights.gate);
  row.q_standing = standing_cost(step);
  row.r_bipedal = bipedal_from_parts(coeffs, row.kernels);
  row.r_cmd = -(row.kernels.xdot + row.kernels.ydot + row.kernels.orientation);
  row.r_smooth = -(row.kernels.action_diff + row.kernels.torque +
                   row.kernels.pelvis_acc);
  if (mode == RewardMode::single) {
    row.total = row.r_bipedal + row.r_smooth + row.r_cmd + weights.beta;
  } else {
    row.total = weights.bipedal * row.r_bipedal + weights.cmd * row.r_cmd +
                weights.smooth * row.r_smooth +
                weights.standing * (row.omega_value - 1.0) * row.q_standing +
                weights.hop_sym * (-1.0) * row.q_hop_sym + weights.beta;
  }
  return row;
}

}  // namespace

double norm(const Vec3& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

double norm_sq(const Vec3& v) {
  return v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
}

std::string check_step(const TrajectoryStep& step) {
  const auto finite3 = [](const Vec3& v) {
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
  };
  if (!finite3(step.foot_force_left) || !finite3(step.foot_force_right))
    return "non-finite foot force";
  if (!finite3(step.foot_speed_left) || !finite3(step.foot_speed_right))
    return "non-finite foot speed";
  if (!std::isfinite(step.pelvis_velocity[0]) ||
      !std::isfinite(step.pelvis_velocity[1]))
    return "non-finite pelvis velocity";
  if (!finite3(step.pelvis_rot_velocity)) return "non-finite rot velocity";
  if (!finite3(step.pelvis_acceleration)) return "non-finite acceleration";
  if (!finite3(step.foot_pos_left) || !finite3(step.foot_pos_right))
    return "non-finite foot position";
  if (!all_finite(step.action)) return "non-finite action";
  if (!all_finite(step.prev_action)) return "non-finite prev_action";
  if (!all_finite(step.joint_torques)) return "non-finite torques";
  if (step.action.size() != step.prev_action.size())
    return "action and prev_action lengths differ";
  const double qn = std::sqrt(quat_dot(step.pelvis_orientation,
                                       step.pelvis_orientation));
  if (!std::isfinite(qn) || std::fabs(qn - 1.0) > 1e-6)
    return "pelvis quaternion is not unit norm";
  return {};
}

double omega(double swing_ratio_value) {
  return 1.0 / (1.0 + std::exp(-50.0 * (swing_ratio_value - 0.15)));
}

KernelValues measurement_kernels(const TrajectoryStep& step,
                                 const Commands& cmd, double omega_value) {
  if (!std::isfinite(omega_value)) {
    throw std::domain_error("measurement_kernels: non-finite omega");
  }
  const std::string bad = check_step(step);
  if (!bad.empty()) {
    throw std::domain_error("measurement_kernels: " + bad);
  }

  KernelValues q;
  q.frc_left = kernel(omega_value * norm_sq(step.foot_force_left) / 100.0);
  q.frc_right = kernel(omega_value * norm_sq(step.foot_force_right) / 100.0);
  q.spd_left = kernel(2.0 * omega_value * norm_sq(step.foot_speed_left));
  q.spd_right = kernel(2.0 * omega_value * norm_sq(step.foot_speed_right));
  q.xdot = kernel(2.0 * omega_value *
                  std::fabs(cmd.xdot_desired - step.pelvis_velocity[0]));
  q.ydot = kernel(2.0 * omega_value *
                  std::fabs(cmd.ydot_desired - step.pelvis_velocity[1]));
  const double d = quat_dot(step.pelvis_orientation, cmd.quat_desired);
  q.orientation = kernel(3.0 * (1.0 - d * d));

  std::vector<double> adiff(step.action.size());
  for (std::size_t i = 0; i < adiff.size(); ++i) {
    adiff[i] = step.action[i] - step.prev_action[i];
  }
  q.action_diff = kernel(5.0 * vec_norm(adiff));
  q.torque = kernel(0.05 * vec_norm(step.joint_torques));
  q.pelvis_acc = kernel(0.10 * (norm(step.pelvis_rot_velocity) +
                                norm(step.pelvis_acceleration)));
  return q;
}

double foot_symmetry_err(const TrajectoryStep& step) {
  const double dx = step.foot_pos_left[0] - step.foot_pos_right[0];
  const double dy = step.foot_pos_left[1] - step.foot_pos_right[1];
  return dx * dx + dy * dy;
}

double hop_symmetry_cost(const TrajectoryStep& step, const GaitSpec& spec,
                         HopSymGate gate) {
  const double dtheta = spec.theta_left - spec.theta_right;
  const double gate_arg = gate == HopSymGate::as_printed
                              ? std::fabs(std::sin(kTwoPi * dtheta))
                              : std::fabs(std::sin(M_PI * dtheta));
  return kernel(foot_symmetry_err(step) * std::exp(-5.0 * gate_arg));
}

double standing_cost(const TrajectoryStep& step) {
  std::vector<double> adiff(step.action.size());
  for (std::size_t i = 0; i < adiff.size(); ++i) {
    adiff[i] = step.action[i] - step.prev_action[i];
  }
  const double q_ad = kernel(5.0 * vec_norm(adiff));
  return kernel(foot_symmetry_err(step) + 20.0 * q_ad);
}

double bipedal_reward(const CompiledGait& gait, CycleTime phi,
                      const TrajectoryStep& step, const Commands& cmd,
                      double omega_value) {
  const KernelValues q = measurement_kernels(step, cmd, omega_value);
  return bipedal_from_parts(gait.coeffs_at(phi), q);
}

double cmd_reward(const TrajectoryStep& step, const Commands& cmd,
                  double omega_value) {
  const KernelValues q = measurement_kernels(step, cmd, omega_value);
  return -(q.xdot + q.ydot + q.orientation);
}

double smooth_reward(const TrajectoryStep& step) {
  const KernelValues q = measurement_kernels(step, Commands{}, 1.0);
  return -(q.action_diff + q.torque + q.pelvis_acc);
}

double multi_reward(const CompiledGait& gait, CycleTime phi,
                    const TrajectoryStep& step, const Commands& cmd,
                    const RewardWeights& weights) {
  const StepBreakdown row = score_step(gait, gait.coeffs_at(phi), phi.phi,
                                       step, cmd, RewardMode::multi, weights);
  return row.total;
}

double single_gait_reward(const CompiledGait& gait, CycleTime phi,
                          const TrajectoryStep& step, const Commands& cmd,
                          double beta) {
  RewardWeights weights;
  weights.beta = beta;
  const StepBreakdown row = score_step(gait, gait.coeffs_at(phi), phi.phi,
                                       step, cmd, RewardMode::single, weights);
  return row.total;
}

RewardBreakdown score_trajectory(std::span<const TrajectoryStep> steps,
                                 const CompiledGait& gait,
                                 std::span<const Commands> commands,
                                 double gamma, RewardMode mode,
                                 const RewardWeights& weights) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("score_trajectory: gamma must be in [0, 1]");
  }
  if (commands.size() != steps.size() && commands.size() != 1 &&
      !(commands.empty() && steps.empty())) {
    throw std::invalid_argument(
        "score_trajectory: commands must match trajectory length or be a "
        "single entry");
  }
  RewardBreakdown out;
  out.gamma = gamma;
  out.mode = mode;
  out.steps.reserve(steps.size());
  const std::int64_t L = gait.spec().period_steps;
  double discount = 1.0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    // clock index follows the logged timestep; phi = (t mod L) / L
    const std::int64_t k =
        ((steps[i].timestep % L) + L) % L;
    const double phi = static_cast<double>(k) / static_cast<double>(L);
    const Commands& cmd = commands.size() == 1 ? commands[0] : commands[i];
    StepBreakdown row = score_step(gait, gait.at_clock(steps[i].timestep), phi,
                                   steps[i], cmd, mode, weights);
    out.total_sum += row.total;
    out.discounted_return += discount * row.total;
    discount *= gamma;
    out.steps.push_back(std::move(row));
  }
  return out;
}

RewardBreakdown score_trajectory(std::span<const TrajectoryStep> steps,
                                 std::span<const CompiledGait> gaits,
                                 std::span<const SchedulePoint> schedule,
                                 double gamma, RewardMode mode,
                                 const RewardWeights& weights) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("score_trajectory: gamma must be in [0, 1]");
  }
  if (schedule.size() != steps.size()) {
    throw std::invalid_argument(
        "score_trajectory: schedule length must match trajectory length");
  }
  RewardBreakdown out;
  out.gamma = gamma;
  out.mode = mode;
  out.steps.reserve(steps.size());
  double discount = 1.0;
  double phi = 0.0;
  if (!steps.empty()) {
    const std::int64_t L0 =
        gaits[static_cast<std::size_t>(schedule[0].gait_index)]
            .spec()
            .period_steps;
    phi = static_cast<double>(((steps[0].timestep % L0) + L0) % L0) /
          static_cast<double>(L0);
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const int gi = schedule[i].gait_index;
    if (gi < 0 || static_cast<std::size_t>(gi) >= gaits.size()) {
      throw std::invalid_argument("score_trajectory: gait index out of range");
    }
    const CompiledGait& gait = gaits[static_cast<std::size_t>(gi)];
    const CycleTime ct(phi);
    StepBreakdown row = score_step(gait, gait.coeffs_at(ct), ct.phi, steps[i],
                                   schedule[i].cmd, mode, weights);
    out.total_sum += row.total;
    out.discounted_return += discount * row.total;
    discount *= gamma;
    out.steps.push_back(std::move(row));
    phi += 1.0 / static_cast<double>(gait.spec().period_steps);
    if (phi >= 1.0) phi -= 1.0;
  }
  return out;
}

std::string breakdown_csv(const RewardBreakdown& breakdown) {
  std::string out =
      "t,phi,omega,e_cfrc_left,e_cfrc_right,e_cspd_left,e_cspd_right,"
      "q_frc_left,q_frc_right,q_spd_left,q_spd_right,q_xdot,q_ydot,"
      "q_orientation,q_action_diff,q_torque,q_pelvis_acc,q_hop_sym,"
      "q_standing,r_bipedal,r_cmd,r_smooth,total\n";
  char buf[640];
  double sums[21] = {};
  for (const StepBreakdown& s : breakdown.steps) {
    const double cols[21] = {
        s.omega_value,       s.coeffs.frc_left,      s.coeffs.frc_right,
        s.coeffs.spd_left,   s.coeffs.spd_right,     s.kernels.frc_left,
        s.kernels.frc_right, s.kernels.spd_left,     s.kernels.spd_right,
        s.kernels.xdot,      s.kernels.ydot,         s.kernels.orientation,
        s.kernels.action_diff, s.kernels.torque,     s.kernels.pelvis_acc,
        s.q_hop_sym,         s.q_standing,           s.r_bipedal,
        s.r_cmd,             s.r_smooth,             s.total};
    int n = std::snprintf(buf, sizeof buf, "%lld,%.17g",
                          static_cast<long long>(s.timestep), s.phi);
    out.append(buf, static_cast<std::size_t>(n));
    for (int c = 0; c < 21; ++c) {
      sums[c] += cols[c];
      n = std::snprintf(buf, sizeof buf, ",%.17g", cols[c]);
      out.append(buf, static_cast<std::size_t>(n));
    }
    out.push_back('\n');
  }
  // footer of per-column sums; phi and omega sums are not meaningful
  out += "sum,,";
  for (int c = 1; c < 21; ++c) {
    const int n = std::snprintf(buf, sizeof buf, ",%.17g", sums[c]);
    out.append(buf, static_cast<std::size_t>(n));
  }
  out.push_back('\n');
  return out;
}

}  // namespace gaitreward
