#include "gaitreward/gait_spec.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gaitreward {

namespace {

constexpr double kRatioSumTol = 1e-9;

double wrap_unit(double x) {
  double w = std::fmod(x, 1.0);
  if (w < 0.0) w += 1.0;
  if (w >= 1.0) w = 0.0;
  return w;
}

GaitSpec two_phase(std::string name, double swing, double theta_left,
                   double theta_right) {
  GaitSpec spec;
  spec.name = std::move(name);
  spec.phases = {
      {swing, -1.0, 0.0},        // swing: penalize force, ignore speed
      {1.0 - swing, 0.0, -1.0},  // stance: ignore force, penalize speed
  };
  spec.theta_left = theta_left;
  spec.theta_right = theta_right;
  return spec;
}

}  // namespace

std::vector<std::string> validate(const GaitSpec& spec) {
  std::vector<std::string> errors;
  if (spec.phases.empty()) {
    errors.push_back("spec has no phases");
    return errors;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < spec.phases.size(); ++j) {
    const PhaseDef& p = spec.phases[j];
    if (!std::isfinite(p.ratio) || p.ratio <= 0.0 || p.ratio >= 1.0) {
      std::ostringstream os;
      os << "phase " << j << ": ratio " << p.ratio << " outside (0, 1)";
      errors.push_back(os.str());
    }
    if (!std::isfinite(p.coeff_frc) || !std::isfinite(p.coeff_spd)) {
      std::ostringstream os;
      os << "phase " << j << ": non-finite coefficient";
      errors.push_back(os.str());
    }
    sum += p.ratio;
  }
  if (std::isfinite(sum) && std::fabs(sum - 1.0) > kRatioSumTol) {
    std::ostringstream os;
    os << "ratios sum to " << sum << ", expected 1";
    errors.push_back(os.str());
  }
  if (!std::isfinite(spec.kappa) || spec.kappa <= 0.0) {
    errors.push_back("kappa must be > 0");
  }
  if (spec.period_steps < 2) {
    errors.push_back("period_steps must be >= 2");
  }
  if (!std::isfinite(spec.theta_left) || !std::isfinite(spec.theta_right)) {
    errors.push_back("cycle offsets must be finite");
  }
  return errors;
}

GaitSpec validated(GaitSpec spec) {
  const std::vector<std::string> errors = validate(spec);
  if (!errors.empty()) {
    std::string joined = "invalid gait spec:";
    for (const std::string& e : errors) {
      joined += "\n  - " + e;
    }
    throw std::invalid_argument(joined);
  }
  spec.theta_left = wrap_unit(spec.theta_left);
  spec.theta_right = wrap_unit(spec.theta_right);
  return spec;
}

std::vector<IndicatorDistribution> phase_intervals(const GaitSpec& spec) {
  std::vector<IndicatorDistribution> intervals;
  intervals.reserve(spec.phases.size());
  double start = 0.0;
  for (std::size_t j = 0; j < spec.phases.size(); ++j) {
    // pin the final boundary to 1 so accumulated rounding never leaks a gap
    const double end =
        j + 1 == spec.phases.size() ? 1.0 : start + spec.phases[j].ratio;
    intervals.emplace_back(VonMisesParams(kTwoPi * start, spec.kappa),
                           VonMisesParams(kTwoPi * end, spec.kappa));
    start = end;
  }
  return intervals;
}

double cycle_offset(const GaitSpec& spec, Foot foot) {
  return foot == Foot::left ? spec.theta_left : spec.theta_right;
}

double coeff_expectation(const GaitSpec& spec, Channel channel, Foot foot,
                         CycleTime phi) {
  const std::vector<IndicatorDistribution> intervals = phase_intervals(spec);
  const CycleTime shifted = phi.shifted(cycle_offset(spec, foot));
  double sum = 0.0;
  for (std::size_t j = 0; j < intervals.size(); ++j) {
    const double c = channel == Channel::force ? spec.phases[j].coeff_frc
                                               : spec.phases[j].coeff_spd;
    if (c == 0.0) continue;
    sum += c * indicator_expectation(shifted, intervals[j]);
  }
  return sum;
}

double swing_ratio(const GaitSpec& spec) {
  double sum = 0.0;
  for (const PhaseDef& p : spec.phases) {
    if (p.coeff_frc < 0.0) sum += p.ratio;
  }
  return sum;
}

GaitObservation observation(const GaitSpec& spec, std::int64_t t) {
  if (t < 0) throw std::invalid_argument("observation: t must be >= 0");
  const double L = static_cast<double>(spec.period_steps);
  GaitObservation obs;
  obs.ratios.reserve(spec.phases.size());
  for (const PhaseDef& p : spec.phases) obs.ratios.push_back(p.ratio);
  const double td = static_cast<double>(t);
  obs.clocks = {std::sin(kTwoPi * (td + spec.theta_left * L) / L),
                std::sin(kTwoPi * (td + spec.theta_right * L) / L)};
  return obs;
}

const std::vector<std::string>& library_gait_names() {
  static const std::vector<std::string> names = {"stand", "walk",   "run",
                                                 "hop",   "gallop", "skip"};
  return names;
}

GaitSpec library_gait(std::string_view name, const GaitOverrides& ov) {
  GaitSpec spec;
  if (name == "stand") {
    spec = two_phase("stand", 0.01, 0.0, 0.0);
  } else if (name == "walk") {
    spec = two_phase("walk", 0.40, 0.0, 0.5);
  } else if (name == "run") {
    spec = two_phase("run", 0.60, 0.0, 0.5);
  } else if (name == "hop") {
    spec = two_phase("hop", 0.50, 0.0, 0.0);
  } else if (name == "gallop") {
    spec = two_phase("gallop", 0.60, 0.0, 0.25);
  } else if (name == "skip") {
    spec.name = "skip";
    spec.phases = {
        {0.3, -1.0, 0.0},
        {0.2, 0.0, -1.0},
        {0.3, -1.0, 0.0},
        {0.2, 0.0, -1.0},
    };
    spec.theta_left = 0.0;
    spec.theta_right = 0.5;
  } else {
    throw std::invalid_argument("unknown gait name: " + std::string(name));
  }

  if (ov.swing_ratio) {
    if (spec.phases.size() != 2) {
      throw std::invalid_argument(
          "swing_ratio override only applies to two-phase gaits");
    }
    spec.phases[0].ratio = *ov.swing_ratio;
    spec.phases[1].ratio = 1.0 - *ov.swing_ratio;
  }
  if (ov.kappa) spec.kappa = *ov.kappa;
  if (ov.period_steps) spec.period_steps = *ov.period_steps;
  if (ov.theta_left) spec.theta_left = *ov.theta_left;
  if (ov.theta_right) spec.theta_right = *ov.theta_right;
  return validated(std::move(spec));
}

CompiledGait::CompiledGait(GaitSpec spec)
    : spec_(validated(std::move(spec))), intervals_(phase_intervals(spec_)) {
  const int L = spec_.period_steps;
  clock_table_.reserve(L);
  for (int t = 0; t < L; ++t) {
    clock_table_.push_back(
        coeffs_at(CycleTime(static_cast<double>(t) / static_cast<double>(L))));
  }
}

double CompiledGait::coeff(Channel channel, Foot foot, CycleTime phi) const {
  const CycleTime shifted = phi.shifted(cycle_offset(spec_, foot));
  double sum = 0.0;
  for (std::size_t j = 0; j < intervals_.size(); ++j) {
    const double c = channel == Channel::force ? spec_.phases[j].coeff_frc
                                               : spec_.phases[j].coeff_spd;
    if (c == 0.0) continue;
    sum += c * indicator_expectation(shifted, intervals_[j]);
  }
  return sum;
}

CompiledGait::Coeffs CompiledGait::coeffs_at(CycleTime phi) const {
  Coeffs out{};
  // indicator expectations are shared by the two channels; evaluate once per
  // foot per phase
  for (const Foot foot : {Foot::left, Foot::right}) {
    const CycleTime shifted = phi.shifted(cycle_offset(spec_, foot));
    double frc = 0.0;
    double spd = 0.0;
    for (std::size_t j = 0; j < intervals_.size(); ++j) {
      const PhaseDef& p = spec_.phases[j];
      if (p.coeff_frc == 0.0 && p.coeff_spd == 0.0) continue;
      const double e = indicator_expectation(shifted, intervals_[j]);
      frc += p.coeff_frc * e;
      spd += p.coeff_spd * e;
    }
    if (foot == Foot::left) {
      out.frc_left = frc;
      out.spd_left = spd;
    } else {
      out.frc_right = frc;
      out.spd_right = spd;
    }
  }
  return out;
}

const CompiledGait::Coeffs& CompiledGait::at_clock(std::int64_t t) const {
  const std::int64_t L = spec_.period_steps;
  std::int64_t k = t % L;
  if (k < 0) k += L;
  return clock_table_[static_cast<std::size_t>(k)];
}

}  // namespace gaitreward
