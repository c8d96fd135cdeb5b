#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaitreward/phase_math.hpp"

namespace gaitreward {

enum class Channel { force, speed };
enum class Foot { left, right };

// One phase of the cycle: the fraction it occupies and the coefficient it
// applies on each measurement channel (-1 penalize, 0 ignore).
struct PhaseDef {
  double ratio;
  double coeff_frc;
  double coeff_spd;
};

// A gait: an ordered, contiguous sequence of phases shared by both feet,
// shifted per foot by a cycle offset. period_steps is the number of control
// ticks per cycle.
struct GaitSpec {
  std::string name;
  std::vector<PhaseDef> phases;
  double theta_left = 0.0;
  double theta_right = 0.0;
  double kappa = 16.0;
  int period_steps = 28;
};

// Policy-facing encoding: the spec's ratio vector plus the two sine clocks.
struct GaitObservation {
  std::vector<double> ratios;
  std::array<double, 2> clocks;  // {left, right}
};

// Itemized invariant violations; empty means valid.
std::vector<std::string> validate(const GaitSpec& spec);

// Returns the spec with offsets normalized into [0, 1); throws
// std::invalid_argument listing every violation otherwise.
GaitSpec validated(GaitSpec spec);

// Start/end Von Mises variables of each phase. Phase j occupies
// [sum ratio_<j, sum ratio_<=j] in cycle units; means are boundaries * 2*pi.
std::vector<IndicatorDistribution> phase_intervals(const GaitSpec& spec);

// Sum over phases of coeff(channel) * E[I_j((phi + theta_foot) mod 1)].
double coeff_expectation(const GaitSpec& spec, Channel channel, Foot foot,
                         CycleTime phi);

// Fraction of the cycle spent in force-penalized (swing) phases.
double swing_ratio(const GaitSpec& spec);

double cycle_offset(const GaitSpec& spec, Foot foot);

// Clock inputs sin(2*pi*(t + theta*L)/L) per foot plus the ratio vector.
GaitObservation observation(const GaitSpec& spec, std::int64_t t);

struct GaitOverrides {
  std::optional<double> kappa;
  std::optional<int> period_steps;
  std::optional<double> theta_left;
  std::optional<double> theta_right;
  std::optional<double> swing_ratio;  // two-phase gaits only
};

// Built-in gait library: stand, walk, run, hop, gallop, skip.
GaitSpec library_gait(std::string_view name, const GaitOverrides& ov = {});
const std::vector<std::string>& library_gait_names();

// A validated spec with its phase intervals and a per-clock-tick table of the
// four coefficient curves, so scoring loops avoid re-running quadrature.
class CompiledGait {
 public:
  struct Coeffs {
    double frc_left;
    double frc_right;
    double spd_left;
    double spd_right;
  };

  explicit CompiledGait(GaitSpec spec);

  const GaitSpec& spec() const { return spec_; }
  const std::vector<IndicatorDistribution>& intervals() const {
    return intervals_;
  }

  // exact evaluation at an arbitrary cycle time
  double coeff(Channel channel, Foot foot, CycleTime phi) const;
  Coeffs coeffs_at(CycleTime phi) const;

  // table lookup at phi = (t mod L) / L
  const Coeffs& at_clock(std::int64_t t) const;

 private:
  GaitSpec spec_;
  std::vector<IndicatorDistribution> intervals_;
  std::vector<Coeffs> clock_table_;
};

}  // namespace gaitreward
