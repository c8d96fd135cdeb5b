#pragma once

#include <cstdint>

#include "gaitreward/rng.hpp"

namespace gaitreward {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Von Mises distribution on the circle, parameterized by mean direction
// (radians) and concentration kappa. The CDF lives on the branch
// [mean - pi, mean + pi]; query angles are lifted to the representative
// nearest the mean before evaluation.
struct VonMisesParams {
  double mean;   // normalized into [0, 2*pi)
  double kappa;  // > 0

  VonMisesParams(double mean_rad, double kappa_in);
};

// Normalized cycle position in [0, 1). Arithmetic wraps modulo 1.
struct CycleTime {
  double phi;

  explicit CycleTime(double value);
  CycleTime shifted(double delta) const { return CycleTime(phi + delta); }
};

// Start/end variables (A, B) of one phase interval. Both share one kappa.
struct IndicatorDistribution {
  VonMisesParams start;
  VonMisesParams end;

  IndicatorDistribution(VonMisesParams start_in, VonMisesParams end_in);
};

// Modified Bessel function of the first kind, order zero. Relative error
// below 1e-10. Overflows to +inf for x beyond ~709 (exp range); use the
// scaled variant there.
double bessel_i0(double x);

// exp(-x) * I0(x); well conditioned for all x >= 0.
double bessel_i0_scaled(double x);

// Density at x (x lifted onto the branch).
double von_mises_pdf(double x, const VonMisesParams& params);

// CDF on the branch [mean - pi, mean + pi]. cdf(mean) = 0.5 exactly;
// cdf(mean - pi) = 0, cdf(mean + pi) = 1. Adaptive quadrature, absolute
// tolerance 1e-10.
double von_mises_cdf(double x, const VonMisesParams& params);

// E[I(phi)] = P(A < 2*pi*phi) * (1 - P(B < 2*pi*phi)), each CDF evaluated
// after lifting the query angle onto that variable's branch. Always in [0,1].
double indicator_expectation(CycleTime phi, const IndicatorDistribution& dist);

// One draw on the branch [mean - pi, mean + pi] (Best-Fisher rejection).
double sample_von_mises(const VonMisesParams& params, Rng& rng);

// Monte Carlo estimate of indicator_expectation: samples (A, B) pairs and
// counts the fraction satisfying A < x && x < B under the same branch
// lifting as the analytic path. Deterministic for a fixed seed.
double mc_indicator_oracle(CycleTime phi, const IndicatorDistribution& dist,
                           std::uint64_t samples, std::uint64_t seed);

}  // namespace gaitreward
