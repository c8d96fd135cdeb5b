#include "gaitreward/phase_math.hpp"

#include <cmath>
#include <stdexcept>

namespace gaitreward {

namespace {

double wrap_angle(double x) {
  double w = std::fmod(x, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

double wrap_unit(double x) {
  double w = std::fmod(x, 1.0);
  if (w < 0.0) w += 1.0;
  if (w >= 1.0) w = 0.0;
  return w;
}

// Signed offset of x from the mean, on [-pi, pi]. std::remainder keeps the
// branch endpoints: remainder(pi, 2pi) = pi, remainder(-pi, 2pi) = -pi.
double branch_offset(double x, double mean) {
  return std::remainder(x - mean, kTwoPi);
}

// exp(kappa * (cos(u) - 1)); the scaled density up to the 1/(2 pi i0e) factor
double scaled_density(double u, double kappa) {
  return std::exp(kappa * (std::cos(u) - 1.0));
}

double adaptive_simpson(double kappa, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = scaled_density(lm, kappa);
  const double frm = scaled_density(rm, kappa);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(kappa, a, m, fa, flm, fm, left, 0.5 * tol,
                          depth - 1) +
         adaptive_simpson(kappa, m, b, fm, frm, fb, right, 0.5 * tol,
                          depth - 1);
}

// Integral of the scaled density over [a, b], 0 <= a <= b <= pi.
double integrate_scaled(double kappa, double a, double b, double tol) {
  if (b <= a) return 0.0;
  const double fa = scaled_density(a, kappa);
  const double fb = scaled_density(b, kappa);
  const double fm = scaled_density(0.5 * (a + b), kappa);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(kappa, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

VonMisesParams::VonMisesParams(double mean_rad, double kappa_in)
    : mean(0.0), kappa(kappa_in) {
  if (!std::isfinite(mean_rad) || !std::isfinite(kappa_in)) {
    throw std::domain_error("VonMisesParams: non-finite parameter");
  }
  if (kappa_in <= 0.0) {
    throw std::domain_error("VonMisesParams: kappa must be > 0");
  }
  mean = wrap_angle(mean_rad);
}

CycleTime::CycleTime(double value) : phi(0.0) {
  if (!std::isfinite(value)) {
    throw std::domain_error("CycleTime: non-finite value");
  }
  phi = wrap_unit(value);
}

IndicatorDistribution::IndicatorDistribution(VonMisesParams start_in,
                                             VonMisesParams end_in)
    : start(start_in), end(end_in) {
  if (start.kappa != end.kappa) {
    throw std::invalid_argument(
        "IndicatorDistribution: start and end must share kappa");
  }
}

double bessel_i0_scaled(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("bessel_i0: argument must be finite and >= 0");
  }
  if (x < 30.0) {
    // power series, all terms positive; converges fast for small x
    double term = 1.0;
    double sum = 1.0;
    const double q = 0.25 * x * x;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term < sum * 1e-18) break;
    }
    return sum * std::exp(-x);
  }
  // asymptotic expansion: I0(x) ~ e^x / sqrt(2 pi x) * sum a_k / x^k,
  // a_k = ((2k-1)!!)^2 / (k! 8^k); truncated at the smallest term
  double term = 1.0;
  double sum = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (odd * odd) / (8.0 * k * x);
    if (term >= prev) break;  // asymptotic series started diverging
    sum += term;
    prev = term;
    if (term < sum * 1e-18) break;
  }
  return sum / std::sqrt(kTwoPi * x);
}

double bessel_i0(double x) {
  return bessel_i0_scaled(x) * std::exp(x);
}

double von_mises_pdf(double x, const VonMisesParams& params) {
  const double u = branch_offset(x, params.mean);
  const double norm = kTwoPi * bessel_i0_scaled(params.kappa);
  return scaled_density(u, params.kappa) / norm;
}

double von_mises_cdf(double x, const VonMisesParams& params) {
  if (!std::isfinite(x)) {
    throw std::domain_error("von_mises_cdf: non-finite query");
  }
  const double kappa = params.kappa;
  const double u = branch_offset(x, params.mean);
  const double norm = kTwoPi * bessel_i0_scaled(kappa);
  // Integrate outward from the mean; the density peak sits at an interval
  // endpoint, so the adaptive rule always sees it. Symmetry pins
  // cdf(mean) = 0.5 exactly.
  const double half = integrate_scaled(kappa, 0.0, std::fabs(u),
                                       1e-11 * norm) /
                      norm;
  double cdf = u >= 0.0 ? 0.5 + half : 0.5 - half;
  if (cdf < 0.0) cdf = 0.0;
  if (cdf > 1.0) cdf = 1.0;
  return cdf;
}

double indicator_expectation(CycleTime phi, const IndicatorDistribution& dist) {
  const double x = kTwoPi * phi.phi;
  const double pa = von_mises_cdf(x, dist.start);
  const double pb = von_mises_cdf(x, dist.end);
  return pa * (1.0 - pb);
}

double sample_von_mises(const VonMisesParams& params, Rng& rng) {
  // Best-Fisher rejection sampler; returns mean +- acos(f), i.e. a value on
  // the branch [mean - pi, mean + pi].
  const double kappa = params.kappa;
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  for (;;) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double z = std::cos(M_PI * u1);
    const double f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    if (c * (2.0 - c) - u2 > 0.0 ||
        (u2 > 0.0 && std::log(c / u2) + 1.0 - c >= 0.0)) {
      const double u3 = rng.uniform();
      return params.mean + std::copysign(std::acos(std::clamp(f, -1.0, 1.0)),
                                         u3 - 0.5);
    }
  }
}

double mc_indicator_oracle(CycleTime phi, const IndicatorDistribution& dist,
                           std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) {
    throw std::domain_error("mc_indicator_oracle: samples must be >= 1");
  }
  const double x = kTwoPi * phi.phi;
  const double xa = dist.start.mean + branch_offset(x, dist.start.mean);
  const double xb = dist.end.mean + branch_offset(x, dist.end.mean);
  Rng rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double a = sample_von_mises(dist.start, rng);
    const double b = sample_von_mises(dist.end, rng);
    if (a < xa && xb < b) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace gaitreward
