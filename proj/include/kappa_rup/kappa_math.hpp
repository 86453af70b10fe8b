#pragma once

// Deformed exponential/logarithm and the log-Gamma machinery behind every
// closed-form moment in the library.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "kappa_rup/errors.hpp"

namespace kappa_rup {

/// Deformation parameter of Kaniadakis statistics, restricted to [0, 1).
///
/// The two domain flags record which moments of the kappa-Gaussian exist:
/// `moment_safe()` (kappa < 2/3) guarantees finite <p^2> and <x^2>,
/// `strong_domain()` (kappa < 2/5) additionally guarantees fourth moments.
class KappaParameter {
 public:
  /// Below this value every kappa-dependent formula switches to its exact
  /// classical (Gaussian / Boltzmann) branch.
  static constexpr double kClassicalThreshold = 1e-8;
  static constexpr double kMomentSafeLimit = 2.0 / 3.0;
  static constexpr double kStrongDomainLimit = 2.0 / 5.0;

  constexpr KappaParameter() = default;

  explicit KappaParameter(double value) : value_(value) {
    if (!(value >= 0.0 && value < 1.0)) {
      throw DomainError("kappa must lie in [0, 1), got " + std::to_string(value));
    }
  }

  constexpr double value() const noexcept { return value_; }
  constexpr bool moment_safe() const noexcept { return value_ < kMomentSafeLimit; }
  constexpr bool strong_domain() const noexcept { return value_ < kStrongDomainLimit; }
  constexpr bool classical() const noexcept { return value_ < kClassicalThreshold; }

  friend constexpr bool operator==(KappaParameter, KappaParameter) = default;

 private:
  double value_ = 0.0;
};

/// exp_k(y) = (sqrt(1 + k^2 y^2) + k y)^(1/k).
///
/// Evaluated as exp(asinh(k y) / k): asinh is odd and accurate for small
/// arguments, so the decaying branch never subtracts nearly equal numbers
/// and the 1/k power never amplifies rounding in the base.
inline double kappa_exp(double y, KappaParameter kappa) {
  const double k = kappa.value();
  if (kappa.classical()) return std::exp(y);
  return std::exp(std::asinh(k * y) / k);
}

/// Natural log of exp_k(y); finite for any y, including far tails where
/// kappa_exp itself under/overflows.
inline double log_kappa_exp(double y, KappaParameter kappa) {
  const double k = kappa.value();
  if (kappa.classical()) return y;
  return std::asinh(k * y) / k;
}

/// ln_k(y) = (y^k - y^-k) / (2k), the inverse of kappa_exp.
inline double kappa_log(double y, KappaParameter kappa) {
  if (!(y > 0.0)) {
    throw DomainError("kappa_log requires y > 0, got " + std::to_string(y));
  }
  const double k = kappa.value();
  const double ln_y = std::log(y);
  if (kappa.classical()) return ln_y;
  return std::sinh(k * ln_y) / k;
}

namespace detail {

// Godfrey's g = 607/128, 15-term Lanczos coefficients.
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr std::array<double, 15> kLanczosCoefficients = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

// zeta(2) .. zeta(30), for the Taylor series of lnGamma about 1.
inline constexpr std::array<double, 29> kZetaValues = {
    1.644934066848226436472, 1.2020569031595942854,   1.082323233711138191516,
    1.036927755143369926331, 1.017343061984449139715, 1.00834927738192282684,
    1.004077356197944339379, 1.002008392826082214418, 1.000994575127818085337,
    1.000494188604119464559, 1.000246086553308048299, 1.000122713347578489147,
    1.000061248135058704829, 1.000030588236307020494, 1.000015282259408651872,
    1.000007637197637899762, 1.00000381729326499984,  1.000001908212716553939,
    1.000000953962033872796, 1.000000476932986787806, 1.000000238450502727733,
    1.000000119219925965311, 1.000000059608189051259, 1.000000029803503514652,
    1.000000014901554828365, 1.000000007450711789835, 1.000000003725334024788,
    1.000000001862659723513, 1.00000000093132743242};

inline constexpr double kRootWindow = 0.25;

// lnGamma(1 + z) = -gamma z + sum_{k>=2} (-1)^k zeta(k) z^k / k, |z| <= 1/4.
inline double log_gamma_near_one(double z) {
  double sum = 0.0;
  double power = -z;
  for (std::size_t i = 0; i < kZetaValues.size(); ++i) {
    power *= -z;
    sum += kZetaValues[i] * power / static_cast<double>(i + 2);
  }
  return sum - std::numbers::egamma * z;
}

// Lanczos evaluation, valid for x >= 1/2.
inline double log_gamma_lanczos(double x) {
  const double z = x - 1.0;
  double series = kLanczosCoefficients[0];
  for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
    series += kLanczosCoefficients[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(series);
}

// Stirling correction sum_k B_2k / (2k (2k-1) x^(2k-1)); accurate to
// rounding for x >= kStirlingMinimum.
inline constexpr double kStirlingMinimum = 10.0;
inline double stirling_correction(double x) {
  constexpr std::array<double, 8> coefficients = {
      1.0 / 12.0,   -1.0 / 360.0,           1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0, -691.0 / 360360.0,      1.0 / 156.0,  -3617.0 / 122400.0};
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double sum = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    sum = sum * inv2 + *it;
  }
  return sum * inv;
}

}  // namespace detail

/// Natural log of Gamma(x) for x > 0.
///
/// Lanczos for the bulk of the range; Taylor series about the two zeros
/// (x = 1, 2) keep the relative error bounded where lnGamma vanishes.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma requires finite x > 0, got " + std::to_string(x));
  }
  if (std::abs(x - 1.0) <= detail::kRootWindow) return detail::log_gamma_near_one(x - 1.0);
  if (std::abs(x - 2.0) <= detail::kRootWindow) {
    const double z = x - 2.0;
    return std::log1p(z) + detail::log_gamma_near_one(z);
  }
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  return detail::log_gamma_lanczos(x);
}

/// lnGamma(a) - lnGamma(b) without forming either term when both arguments
/// are large, so the difference keeps full relative precision even when
/// each log-Gamma is ~1e5.
inline double log_gamma_difference(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("log_gamma_difference requires positive arguments");
  }
  if (a < detail::kStirlingMinimum || b < detail::kStirlingMinimum) {
    return log_gamma(a) - log_gamma(b);
  }
  const double d = a - b;
  return (a - 0.5) * std::log1p(d / b) + d * (std::log(b) - 1.0) +
         (detail::stirling_correction(a) - detail::stirling_correction(b));
}

/// Gamma(a) / Gamma(b) for a, b > 0.
inline double gamma_ratio(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("gamma_ratio requires a > 0 and b > 0");
  }
  return std::exp(log_gamma_difference(a, b));
}

}  // namespace kappa_rup
