#pragma once

// kappa-Gaussian minimum-uncertainty states
//
//   psi(p) = N [exp_k(-z p^2)]^(1/2)
//
// with closed-form normalization, second moment, uncertainties and the
// saturation function F(k), plus quadrature counterparts of each that never
// touch the Gamma-function route.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "kappa_rup/deformation.hpp"
#include "kappa_rup/errors.hpp"
#include "kappa_rup/kappa_math.hpp"
#include "kappa_rup/quadrature.hpp"

namespace kappa_rup {

/// One kappa-Gaussian state: deformation, inverse-squared momentum scale
/// zeta, and the action unit hbar.
struct StateSpec {
  KappaParameter kappa;
  double zeta = 1.0;
  double hbar = 1.0;

  StateSpec() = default;
  StateSpec(KappaParameter kappa_, double zeta_, double hbar_ = 1.0)
      : kappa(kappa_), zeta(zeta_), hbar(hbar_) {
    if (!(zeta > 0.0) || !std::isfinite(zeta)) throw DomainError("zeta must be positive");
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("hbar must be positive");
  }
};

namespace detail {

inline void require_moment_safe(KappaParameter kappa, const char* what) {
  if (!kappa.moment_safe()) {
    throw DivergenceError(std::string(what) + " diverges for kappa >= 2/3 (kappa = " +
                          std::to_string(kappa.value()) + ")");
  }
}

// Gamma(a - 3/4) Gamma(a + 1/4) / [Gamma(a + 3/4) Gamma(a - 1/4)], a = 1/(2k).
inline double second_moment_gamma_factor(double k) {
  const double a = 0.5 / k;
  return std::exp(log_gamma_difference(a - 0.75, a + 0.75) +
                  log_gamma_difference(a + 0.25, a - 0.25));
}

}  // namespace detail

/// Closed-form normalization so that the integral of |psi|^2 is one.
inline double normalization_constant(const StateSpec& spec) {
  const double k = spec.kappa.value();
  if (spec.kappa.classical()) return std::pow(spec.zeta / std::numbers::pi, 0.25);
  const double a = 0.5 / k;
  const double n2 = (2.0 + k) * std::sqrt(k * spec.zeta / (2.0 * std::numbers::pi)) *
                    gamma_ratio(a + 0.25, a - 0.25);
  return std::sqrt(n2);
}

/// ln|psi(p)|^2; stays finite far into the power-law tail.
inline double log_pdf(double p, const StateSpec& spec) {
  return 2.0 * std::log(normalization_constant(spec)) +
         log_kappa_exp(-spec.zeta * p * p, spec.kappa);
}

/// Real, positive, even amplitude (global phase fixed to zero).
inline double psi(double p, const StateSpec& spec) {
  return normalization_constant(spec) *
         std::exp(0.5 * log_kappa_exp(-spec.zeta * p * p, spec.kappa));
}

inline double pdf(double p, const StateSpec& spec) { return std::exp(log_pdf(p, spec)); }

/// <p^2>; finite only for kappa < 2/3.
inline double second_moment(const StateSpec& spec) {
  detail::require_moment_safe(spec.kappa, "<p^2>");
  const double k = spec.kappa.value();
  if (spec.kappa.classical()) return 0.5 / spec.zeta;
  return (2.0 + k) / (4.0 * k * spec.zeta * (2.0 + 3.0 * k)) *
         detail::second_moment_gamma_factor(k);
}

inline double delta_p(const StateSpec& spec) { return std::sqrt(second_moment(spec)); }

/// Position spread fixed by the low-momentum Heisenberg condition:
/// dx = hbar z (1 - k^2) dp.
inline double delta_x(const StateSpec& spec) {
  const double k = spec.kappa.value();
  return spec.hbar * spec.zeta * (1.0 - k * k) * delta_p(spec);
}

/// F(k) = <f(p)> on any kappa-Gaussian, so that dx dp = (hbar/2) F(k).
inline double f_expectation(KappaParameter kappa) {
  detail::require_moment_safe(kappa, "<f(p)>");
  const double k = kappa.value();
  if (kappa.classical()) return 1.0;
  const double a = 0.5 / k;
  return (1.0 - k * k) / (2.0 * k) *
         std::exp(log_gamma_difference(a - 0.75, a + 1.75) +
                  log_gamma_difference(a + 1.25, a - 0.25));
}

// ---------------------------------------------------------------------------
// Quadrature oracle

namespace detail {

inline double core_half_width(const StateSpec& spec) { return 20.0 / std::sqrt(spec.zeta); }

inline void check_rel_tol(double rel_tol) {
  if (!(rel_tol >= 1e-12 && rel_tol <= 1e-3)) {
    throw DomainError("rel_tol must lie in [1e-12, 1e-3]");
  }
}

template <class LogWeight>
double integrate_against_density(LogWeight log_weight, const StateSpec& spec,
                                 double rel_tol) {
  check_rel_tol(rel_tol);
  const double log_n2 = 2.0 * std::log(normalization_constant(spec));
  auto log_integrand = [&](double p) {
    return log_weight(p) + log_n2 + log_kappa_exp(-spec.zeta * p * p, spec.kappa);
  };
  const QuadratureResult r = integrate_real_line(log_integrand, core_half_width(spec), rel_tol);
  if (!(r.error_estimate <= rel_tol * std::abs(r.value))) {
    throw ConvergenceError("quadrature error estimate " + std::to_string(r.error_estimate) +
                           " exceeds requested tolerance");
  }
  return r.value;
}

}  // namespace detail

/// Integral of p^power |psi|^2 by adaptive quadrature.
///
/// `power` must be even and satisfy power < 2/kappa - 1, otherwise the
/// |p|^(power - 2/kappa) tail is not integrable.
inline double quadrature_moment(int power, const StateSpec& spec, double rel_tol = 1e-10) {
  if (power < 0 || power % 2 != 0) throw DomainError("power must be an even nonnegative integer");
  const double k = spec.kappa.value();
  if (!spec.kappa.classical() && static_cast<double>(power) >= 2.0 / k - 1.0) {
    throw DivergenceError("moment of order " + std::to_string(power) +
                          " diverges for kappa = " + std::to_string(k));
  }
  if (power == 0) return detail::integrate_against_density([](double) { return 0.0; }, spec, rel_tol);
  const double order = static_cast<double>(power);
  return detail::integrate_against_density(
      [order](double p) { return order * std::log(std::abs(p)); }, spec, rel_tol);
}

/// <f(p)> by quadrature.
inline double quadrature_f_expectation(const StateSpec& spec, double rel_tol = 1e-10) {
  detail::require_moment_safe(spec.kappa, "<f(p)>");
  return detail::integrate_against_density(
      [&](double p) { return std::log(deformation_f(p, spec.kappa, spec.zeta)); }, spec,
      rel_tol);
}

/// <x^2> = ||x psi||^2 by quadrature, using the symmetric position operator
/// x = i hbar (f d/dp + f'/2) and the analytic log-derivative
/// psi'/psi = -z p / s(p).
inline double quadrature_position_variance(const StateSpec& spec, double rel_tol = 1e-10) {
  detail::require_moment_safe(spec.kappa, "<x^2>");
  auto log_weight = [&](double p) {
    const double f = deformation_f(p, spec.kappa, spec.zeta);
    const double f1 = deformation_f_prime(p, spec.kappa, spec.zeta);
    const double s = deformation_root(p, spec.kappa, spec.zeta);
    const double amplitude = spec.hbar * (f * spec.zeta * p / s - 0.5 * f1);
    return 2.0 * std::log(std::abs(amplitude));
  };
  return detail::integrate_against_density(log_weight, spec, rel_tol);
}

/// Normalization recomputed as 1 / sqrt(integral of exp_k(-z p^2)).
inline double quadrature_normalization(const StateSpec& spec, double rel_tol = 1e-10) {
  detail::check_rel_tol(rel_tol);
  auto log_integrand = [&](double p) { return log_kappa_exp(-spec.zeta * p * p, spec.kappa); };
  const QuadratureResult r =
      integrate_real_line(log_integrand, detail::core_half_width(spec), rel_tol);
  return 1.0 / std::sqrt(r.value);
}

/// Least-squares slope of ln pdf against ln p over [1e2, 1e4] / sqrt(zeta).
/// Tends to -2/kappa.
inline double tail_exponent_estimate(const StateSpec& spec) {
  if (spec.kappa.classical()) {
    throw DomainError("tail exponent is undefined for the Gaussian (kappa = 0) state");
  }
  constexpr int kPoints = 200;
  const double lo = std::log(1e2 / std::sqrt(spec.zeta));
  const double hi = std::log(1e4 / std::sqrt(spec.zeta));
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double x = lo + (hi - lo) * i / (kPoints - 1);
    const double y = log_pdf(std::exp(x), spec);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = kPoints;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Closed-form and quadrature values side by side.
struct MomentReport {
  double norm_constant = 0.0;
  double second_moment = 0.0;
  double delta_p = 0.0;
  double delta_x = 0.0;
  double f_expect = 0.0;

  double norm_constant_quad = 0.0;
  double second_moment_quad = 0.0;
  double delta_p_quad = 0.0;
  double delta_x_quad = 0.0;
  double f_expect_quad = 0.0;

  /// max |closed - quadrature| / closed over the five pairs.
  double max_rel_discrepancy = 0.0;
};

inline MomentReport moment_report(const StateSpec& spec, double rel_tol = 1e-10) {
  MomentReport r;
  r.norm_constant = normalization_constant(spec);
  r.second_moment = second_moment(spec);
  r.delta_p = delta_p(spec);
  r.delta_x = delta_x(spec);
  r.f_expect = f_expectation(spec.kappa);

  r.norm_constant_quad = quadrature_normalization(spec, rel_tol);
  r.second_moment_quad = quadrature_moment(2, spec, rel_tol);
  r.delta_p_quad = std::sqrt(r.second_moment_quad);
  r.delta_x_quad = std::sqrt(quadrature_position_variance(spec, rel_tol));
  r.f_expect_quad = quadrature_f_expectation(spec, rel_tol);

  const std::pair<double, double> pairs[] = {{r.norm_constant, r.norm_constant_quad},
                                             {r.second_moment, r.second_moment_quad},
                                             {r.delta_p, r.delta_p_quad},
                                             {r.delta_x, r.delta_x_quad},
                                             {r.f_expect, r.f_expect_quad}};
  for (const auto& [closed, quad] : pairs) {
    r.max_rel_discrepancy = std::max(r.max_rel_discrepancy, std::abs(closed - quad) / closed);
  }
  return r;
}

}  // namespace kappa_rup
