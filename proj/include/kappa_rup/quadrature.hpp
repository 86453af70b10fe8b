#pragma once

// Real-line quadrature for smooth integrands with algebraic tails.
//
// The line is split at +-core_half_width: the core goes to adaptive
// Gauss-Kronrod, each tail is mapped onto (0, 1] by p = P / t and handed to
// tanh-sinh, which tolerates the integrable endpoint singularity that a
// slowly decaying power law produces at t = 0. Beyond |p| = 1e100 the
// integrand is treated as a pure power law and integrated in closed form.

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "kappa_rup/errors.hpp"

namespace kappa_rup {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

namespace detail {

// Past this |p| the integrand is replaced by its power-law asymptote.
inline constexpr double kQuadratureCutoff = 1e100;

template <class LogIntegrand>
double exp_or_zero(LogIntegrand& log_integrand, double p) {
  if (!std::isfinite(p) || std::abs(p) > kQuadratureCutoff) return 0.0;
  const double log_value = log_integrand(p);
  if (std::isnan(log_value)) return 0.0;
  return std::exp(log_value);
}

}  // namespace detail

/// Integrates exp(log_integrand(p)) over the whole real line.
///
/// The integrand is supplied in log form so that far-tail evaluations
/// (p^k times a density ~1e-300) never produce inf * 0.
template <class LogIntegrand>
QuadratureResult integrate_real_line(LogIntegrand log_integrand, double core_half_width,
                                     double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  using boost::math::quadrature::tanh_sinh;

  const double P = core_half_width;
  auto integrand = [&](double p) { return detail::exp_or_zero(log_integrand, p); };

  double core_error = 0.0;
  const double core =
      gauss_kronrod<double, 31>::integrate(integrand, -P, P, 25, rel_tol * 1e-2, &core_error);

  tanh_sinh<double> tail_rule(15);
  auto tail = [&](double sign) {
    auto mapped = [&](double t) -> double {
      if (t <= 0.0) return 0.0;
      const double p = sign * P / t;
      if (!std::isfinite(p) || std::abs(p) > detail::kQuadratureCutoff) return 0.0;
      const double log_value = log_integrand(p) + std::log(P) - 2.0 * std::log(t);
      return std::isnan(log_value) ? 0.0 : std::exp(log_value);
    };
    double err = 0.0;
    const double v = tail_rule.integrate(mapped, 0.0, 1.0, rel_tol * 1e-2, &err);
    // Remainder past the cutoff R: g(p) ~ g(R) (p/R)^-s integrates to
    // g(R) R / (s - 1).
    const double r = sign * detail::kQuadratureCutoff;
    const double log_g = log_integrand(r);
    double remainder = 0.0;
    if (std::isfinite(log_g)) {
      const double slope = (log_g - log_integrand(2.0 * r)) / std::log(2.0);
      remainder = slope > 1.0 ? std::exp(log_g + std::log(std::abs(r)) - std::log(slope - 1.0))
                              : HUGE_VAL;
    }
    return QuadratureResult{v + remainder, err};
  };
  const QuadratureResult right = tail(1.0);
  const QuadratureResult left = tail(-1.0);

  QuadratureResult total;
  total.value = core + right.value + left.value;
  total.error_estimate = core_error + right.error_estimate + left.error_estimate;
  return total;
}

}  // namespace kappa_rup
