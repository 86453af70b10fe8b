#pragma once

// The commutator deformation f(p) = sqrt(1 + k^2 z^2 p^4) + k^2 z p^2 and its
// analytic derivatives. Shared by the coherent-state moments and the
// operator/algebra checks.

#include <cmath>

#include "kappa_rup/kappa_math.hpp"

namespace kappa_rup {

/// s(p) = sqrt(1 + k^2 z^2 p^4).
inline double deformation_root(double p, KappaParameter kappa, double zeta) {
  const double k = kappa.value();
  return std::hypot(1.0, k * zeta * p * p);
}

/// f(p) = s(p) + k^2 z p^2. Even, and >= 1 with equality iff k p = 0.
inline double deformation_f(double p, KappaParameter kappa, double zeta) {
  const double k = kappa.value();
  return deformation_root(p, kappa, zeta) + k * k * zeta * p * p;
}

/// f'(p) = 2 k^2 z p (s + z p^2) / s.
inline double deformation_f_prime(double p, KappaParameter kappa, double zeta) {
  const double k = kappa.value();
  const double s = deformation_root(p, kappa, zeta);
  return 2.0 * k * k * zeta * p * (s + zeta * p * p) / s;
}

/// f''(p) = 2 k^2 z + 2 k^2 z^2 p^2 (3 + k^2 z^2 p^4) / s^3.
inline double deformation_f_second(double p, KappaParameter kappa, double zeta) {
  const double k = kappa.value();
  const double s = deformation_root(p, kappa, zeta);
  const double u2 = k * k * zeta * zeta * p * p * p * p;
  return 2.0 * k * k * zeta + 2.0 * k * k * zeta * zeta * p * p * (3.0 + u2) / (s * s * s);
}

}  // namespace kappa_rup
