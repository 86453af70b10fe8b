#pragma once

// Auxiliary kappa-kinematics and the scaling map to physical quantities:
//   v / u = p / (m p~) = sqrt(E / (m eps)) = kappa c.
// The kappa dependence cancels, leaving p = gamma m v and E = gamma m c^2.

#include <cmath>
#include <string>

#include "kappa_rup/errors.hpp"
#include "kappa_rup/kappa_math.hpp"

namespace kappa_rup {

namespace detail {
inline double require_positive_kappa(KappaParameter kappa) {
  if (!(kappa.value() > 0.0)) throw DomainError("kinematic map requires kappa > 0");
  return kappa.value();
}
}  // namespace detail

/// u = p~ / sqrt(1 + k^2 p~^2); |u| < 1/k.
inline double aux_velocity(double p_tilde, KappaParameter kappa) {
  const double k = detail::require_positive_kappa(kappa);
  return p_tilde / std::hypot(1.0, k * p_tilde);
}

/// W~ = (sqrt(1 + k^2 p~^2) - 1) / k^2, written without the subtraction.
inline double aux_kinetic(double p_tilde, KappaParameter kappa) {
  const double k = detail::require_positive_kappa(kappa);
  return p_tilde * p_tilde / (std::hypot(1.0, k * p_tilde) + 1.0);
}

/// eps = sqrt(1 + k^2 p~^2) / k^2.
inline double aux_energy(double p_tilde, KappaParameter kappa) {
  const double k = detail::require_positive_kappa(kappa);
  return std::hypot(1.0, k * p_tilde) / (k * k);
}

/// Rest mass, light speed and deformation fixing v* = kappa c.
struct ParticleFrame {
  double mass = 1.0;
  double c = 1.0;
  KappaParameter kappa;

  ParticleFrame(double mass_, double c_, KappaParameter kappa_)
      : mass(mass_), c(c_), kappa(kappa_) {
    if (!(mass > 0.0)) throw DomainError("particle mass must be positive");
    if (!(c > 0.0)) throw DomainError("speed of light must be positive");
    detail::require_positive_kappa(kappa);
  }

  double characteristic_velocity() const noexcept { return kappa.value() * c; }
};

struct PhysicalKinematics {
  double momentum = 0.0;
  double energy = 0.0;
  double kinetic_energy = 0.0;
};

/// Physical p, E and W = E - m c^2 for speed v, routed through the
/// auxiliary variables: u = v / v*, p~ = u / sqrt(1 - k^2 u^2).
inline PhysicalKinematics physical_map(const ParticleFrame& frame, double v) {
  if (!(std::abs(v) < frame.c)) {
    throw DomainError("physical_map requires |v| < c, got v = " + std::to_string(v));
  }
  const double k = frame.kappa.value();
  const double v_star = frame.characteristic_velocity();
  const double u = v / v_star;
  const double ku = k * u;
  const double p_tilde = u / std::sqrt((1.0 - ku) * (1.0 + ku));

  PhysicalKinematics out;
  out.momentum = frame.mass * p_tilde * v_star;
  out.energy = frame.mass * aux_energy(p_tilde, frame.kappa) * v_star * v_star;
  out.kinetic_energy = frame.mass * aux_kinetic(p_tilde, frame.kappa) * v_star * v_star;
  return out;
}

}  // namespace kappa_rup
