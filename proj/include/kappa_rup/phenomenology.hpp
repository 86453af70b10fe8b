#pragma once

// Effective Planck constant, effective fine-structure constant and the
// resulting bound on kappa; plus the zeta fixings that compare the deformed
// uncertainty relation with other relativistic extensions.
//
// Every function here takes unit-tagged quantities (see units.hpp).

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "kappa_rup/errors.hpp"
#include "kappa_rup/kappa_math.hpp"
#include "kappa_rup/units.hpp"

namespace kappa_rup {

using units::Action;
using units::InverseMomentum;
using units::InverseMomentumSquared;
using units::Length;
using units::Mass;
using units::Momentum;
using units::Speed;

struct PhenoConfig {
  double alpha_inverse = 137.035999206;
  /// One standard deviation on alpha^-1, i.e. the "(11)" on its last digits.
  double alpha_inverse_uncertainty = 1.1e-8;
  /// 1/sqrt(zeta): typical electron momentum in the hydrogen ground state.
  Momentum characteristic_momentum = units::mev_per_c(3.7e-3);
  Action hbar = units::mev_fm_per_c(197.3269804);
  Speed c = units::fraction_of_c(1.0);
  Mass electron_mass = units::mev_per_c2(0.51099895);

  double alpha() const { return 1.0 / alpha_inverse; }
  /// delta alpha = alpha^2 delta(alpha^-1).
  double delta_alpha_exp() const {
    return alpha_inverse_uncertainty / (alpha_inverse * alpha_inverse);
  }
  InverseMomentumSquared zeta() const {
    return 1.0 / (characteristic_momentum * characteristic_momentum);
  }
  /// a0 = hbar / (characteristic momentum).
  Length bohr_radius() const { return hbar / characteristic_momentum; }

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string(name) + " must be positive and finite");
      }
    };
    positive(alpha_inverse, "alpha_inverse");
    positive(alpha_inverse_uncertainty, "alpha_inverse_uncertainty");
    positive(characteristic_momentum.value(), "characteristic_momentum");
    positive(hbar.value(), "hbar");
    positive(c.value(), "c");
    positive(electron_mass.value(), "electron_mass");
    if (!(alpha() < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  }
};

/// Reads the keys present in `j` over the defaults. Momenta are in MeV/c,
/// hbar in MeV fm / c, c in units of c, masses in MeV/c^2.
inline PhenoConfig pheno_config_from_json(const nlohmann::json& j) {
  PhenoConfig cfg;
  if (!j.is_object()) throw ConfigError("phenomenology config must be a JSON object");
  auto read = [&](const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(std::string(key) + " must be a number");
    return j.at(key).get<double>();
  };
  cfg.alpha_inverse = read("alpha_inverse", cfg.alpha_inverse);
  cfg.alpha_inverse_uncertainty = read("alpha_inverse_uncertainty", cfg.alpha_inverse_uncertainty);
  cfg.characteristic_momentum =
      Momentum(read("characteristic_momentum_mev", cfg.characteristic_momentum.value()));
  cfg.hbar = Action(read("hbar_mev_fm", cfg.hbar.value()));
  cfg.c = Speed(read("c", cfg.c.value()));
  cfg.electron_mass = Mass(read("electron_mass_mev", cfg.electron_mass.value()));
  cfg.validate();
  return cfg;
}

inline nlohmann::json to_json(const PhenoConfig& cfg) {
  return {{"alpha_inverse", cfg.alpha_inverse},
          {"alpha_inverse_uncertainty", cfg.alpha_inverse_uncertainty},
          {"characteristic_momentum_mev", cfg.characteristic_momentum.value()},
          {"hbar_mev_fm", cfg.hbar.value()},
          {"c", cfg.c.value()},
          {"electron_mass_mev", cfg.electron_mass.value()}};
}

/// hbar_eff = hbar (1 + k^2 z dp^2).
inline Action effective_hbar(Momentum dp, KappaParameter kappa, InverseMomentumSquared zeta,
                             Action hbar) {
  const double k = kappa.value();
  return hbar * (1.0 + k * k * (zeta * dp * dp));
}

/// dx = hbar k sqrt(zeta).
inline Length minimal_length(KappaParameter kappa, InverseMomentumSquared zeta, Action hbar) {
  return kappa.value() * (hbar * units::sqrt(zeta));
}

/// Heisenberg-connected root of dx dp = (hbar/2)(1 + k^2 z dp^2):
///   dp = (dx - sqrt(dx^2 - hbar^2 k^2 z)) / (hbar k^2 z)
///      = hbar / (dx + sqrt(dx^2 - hbar^2 k^2 z)).
inline Momentum delta_p_saturated(Length dx, KappaParameter kappa, InverseMomentumSquared zeta,
                                  Action hbar) {
  const Length floor = minimal_length(kappa, zeta, hbar);
  if (dx < floor) {
    throw DomainError("position spread " + std::to_string(dx.value()) +
                      " fm is below the minimal length " + std::to_string(floor.value()) + " fm");
  }
  const double ratio = floor / dx;
  const double root = std::sqrt((1.0 - ratio) * (1.0 + ratio));
  return hbar / (dx * (1.0 + root));
}

struct EffectiveAlpha {
  double alpha_eff = 0.0;
  /// alpha_eff - alpha (exact).
  double delta_alpha = 0.0;
  /// -alpha hbar^2 k^2 z / (4 a0^2).
  double delta_alpha_leading = 0.0;
};

/// alpha_eff = alpha (1 + sqrt(1 - hbar^2 k^2 z / a0^2)) / 2 from the
/// saturated relation with dx ~ a0.
inline EffectiveAlpha effective_alpha(Length a0, KappaParameter kappa,
                                      InverseMomentumSquared zeta, const PhenoConfig& config) {
  const Length floor = minimal_length(kappa, zeta, config.hbar);
  if (a0 < floor) throw DomainError("a0 is below the minimal length");
  const double alpha = config.alpha();
  const double x = (floor / a0) * (floor / a0);
  const double root = std::sqrt(1.0 - x);
  EffectiveAlpha out;
  out.delta_alpha = -alpha * x / (2.0 * (1.0 + root));
  out.alpha_eff = alpha + out.delta_alpha;
  out.delta_alpha_leading = -alpha * x / 4.0;
  return out;
}

struct KappaBound {
  InverseMomentum bound_on_kappa_sqrt_zeta;
  double bound_on_kappa = 0.0;
  double alpha = 0.0;
  double delta_alpha_exp = 0.0;
  Length bohr_radius;
};

/// Leading-order inversion of |delta alpha_k| < delta alpha_exp:
///   alpha hbar^2 k^2 z / (4 a0^2) < delta alpha
///   => k sqrt(z) < (2 a0 / hbar) sqrt(delta alpha / alpha),
/// then kappa = (k sqrt z) * (characteristic momentum).
inline KappaBound kappa_bound(const PhenoConfig& config) {
  config.validate();
  KappaBound out;
  out.alpha = config.alpha();
  out.delta_alpha_exp = config.delta_alpha_exp();
  out.bohr_radius = config.bohr_radius();
  out.bound_on_kappa_sqrt_zeta =
      2.0 * std::sqrt(out.delta_alpha_exp / out.alpha) * (out.bohr_radius / config.hbar);
  out.bound_on_kappa = out.bound_on_kappa_sqrt_zeta * config.characteristic_momentum;
  return out;
}

namespace detail {
inline Momentum rest_momentum(KappaParameter kappa, Mass m, Speed c) {
  if (!(kappa.value() > 0.0)) throw DomainError("zeta fixing requires kappa > 0");
  return kappa.value() * (m * c);
}
}  // namespace detail

/// zeta = 1 / (k m c)^2: the minimal length becomes the Compton wavelength.
inline InverseMomentumSquared landau_zeta(KappaParameter kappa, Mass m, Speed c) {
  const Momentum q = detail::rest_momentum(kappa, m, c);
  return 1.0 / (q * q);
}

/// zeta = 3 / (4 k^2 m^2 c^2), from matching 2 k^2 z dp^2 with
/// (3/2) dp^2 / (m c)^2.
inline InverseMomentumSquared gac_match_zeta(KappaParameter kappa, Mass m, Speed c) {
  return 0.75 * landau_zeta(kappa, m, c);
}

struct PutraBound {
  Action bound;
  Action expansion_first_order;
};

/// (hbar/2) gamma^2(v_g) and its first-order expansion (hbar/2)(1 + v^2/c^2).
inline PutraBound putra_bound(Speed v_g, Speed c, Action hbar) {
  const double beta = v_g / c;
  if (!(std::abs(beta) < 1.0)) throw DomainError("putra_bound requires |v_g| < c");
  const double beta2 = beta * beta;
  return {0.5 * hbar / ((1.0 - beta) * (1.0 + beta)), 0.5 * hbar * (1.0 + beta2)};
}

}  // namespace kappa_rup
