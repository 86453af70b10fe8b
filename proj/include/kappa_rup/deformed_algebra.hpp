#pragma once

// Deformed Heisenberg algebra [x, p] = i hbar f(p) in momentum space.
//
// Operator orderings are labeled by A in [0, 1]:
//   x_A = i hbar [f d/dp + A f'] = i hbar f^(1-A) d/dp f^A,
// with A = 0, 1/2, 1 giving x1, x3 (symmetric), x2. Grid operators use a
// five-point fourth-order derivative, one-sided at the two outermost points
// on each side.

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kappa_rup/coherent_states.hpp"
#include "kappa_rup/deformation.hpp"
#include "kappa_rup/errors.hpp"
#include "kappa_rup/kappa_math.hpp"

namespace kappa_rup {

using Complex = std::complex<double>;

class OrderingParameter {
 public:
  constexpr OrderingParameter() = default;
  explicit OrderingParameter(double a) : a_(a) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw DomainError("ordering parameter A must lie in [0, 1], got " + std::to_string(a));
    }
  }

  /// x1 = i hbar f d/dp.
  static OrderingParameter left() { return OrderingParameter(0.0); }
  /// x3 = i hbar [f d/dp + f'/2], symmetric under the unit measure.
  static OrderingParameter symmetric() { return OrderingParameter(0.5); }
  /// x2 = i hbar [f d/dp + f'].
  static OrderingParameter right() { return OrderingParameter(1.0); }

  constexpr double value() const noexcept { return a_; }

 private:
  double a_ = 0.5;
};

/// Uniform grid [p_min, p_max] with n_points complex samples.
class GridFunction {
 public:
  static constexpr std::size_t kMinPoints = 16;

  GridFunction(double p_min, double p_max, std::vector<Complex> samples)
      : p_min_(p_min), p_max_(p_max), samples_(std::move(samples)) {
    if (samples_.size() < kMinPoints) {
      throw DomainError("grid needs at least 16 points, got " + std::to_string(samples_.size()));
    }
    if (!(p_max > p_min) || !std::isfinite(p_min) || !std::isfinite(p_max)) {
      throw DomainError("grid requires finite p_min < p_max");
    }
    for (const Complex& z : samples_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("grid samples must be finite");
      }
    }
  }

  /// Samples `fn` at the n grid points.
  template <class Fn>
  static GridFunction sample(double p_min, double p_max, std::size_t n, Fn&& fn) {
    std::vector<Complex> values(n);
    const double h = n > 1 ? (p_max - p_min) / static_cast<double>(n - 1) : 0.0;
    for (std::size_t i = 0; i < n; ++i) values[i] = fn(p_min + h * static_cast<double>(i));
    return GridFunction(p_min, p_max, std::move(values));
  }

  double p_min() const noexcept { return p_min_; }
  double p_max() const noexcept { return p_max_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double spacing() const noexcept {
    return (p_max_ - p_min_) / static_cast<double>(samples_.size() - 1);
  }
  double point(std::size_t i) const noexcept {
    return p_min_ + spacing() * static_cast<double>(i);
  }
  std::span<const Complex> samples() const noexcept { return samples_; }
  const Complex& operator[](std::size_t i) const noexcept { return samples_[i]; }

  bool same_grid(const GridFunction& other) const noexcept {
    return p_min_ == other.p_min_ && p_max_ == other.p_max_ && size() == other.size();
  }

 private:
  double p_min_;
  double p_max_;
  std::vector<Complex> samples_;
};

// ---------------------------------------------------------------------------
// Pointwise quantities

/// Two-parameter family of minimum-uncertainty deformations: dx f(p) / (hbar z (1 - k^2) dp) + c1 exp_k(z p^2).
inline double deformation_general(double p, KappaParameter kappa, double zeta, double dx,
                                  double dp, double hbar, double c1) {
  if (!(dp > 0.0)) throw DomainError("deformation_general requires dp > 0");
  const double k = kappa.value();
  return dx * deformation_f(p, kappa, zeta) / (hbar * zeta * (1.0 - k * k) * dp) +
         c1 * kappa_exp(zeta * p * p, kappa);
}

/// Robertson lower bound (hbar/2) <f> on dx dp.
inline double robertson_bound(double f_mean, double hbar) {
  if (!(f_mean >= 1.0)) {
    throw DomainError("robertson_bound requires <f> >= 1, got " + std::to_string(f_mean));
  }
  return 0.5 * hbar * f_mean;
}

/// Smallest position spread allowed by dx dp >= (hbar/2)(1 + k^2 z dp^2).
inline double minimal_length(KappaParameter kappa, double zeta, double hbar) {
  return hbar * kappa.value() * std::sqrt(zeta);
}

/// Leading-order commutator factor 1 + k^2 z p^2, valid for z p^2 << 1.
inline double approx_commutator_factor(double p, KappaParameter kappa, double zeta) {
  const double k = kappa.value();
  return 1.0 + k * k * zeta * p * p;
}

/// Momentum-space measure g(p) = f^(2A-1) making x_A symmetric; g(0) = 1.
inline double ordering_weight(double p, OrderingParameter a, KappaParameter kappa,
                              double zeta) {
  return std::pow(deformation_f(p, kappa, zeta), 2.0 * a.value() - 1.0);
}

/// phi^(to) = f^(A_from - A_to) phi^(from).
inline GridFunction convert_ordering(const GridFunction& phi, OrderingParameter from,
                                     OrderingParameter to, KappaParameter kappa, double zeta) {
  const double exponent = from.value() - to.value();
  std::vector<Complex> out(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    out[i] = phi[i] * std::pow(deformation_f(phi.point(i), kappa, zeta), exponent);
  }
  return GridFunction(phi.p_min(), phi.p_max(), std::move(out));
}

// ---------------------------------------------------------------------------
// Grid operators

/// Fourth-order first derivative on a uniform grid.
inline std::vector<Complex> differentiate(std::span<const Complex> y, double h) {
  const std::size_t n = y.size();
  if (n < 5) throw DomainError("fourth-order stencil needs at least 5 points");
  std::vector<Complex> d(n);
  const double c = 1.0 / (12.0 * h);
  d[0] = c * (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]);
  d[1] = c * (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = c * (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]);
  }
  d[n - 2] = -c * (-3.0 * y[n - 1] - 10.0 * y[n - 2] + 18.0 * y[n - 3] - 6.0 * y[n - 4] + y[n - 5]);
  d[n - 1] =
      -c * (-25.0 * y[n - 1] + 48.0 * y[n - 2] - 36.0 * y[n - 3] + 16.0 * y[n - 4] - 3.0 * y[n - 5]);
  return d;
}

/// x_A psi = i hbar [f psi' + A f' psi] on the grid of psi.
inline GridFunction apply_position_operator(const GridFunction& psi, OrderingParameter a,
                                            KappaParameter kappa, double zeta, double hbar) {
  const std::vector<Complex> d = differentiate(psi.samples(), psi.spacing());
  const Complex i_hbar(0.0, hbar);
  std::vector<Complex> out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double p = psi.point(i);
    out[i] = i_hbar * (deformation_f(p, kappa, zeta) * d[i] +
                       a.value() * deformation_f_prime(p, kappa, zeta) * psi[i]);
  }
  return GridFunction(psi.p_min(), psi.p_max(), std::move(out));
}

/// Multiplication by p.
inline GridFunction apply_momentum_operator(const GridFunction& psi) {
  std::vector<Complex> out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) out[i] = psi.point(i) * psi[i];
  return GridFunction(psi.p_min(), psi.p_max(), std::move(out));
}

/// Riemann-sum inner product <u, w v> with optional real weight w(p).
inline Complex inner_product(const GridFunction& u, const GridFunction& v,
                             const std::function<double(double)>& weight = {}) {
  if (!u.same_grid(v)) throw DomainError("inner product requires identical grids");
  Complex sum(0.0, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double w = weight ? weight(u.point(i)) : 1.0;
    sum += w * std::conj(u[i]) * v[i];
  }
  return sum * u.spacing();
}

inline double l2_norm(const GridFunction& u) { return std::sqrt(inner_product(u, u).real()); }

/// Shape of a uniform momentum grid, without samples.
struct GridShape {
  double p_min = -1.0;
  double p_max = 1.0;
  std::size_t n_points = 0;
};

/// ||(x/dx + i p/dp) psi|| / ||psi|| for the kappa-Gaussian of `spec`, with
/// x the symmetric operator and dx, dp the closed-form uncertainties.
/// `dp_scale` multiplies dp (1 for the true state); any other value gives a
/// residual that does not vanish under refinement.
inline double annihilation_residual(const StateSpec& spec, const GridShape& grid,
                                    double dp_scale = 1.0) {
  const double reach = 8.0 / std::sqrt(spec.zeta);
  if (grid.p_min > -reach || grid.p_max < reach) {
    throw DomainError("annihilation grid must cover [-8/sqrt(zeta), 8/sqrt(zeta)]");
  }
  const GridFunction state = GridFunction::sample(
      grid.p_min, grid.p_max, grid.n_points, [&](double p) { return Complex(psi(p, spec)); });
  const double dx = delta_x(spec);
  const double dp = delta_p(spec) * dp_scale;
  const GridFunction x_psi = apply_position_operator(state, OrderingParameter::symmetric(),
                                                     spec.kappa, spec.zeta, spec.hbar);
  std::vector<Complex> r(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    r[i] = x_psi[i] / dx + Complex(0.0, state.point(i) / dp) * state[i];
  }
  return l2_norm(GridFunction(grid.p_min, grid.p_max, std::move(r))) / l2_norm(state);
}

/// ||[x, p] psi - i hbar f psi|| / ||i hbar f psi|| with x the symmetric
/// operator. An operator identity, so it vanishes under refinement for any
/// smooth decaying psi.
inline double commutator_residual(const GridFunction& psi, KappaParameter kappa, double zeta,
                                  double hbar) {
  const auto sym = OrderingParameter::symmetric();
  const GridFunction xp = apply_position_operator(apply_momentum_operator(psi), sym, kappa,
                                                  zeta, hbar);
  const GridFunction px = apply_momentum_operator(apply_position_operator(psi, sym, kappa,
                                                                          zeta, hbar));
  std::vector<Complex> r(psi.size());
  std::vector<Complex> target(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    target[i] = Complex(0.0, hbar * deformation_f(psi.point(i), kappa, zeta)) * psi[i];
    r[i] = xp[i] - px[i] - target[i];
  }
  return l2_norm(GridFunction(psi.p_min(), psi.p_max(), std::move(r))) /
         l2_norm(GridFunction(psi.p_min(), psi.p_max(), std::move(target)));
}

/// Measure used when testing symmetry of x_A.
enum class SymmetryMeasure {
  unit,      ///< dp
  ordering,  ///< f^(2A-1) dp
};

/// |<u, x_A v>_g - <x_A u, v>_g| for the chosen measure g.
inline double symmetry_defect(const GridFunction& u, const GridFunction& v, OrderingParameter a,
                              KappaParameter kappa, double zeta, double hbar,
                              SymmetryMeasure measure) {
  std::function<double(double)> weight;
  if (measure == SymmetryMeasure::ordering) {
    weight = [=](double p) { return ordering_weight(p, a, kappa, zeta); };
  }
  const GridFunction xu = apply_position_operator(u, a, kappa, zeta, hbar);
  const GridFunction xv = apply_position_operator(v, a, kappa, zeta, hbar);
  return std::abs(inner_product(u, xv, weight) - inner_product(xu, v, weight));
}

// ---------------------------------------------------------------------------
// Minimum-uncertainty ODE

/// A trial deformation with its first two derivatives.
struct DeformationProfile {
  std::function<double(double)> value;
  std::function<double(double)> first;
  std::function<double(double)> second;

  /// f from the deformed commutator.
  static DeformationProfile canonical(KappaParameter kappa, double zeta) {
    return {[=](double p) { return deformation_f(p, kappa, zeta); },
            [=](double p) { return deformation_f_prime(p, kappa, zeta); },
            [=](double p) { return deformation_f_second(p, kappa, zeta); }};
  }

  /// Two-parameter solution family: ratio * f(p) + c1 exp_k(z p^2), where
  /// ratio = dx / (hbar z (1 - k^2) dp).
  static DeformationProfile general(KappaParameter kappa, double zeta, double dx, double dp,
                                    double hbar, double c1) {
    const double k = kappa.value();
    const double ratio = dx / (hbar * zeta * (1.0 - k * k) * dp);
    // d/dp exp_k(z p^2) = exp_k(z p^2) * 2 z p / s.
    auto e = [=](double p) { return kappa_exp(zeta * p * p, kappa); };
    return {
        [=](double p) { return ratio * deformation_f(p, kappa, zeta) + c1 * e(p); },
        [=](double p) {
          const double s = deformation_root(p, kappa, zeta);
          return ratio * deformation_f_prime(p, kappa, zeta) + c1 * e(p) * 2.0 * zeta * p / s;
        },
        [=](double p) {
          const double s = deformation_root(p, kappa, zeta);
          const double g = 2.0 * zeta * p / s;
          const double g1 = 2.0 * zeta / s - 4.0 * k * k * zeta * zeta * zeta * p * p * p * p /
                                                 (s * s * s);
          return ratio * deformation_f_second(p, kappa, zeta) + c1 * e(p) * (g * g + g1);
        }};
  }

  /// f = 1, the undeformed algebra.
  static DeformationProfile unit() {
    return {[](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
  }
};

struct OdeResidual {
  double raw = 0.0;
  /// Largest absolute individual term at this p.
  double scale = 0.0;
  /// raw / scale (0 when every term vanishes).
  double normalized = 0.0;
};

/// Left-hand side of the momentum-space minimum-uncertainty equation for the
/// symmetric ordering, evaluated on a trial deformation:
///
///   4 hbar^2 z [1 - p^2 z (k^2 p^2 z + s)] dp^2 f^2
///   + s^3 (4 p^2 dx^2 - hbar^2 dp^2 f'^2)
///   + 2 hbar s^2 dp f [4 hbar p z dp f' - s (2 dx + hbar dp f'')]
inline OdeResidual ode_residual(double p, KappaParameter kappa, double zeta, double dx,
                                double dp, double hbar, const DeformationProfile& profile) {
  const double k = kappa.value();
  const double s = deformation_root(p, kappa, zeta);
  const double f = profile.value(p);
  const double f1 = profile.first(p);
  const double f2 = profile.second(p);

  const double t1 =
      4.0 * hbar * hbar * zeta * (1.0 - p * p * zeta * (k * k * p * p * zeta + s)) * dp * dp * f * f;
  const double t2a = s * s * s * 4.0 * p * p * dx * dx;
  const double t2b = -s * s * s * hbar * hbar * dp * dp * f1 * f1;
  const double t3a = 2.0 * hbar * s * s * dp * f * 4.0 * hbar * p * zeta * dp * f1;
  const double t3b = -2.0 * hbar * s * s * s * dp * f * 2.0 * dx;
  const double t3c = -2.0 * hbar * s * s * s * dp * f * hbar * dp * f2;

  OdeResidual r;
  r.raw = t1 + t2a + t2b + t3a + t3b + t3c;
  for (double t : {t1, t2a, t2b, t3a, t3b, t3c}) r.scale = std::max(r.scale, std::abs(t));
  r.normalized = r.scale > 0.0 ? r.raw / r.scale : 0.0;
  return r;
}

/// Residual with f from the deformed commutator.
inline OdeResidual ode_residual(double p, KappaParameter kappa, double zeta, double dx,
                                double dp, double hbar) {
  return ode_residual(p, kappa, zeta, dx, dp, hbar, DeformationProfile::canonical(kappa, zeta));
}

}  // namespace kappa_rup
