#pragma once

// Maximum-entropy distributions for the Kaniadakis entropy
//
//   S_k = -sum_i n_i ln_k(n_i)
//
// subject to normalization and a fixed mean energy.
//
// Stationarity of S_k - a (sum n - 1) - b (sum n E - U) reads
//   h'(n_i) = -(a + b E_i),   h(n) = n ln_k(n),
//   h'(n)   = [(1 + k) n^k - (1 - k) n^-k] / (2k),
// which is strictly increasing in n and inverts in closed form (a quadratic
// in n^k). The solver runs damped Newton on the two multipliers.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "kappa_rup/errors.hpp"
#include "kappa_rup/kappa_math.hpp"

namespace kappa_rup {

struct MaxEntProblem {
  std::vector<double> energies;
  double mean_energy = 0.0;
  KappaParameter kappa;

  /// Throws DomainError unless there are >= 2 finite levels and the mean
  /// lies strictly between the smallest and largest energy.
  void validate() const {
    if (energies.size() < 2) throw DomainError("MaxEnt problem needs at least two levels");
    for (double e : energies) {
      if (!std::isfinite(e)) throw DomainError("energies must be finite");
    }
    const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());
    if (!(mean_energy > *lo && mean_energy < *hi)) {
      throw DomainError("mean energy " + std::to_string(mean_energy) +
                        " is not attainable: it must lie strictly between " +
                        std::to_string(*lo) + " and " + std::to_string(*hi));
    }
  }
};

struct MaxEntSolution {
  std::vector<double> distribution;
  double normalization_multiplier = 0.0;
  double energy_multiplier = 0.0;
  double entropy = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  /// T from 1/b = sqrt(1 - k^2) T; metadata only, +inf when b = 0.
  double temperature = 0.0;
};

/// S_k = -sum n ln_k n; Shannon entropy at kappa = 0.
inline double kaniadakis_entropy(const std::vector<double>& n, KappaParameter kappa) {
  double total = 0.0;
  for (double x : n) {
    if (!(x > 0.0)) throw DomainError("entropy requires strictly positive probabilities");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError("entropy requires a normalized distribution (sum = " +
                      std::to_string(total) + ")");
  }
  double s = 0.0;
  for (double x : n) s -= x * kappa_log(x, kappa);
  return s;
}

namespace detail {

// h'(n) for the kappa-entropy integrand.
inline double entropy_gradient(double n, KappaParameter kappa) {
  const double k = kappa.value();
  if (kappa.classical()) return std::log(n) + 1.0;
  const double nk = std::pow(n, k);
  return ((1.0 + k) * nk - (1.0 - k) / nk) / (2.0 * k);
}

// Inverse of h': the unique n > 0 with h'(n) = t.
inline double invert_entropy_gradient(double t, KappaParameter kappa) {
  const double k = kappa.value();
  if (kappa.classical()) return std::exp(t - 1.0);
  // (1 + k) x^2 - 2 k t x - (1 - k) = 0 for x = n^k; positive root, with the
  // conjugate form for t < 0 to avoid cancellation.
  const double root = std::sqrt(k * k * t * t + (1.0 - k * k));
  const double x = t >= 0.0 ? (k * t + root) / (1.0 + k) : (1.0 - k) / (root - k * t);
  return std::exp(std::log(x) / k);
}

// dn/dt = 1 / h''(n).
inline double inverse_curvature(double n, KappaParameter kappa) {
  const double k = kappa.value();
  if (kappa.classical()) return n;
  const double nk = std::pow(n, k);
  return 2.0 * n / ((1.0 + k) * nk + (1.0 - k) / nk);
}

}  // namespace detail

/// Entropy maximizer under normalization and mean-energy constraints.
///
/// Energies are shifted by the target mean internally so the iteration is
/// invariant under uniform energy shifts; the reported normalization
/// multiplier refers to the original energies.
inline MaxEntSolution maxent_solve(const MaxEntProblem& problem, double tol = 1e-12,
                                   int max_iterations = 200) {
  problem.validate();
  if (!(tol >= 1e-12 && tol <= 1e-4)) throw DomainError("tol must lie in [1e-12, 1e-4]");

  const KappaParameter kappa = problem.kappa;
  const std::size_t w = problem.energies.size();
  std::vector<double> e(w);
  double spread = 0.0;
  for (std::size_t i = 0; i < w; ++i) {
    e[i] = problem.energies[i] - problem.mean_energy;
    spread = std::max(spread, std::abs(e[i]));
  }

  std::vector<double> n(w);
  auto distribution_at = [&](double a, double b) {
    for (std::size_t i = 0; i < w; ++i) {
      n[i] = detail::invert_entropy_gradient(-(a + b * e[i]), kappa);
    }
  };
  auto constraint_residual = [&](double& g0, double& g1) {
    g0 = -1.0;
    g1 = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
      g0 += n[i];
      g1 += n[i] * e[i];
    }
    g1 /= spread;
    return std::hypot(g0, g1);
  };

  // Start from the uniform distribution (b = 0).
  double a = -detail::entropy_gradient(1.0 / static_cast<double>(w), kappa);
  double b = 0.0;
  distribution_at(a, b);
  double g0 = 0.0, g1 = 0.0;
  double merit = constraint_residual(g0, g1);

  // Newton runs to rounding level; `tol` only gates acceptance.
  const double target = 1e-15;
  int iter = 0;
  while (merit > target && iter < max_iterations) {
    ++iter;
    // Jacobian of (g0, g1) in (a, b) is -[[S0, S1], [S1, S2]] (g1 row scaled).
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
      const double q = detail::inverse_curvature(n[i], kappa);
      s0 += q;
      s1 += q * e[i];
      s2 += q * e[i] * e[i];
    }
    const double det = s0 * s2 - s1 * s1;
    if (!(det > 0.0)) break;
    // Solve [[S0, S1], [S1, S2]] (da, db) = (g0, g1 * spread).
    const double r1 = g1 * spread;
    const double da = (s2 * g0 - s1 * r1) / det;
    const double db = (s0 * r1 - s1 * g0) / det;

    double step = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 60; ++ls) {
      distribution_at(a + step * da, b + step * db);
      double t0 = 0.0, t1 = 0.0;
      const double trial = constraint_residual(t0, t1);
      if (std::isfinite(trial) && trial < merit) {
        a += step * da;
        b += step * db;
        g0 = t0;
        g1 = t1;
        merit = trial;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      distribution_at(a, b);
      break;
    }
  }

  MaxEntSolution sol;
  sol.iterations = iter;
  sol.distribution = n;
  sol.energy_multiplier = b;
  sol.normalization_multiplier = a - b * problem.mean_energy;

  double stationarity = 0.0;
  for (std::size_t i = 0; i < w; ++i) {
    const double lhs = detail::entropy_gradient(n[i], kappa);
    stationarity = std::max(stationarity, std::abs(lhs + a + b * e[i]) / std::max(1.0, std::abs(lhs)));
  }
  sol.kkt_residual = std::max({std::abs(g0), std::abs(g1), stationarity});
  if (!(sol.kkt_residual < tol)) {
    throw ConvergenceError("maxent_solve did not converge: KKT residual " +
                           std::to_string(sol.kkt_residual) + " after " + std::to_string(iter) +
                           " iterations");
  }
  sol.entropy = kaniadakis_entropy(n, kappa);
  const double k = kappa.value();
  sol.temperature = b == 0.0 ? HUGE_VAL : 1.0 / (b * std::sqrt(1.0 - k * k));
  return sol;
}

struct KappaExponentialFit {
  double amplitude = 0.0;
  double beta_fit = 0.0;
  /// max_i |A exp_k(-b E_i) - n_i| / n_i
  double max_residual = 0.0;
};

/// Least-squares fit of ln n_i to ln A + ln exp_k(-b E_i).
///
/// ln A enters linearly and is profiled out; the remaining one-dimensional
/// problem in b is scanned on a geometric grid around the kappa = 0
/// log-linear slope and polished with Brent's method.
inline KappaExponentialFit fit_kappa_exponential(const MaxEntSolution& solution,
                                                 const std::vector<double>& energies,
                                                 KappaParameter kappa) {
  const std::vector<double>& n = solution.distribution;
  if (n.size() != energies.size() || n.size() < 2) {
    throw DomainError("fit requires one probability per energy level");
  }
  const std::size_t m = n.size();
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = std::log(n[i]);

  const double e_mean = std::accumulate(energies.begin(), energies.end(), 0.0) / m;
  const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxy += (energies[i] - e_mean) * (y[i] - y_mean);
    sxx += (energies[i] - e_mean) * (energies[i] - e_mean);
  }
  const double seed = sxx > 0.0 ? -sxy / sxx : 0.0;

  auto profiled_log_a = [&](double b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += y[i] - log_kappa_exp(-b * energies[i], kappa);
    return sum / static_cast<double>(m);
  };
  auto objective = [&](double b) {
    const double log_a = profiled_log_a(b);
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = y[i] - log_a - log_kappa_exp(-b * energies[i], kappa);
      sum += r * r;
    }
    return sum;
  };

  double best_b = seed;
  if (!kappa.classical() && seed != 0.0) {
    // Candidates seed * 2^(j/8), j in [-64, 64]: brackets the optimum within
    // a factor 2^(1/8) before polishing.
    std::vector<double> grid;
    for (int j = -64; j <= 64; ++j) grid.push_back(seed * std::exp2(j / 8.0));
    std::size_t best = 0;
    for (std::size_t j = 1; j < grid.size(); ++j) {
      if (objective(grid[j]) < objective(grid[best])) best = j;
    }
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[best + 1 == grid.size() ? best : best + 1];
    const auto [b_min, f_min] = boost::math::tools::brent_find_minima(
        objective, std::min(lo, hi), std::max(lo, hi), std::numeric_limits<double>::digits);
    best_b = f_min <= objective(grid[best]) ? b_min : grid[best];
  }

  KappaExponentialFit fit;
  const double log_a = profiled_log_a(best_b);
  fit.amplitude = std::exp(log_a);
  fit.beta_fit = best_b;
  for (std::size_t i = 0; i < m; ++i) {
    const double predicted = std::exp(log_a + log_kappa_exp(-best_b * energies[i], kappa));
    fit.max_residual = std::max(fit.max_residual, std::abs(predicted - n[i]) / n[i]);
  }
  return fit;
}

}  // namespace kappa_rup
