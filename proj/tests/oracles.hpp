#pragma once

// Reference solutions computed without the library's solvers.

#include <array>
#include <cmath>
#include <numeric>
#include <vector>

namespace oracles {

/// Boltzmann weights with beta found by bisection on the mean.
inline std::vector<double> gibbs(const std::vector<double>& e, double mean) {
  auto weights = [&](double beta) {
    std::vector<double> w(e.size());
    double z = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) z += (w[i] = std::exp(-beta * e[i]));
    for (double& x : w) x /= z;
    return w;
  };
  auto mean_at = [&](double beta) {
    const auto w = weights(beta);
    return std::inner_product(w.begin(), w.end(), e.begin(), 0.0);
  };
  double lo = -30.0, hi = 30.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mean_at(mid) > mean ? lo : hi) = mid;
  }
  return weights(0.5 * (lo + hi));
}

/// -sum n sinh(k ln n) / k.
inline double kappa_entropy(const std::array<double, 5>& n, double k) {
  double s = 0.0;
  for (double x : n) s -= x * std::sinh(k * std::log(x)) / k;
  return s;
}

/// Entropy maximizer for levels 0..4 with mean u by exhaustive search over
/// the feasible slice of the simplex (n3, n4 follow from n0, n1, n2):
/// a 0.01 grid over the whole slice, then two zoomed grids.
inline std::array<double, 5> simplex_search(double u, double k) {
  std::array<double, 5> best{};
  double best_s = -HUGE_VAL;
  auto consider = [&](double a, double b, double c) {
    const double r = 1.0 - a - b - c;
    const double q = u - b - 2.0 * c;
    const std::array<double, 5> n{a, b, c, 4.0 * r - q, q - 3.0 * r};
    for (double x : n) {
      if (!(x > 0.0)) return;
    }
    const double s = kappa_entropy(n, k);
    if (s > best_s) {
      best_s = s;
      best = n;
    }
  };
  double step = 0.01;
  std::array<double, 3> center{0.5, 0.5, 0.5};
  double half = 0.5;
  for (int level = 0; level < 3; ++level) {
    const int m = static_cast<int>(std::round(half / step));
    for (int i = -m; i <= m; ++i)
      for (int j = -m; j <= m; ++j)
        for (int l = -m; l <= m; ++l)
          consider(center[0] + i * step, center[1] + j * step, center[2] + l * step);
    center = {best[0], best[1], best[2]};
    half = 2.0 * step;
    step /= 10.0;
  }
  return best;
}

}  // namespace oracles
