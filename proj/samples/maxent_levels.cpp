// Maximum-entropy populations of a five-level system for several kappa,
// with the best A exp_k(-b E) fit to each.

#include <cstdio>
#include <vector>

#include "kappa_rup/maxent.hpp"

int main() {
  using namespace kappa_rup;

  const std::vector<double> energies{0.0, 1.0, 2.0, 3.0, 4.0};
  for (double k : {0.0, 0.2, 0.5, 0.8}) {
    const MaxEntProblem problem{energies, 1.2, KappaParameter(k)};
    const MaxEntSolution sol = maxent_solve(problem);
    const KappaExponentialFit fit = fit_kappa_exponential(sol, energies, problem.kappa);
    std::printf("kappa=%.1f  n =", k);
    for (double n : sol.distribution) std::printf(" %.6f", n);
    std::printf("  S=%.6f  fit residual=%.2e\n", sol.entropy, fit.max_residual);
  }
}
