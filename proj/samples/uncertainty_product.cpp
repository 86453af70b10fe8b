// Prints the saturated uncertainty product of the kappa-Gaussian for a few
// deformations, closed form next to quadrature, and the kappa bound that
// follows from the fine-structure constant.

#include <cstdio>

#include "kappa_rup/coherent_states.hpp"
#include "kappa_rup/phenomenology.hpp"

int main() {
  using namespace kappa_rup;

  std::printf("%-6s %-20s %-20s %-20s\n", "kappa", "dx*dp/(hbar/2)", "F closed", "F quadrature");
  for (double k : {0.0, 0.1, 0.2, 0.4, 0.6}) {
    const StateSpec spec(KappaParameter(k), 1.0);
    const double product = delta_x(spec) * delta_p(spec) / 0.5;
    std::printf("%-6.2f %-20.15f %-20.15f %-20.15f\n", k, product, f_expectation(spec.kappa),
                quadrature_f_expectation(spec));
  }

  const KappaBound bound = kappa_bound(PhenoConfig{});
  std::printf("\nkappa sqrt(zeta) < %.3e (MeV/c)^-1\n", bound.bound_on_kappa_sqrt_zeta.value());
  std::printf("kappa             < %.3e\n", bound.bound_on_kappa);
}
