#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "kappa_rup/coherent_states.hpp"

using namespace kappa_rup;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

namespace {

// mpmath quadrature at 30 digits, independent of the closed forms.
struct Oracle {
  double kappa;
  double zeta;
  double n;
  double p2;
  double f;
  double dx;
};

constexpr Oracle kOracles[] = {
    {0.2, 1.0, 0.74644854813009727276, 0.54130594985267229467, 1.0393074237171308058,
     0.70630557366073700464},
    {0.4, 2.0, 0.87117543493857254175, 0.36815538909255389513, 1.2370021073509810876,
     1.0193536040917421084},
    {0.3, 1.0, 0.74064261237471560092, 0.60632740814440699828, 1.1035158828228207369,
     0.70858995666350185384},
};

}  // namespace

TEST_CASE("closed forms against an independent quadrature oracle", "[coherent_states][oracle]") {
  for (const auto& o : kOracles) {
    INFO("kappa = " << o.kappa << ", zeta = " << o.zeta);
    const StateSpec spec(KappaParameter(o.kappa), o.zeta);
    CHECK_THAT(normalization_constant(spec), WithinRel(o.n, 1e-13));
    CHECK_THAT(second_moment(spec), WithinRel(o.p2, 1e-13));
    CHECK_THAT(f_expectation(spec.kappa), WithinRel(o.f, 1e-13));
    CHECK_THAT(delta_x(spec), WithinRel(o.dx, 1e-13));
  }
}

TEST_CASE("Gaussian limit", "[coherent_states]") {
  const StateSpec spec(KappaParameter(0.0), 1.0);
  CHECK_THAT(normalization_constant(spec), WithinRel(std::pow(std::numbers::pi, -0.25), 1e-15));
  CHECK(second_moment(spec) == 0.5);
  CHECK_THAT(delta_p(spec), WithinRel(std::sqrt(0.5), 1e-15));
  CHECK_THAT(delta_x(spec), WithinRel(std::sqrt(0.5), 1e-15));
  CHECK(f_expectation(spec.kappa) == 1.0);
}

TEST_CASE("state spec validation", "[coherent_states]") {
  CHECK_THROWS_AS(StateSpec(KappaParameter(0.2), 0.0), DomainError);
  CHECK_THROWS_AS(StateSpec(KappaParameter(0.2), 1.0, -1.0), DomainError);
}

TEST_CASE("psi is even, positive and peaks at N", "[coherent_states][property]") {
  for (double k : {0.0, 0.1, 0.5, 0.9}) {
    const StateSpec spec(KappaParameter(k), 1.7);
    CHECK(psi(0.0, spec) == normalization_constant(spec));
    for (double p : {0.1, 1.0, 4.0, 30.0}) {
      CHECK(psi(p, spec) == psi(-p, spec));
      // the Gaussian underflows far out; power-law tails do not
      CHECK(psi(p, spec) >= 0.0);
      if (k > 0.0) CHECK(psi(p, spec) > 0.0);
      CHECK(psi(p, spec) < psi(0.0, spec));
    }
  }
}

TEST_CASE("normalization by quadrature", "[coherent_states][property]") {
  for (double k : {0.05, 0.1, 0.3, 0.6}) {
    for (double z : {0.5, 1.0, 2.0}) {
      INFO("kappa = " << k << ", zeta = " << z);
      const StateSpec spec(KappaParameter(k), z);
      CHECK_THAT(quadrature_moment(0, spec), WithinAbs(1.0, 1e-12));
      CHECK_THAT(quadrature_normalization(spec), WithinRel(normalization_constant(spec), 1e-12));
    }
  }
}

TEST_CASE("moment report agreement", "[coherent_states]") {
  for (double k : {0.0, 0.1, 0.3, 0.5, 0.65}) {
    INFO("kappa = " << k);
    const auto r = moment_report(StateSpec(KappaParameter(k), 1.3, 0.7));
    CHECK(r.max_rel_discrepancy < 1e-9);
  }
}

TEST_CASE("uncertainty product depends on kappa only", "[coherent_states][property]") {
  for (double k : {0.05, 0.2, 0.45}) {
    const KappaParameter kappa(k);
    const double reference = 0.5 * f_expectation(kappa);
    for (double z : {0.5, 1.0, 2.0, 13.0}) {
      const StateSpec spec(kappa, z);
      CHECK_THAT(delta_x(spec) * delta_p(spec), WithinRel(reference, 1e-13));
    }
  }
}

TEST_CASE("divergent moments are refused", "[coherent_states]") {
  const StateSpec spec(KappaParameter(0.7), 1.0);
  CHECK_THROWS_AS(second_moment(spec), DivergenceError);
  CHECK_THROWS_AS(delta_x(spec), DivergenceError);
  CHECK_THROWS_AS(f_expectation(spec.kappa), DivergenceError);
  CHECK_THROWS_AS(quadrature_moment(2, spec), DivergenceError);
  // the fourth moment needs kappa < 2/5
  CHECK_THROWS_AS(quadrature_moment(4, StateSpec(KappaParameter(0.45), 1.0)), DivergenceError);
  CHECK_NOTHROW(quadrature_moment(4, StateSpec(KappaParameter(0.3), 1.0)));
  CHECK_THROWS_AS(quadrature_moment(3, spec), DomainError);
}

TEST_CASE("quadrature tolerance bounds", "[coherent_states]") {
  const StateSpec spec(KappaParameter(0.2), 1.0);
  CHECK_THROWS_AS(quadrature_moment(2, spec, 1e-14), DomainError);
  CHECK_THROWS_AS(quadrature_moment(2, spec, 1e-2), DomainError);
}

TEST_CASE("F(kappa) grows from one", "[coherent_states][property]") {
  double previous = 1.0;
  for (double k = 0.02; k < 0.66; k += 0.04) {
    const double f = f_expectation(KappaParameter(k));
    CHECK(f > previous);
    previous = f;
  }
  // F = 1 + O(k^2)
  const double f = f_expectation(KappaParameter(1e-3));
  CHECK(f - 1.0 > 0.0);
  CHECK(f - 1.0 < 1e-5);
}

TEST_CASE("tail exponent tends to -2/kappa", "[coherent_states]") {
  for (double k : {0.1, 0.25, 0.5}) {
    const double slope = tail_exponent_estimate(StateSpec(KappaParameter(k), 1.0));
    CHECK_THAT(slope, WithinRel(-2.0 / k, 0.02));
  }
  CHECK_THROWS_AS(tail_exponent_estimate(StateSpec(KappaParameter(0.0), 1.0)), DomainError);
}
