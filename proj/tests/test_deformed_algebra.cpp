#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "kappa_rup/deformed_algebra.hpp"

using namespace kappa_rup;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double central_difference(double (*fn)(double, KappaParameter, double), double p,
                          KappaParameter kappa, double zeta) {
  const double h = 1e-4 * std::max(1.0, std::abs(p));
  return (-fn(p + 2 * h, kappa, zeta) + 8 * fn(p + h, kappa, zeta) - 8 * fn(p - h, kappa, zeta) +
          fn(p - 2 * h, kappa, zeta)) /
         (12 * h);
}

GridFunction kappa_gaussian(const StateSpec& spec, double half_width, std::size_t n) {
  return GridFunction::sample(-half_width, half_width, n,
                              [&](double p) { return Complex(psi(p, spec)); });
}

}  // namespace

TEST_CASE("deformation f and its derivatives", "[deformed_algebra]") {
  for (double k : {0.0, 0.1, 0.5, 0.9}) {
    const KappaParameter kappa(k);
    for (double z : {0.5, 2.0}) {
      CHECK(deformation_f(0.0, kappa, z) == 1.0);
      for (double p : {-3.0, -0.4, 0.25, 1.0, 7.0}) {
        INFO("kappa = " << k << ", zeta = " << z << ", p = " << p);
        CHECK(deformation_f(p, kappa, z) >= 1.0);
        CHECK(deformation_f(p, kappa, z) == deformation_f(-p, kappa, z));
        CHECK_THAT(deformation_f_prime(p, kappa, z),
                   WithinAbs(central_difference(deformation_f, p, kappa, z),
                             1e-8 * std::max(1.0, deformation_f(p, kappa, z))));
        CHECK_THAT(deformation_f_second(p, kappa, z),
                   WithinAbs(central_difference(deformation_f_prime, p, kappa, z),
                             1e-7 * std::max(1.0, deformation_f(p, kappa, z))));
      }
    }
  }
}

TEST_CASE("pointwise quantities", "[deformed_algebra]") {
  const KappaParameter kappa(0.3);
  CHECK_THAT(deformation_general(1.0, kappa, 1.0, 1.0, 1.0, 1.0, 0.1),
             WithinRel(1.5141232243920741212, 1e-14));
  // c1 = 0 with the saturated dx reduces to f
  const StateSpec spec(kappa, 1.4);
  CHECK_THAT(deformation_general(0.8, kappa, 1.4, delta_x(spec), delta_p(spec), 1.0, 0.0),
             WithinRel(deformation_f(0.8, kappa, 1.4), 1e-14));
  CHECK_THROWS_AS(deformation_general(1.0, kappa, 1.0, 1.0, 0.0, 1.0, 0.0), DomainError);

  CHECK(robertson_bound(1.0, 2.0) == 1.0);
  CHECK_THROWS_AS(robertson_bound(0.9, 1.0), DomainError);
  CHECK_THAT(minimal_length(kappa, 4.0, 2.0), WithinRel(1.2, 1e-15));

  // 1 + k^2 z p^2 agrees with f to O(p^4)
  for (double p : {1e-2, 1e-3}) {
    const double gap = std::abs(approx_commutator_factor(p, kappa, 1.0) - deformation_f(p, kappa, 1.0));
    CHECK(gap <= std::pow(p, 4));
  }
}

TEST_CASE("ordering parameter domain", "[deformed_algebra]") {
  CHECK(OrderingParameter::left().value() == 0.0);
  CHECK(OrderingParameter::symmetric().value() == 0.5);
  CHECK(OrderingParameter::right().value() == 1.0);
  CHECK_THROWS_AS(OrderingParameter(1.5), DomainError);
  CHECK_THROWS_AS(OrderingParameter(-0.1), DomainError);
}

TEST_CASE("ordering weight identities", "[deformed_algebra]") {
  const KappaParameter kappa(0.35);
  for (double p : {0.0, 0.5, 2.0, -4.0}) {
    const double f = deformation_f(p, kappa, 1.2);
    CHECK(ordering_weight(p, OrderingParameter::symmetric(), kappa, 1.2) == 1.0);
    CHECK_THAT(ordering_weight(p, OrderingParameter::left(), kappa, 1.2), WithinRel(1.0 / f, 1e-15));
    CHECK_THAT(ordering_weight(p, OrderingParameter::right(), kappa, 1.2), WithinRel(f, 1e-15));
  }
}

TEST_CASE("ordering conversion round trips", "[deformed_algebra][property]") {
  const KappaParameter kappa(0.4);
  const StateSpec spec(kappa, 1.0);
  const GridFunction phi = kappa_gaussian(spec, 10.0, 101);
  const OrderingParameter orderings[] = {OrderingParameter::left(), OrderingParameter(0.2),
                                         OrderingParameter::symmetric(), OrderingParameter::right()};
  for (const auto& from : orderings) {
    for (const auto& to : orderings) {
      const GridFunction back = convert_ordering(convert_ordering(phi, from, to, kappa, 1.0), to,
                                                 from, kappa, 1.0);
      for (std::size_t i = 0; i < phi.size(); ++i) {
        CHECK(std::abs(back[i] - phi[i]) <= 1e-12 * std::abs(phi[i]));
      }
    }
  }
}

TEST_CASE("x_A acts as i hbar f^(1-A) d/dp f^A", "[deformed_algebra]") {
  // psi' = -z p psi / s analytically.
  const KappaParameter kappa(0.2);
  const StateSpec spec(kappa, 1.0);
  const GridFunction state = kappa_gaussian(spec, 20.0, 3201);
  for (const auto& a : {OrderingParameter::left(), OrderingParameter::symmetric(),
                        OrderingParameter::right()}) {
    const GridFunction x = apply_position_operator(state, a, kappa, 1.0, 1.0);
    for (std::size_t i = 100; i < state.size(); i += 400) {
      const double p = state.point(i);
      const double s = deformation_root(p, kappa, 1.0);
      const double dpsi = -p / s * psi(p, spec);
      const Complex expected(0.0, deformation_f(p, kappa, 1.0) * dpsi +
                                      a.value() * deformation_f_prime(p, kappa, 1.0) * psi(p, spec));
      CHECK(std::abs(x[i] - expected) < 1e-9);
    }
  }
}

TEST_CASE("grid validation", "[deformed_algebra]") {
  CHECK_THROWS_AS(GridFunction(0.0, 1.0, std::vector<Complex>(4)), DomainError);
  CHECK_THROWS_AS(GridFunction(1.0, 0.0, std::vector<Complex>(32)), DomainError);
  std::vector<Complex> bad(32);
  bad[3] = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(GridFunction(0.0, 1.0, bad), DomainError);
  CHECK_THROWS_AS(inner_product(GridFunction(0.0, 1.0, std::vector<Complex>(32)),
                                GridFunction(0.0, 2.0, std::vector<Complex>(32))),
                  DomainError);
  CHECK_THROWS_AS(differentiate(std::vector<Complex>(4), 0.1), DomainError);
}

TEST_CASE("stencil is exact on quartics", "[deformed_algebra]") {
  const GridFunction q = GridFunction::sample(-1.0, 2.0, 31, [](double p) {
    return Complex(p * p * p * p - 2 * p * p + p, 0.0);
  });
  const auto d = differentiate(q.samples(), q.spacing());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double p = q.point(i);
    CHECK_THAT(d[i].real(), WithinAbs(4 * p * p * p - 4 * p + 1, 1e-11));
  }
}

TEST_CASE("annihilation residual converges at fourth order", "[deformed_algebra]") {
  const StateSpec spec(KappaParameter(0.2), 1.0);
  std::vector<double> r;
  for (std::size_t n : {201u, 401u, 801u, 1601u}) {
    r.push_back(annihilation_residual(spec, GridShape{-20.0, 20.0, n}));
  }
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i - 1] / r[i] >= 12.0);
  CHECK(r.back() < 1e-6);

  // the wrong dp leaves an O(1) residual
  const double wrong = annihilation_residual(spec, GridShape{-20.0, 20.0, 1601}, 1.5);
  CHECK(wrong > 0.3);
  CHECK_THROWS_AS(annihilation_residual(spec, GridShape{-5.0, 5.0, 401}), DomainError);
}

TEST_CASE("commutator residual converges for a generic state", "[deformed_algebra]") {
  const KappaParameter kappa(0.2);
  // (1 + p + p^2) exp(-p^2 / 2) is not a kappa-Gaussian; [x, p] = i hbar f holds anyway.
  std::vector<double> r;
  for (std::size_t n : {201u, 401u, 801u, 1601u}) {
    const GridFunction g = GridFunction::sample(-12.0, 12.0, n, [](double p) {
      return Complex((1.0 + p + p * p) * std::exp(-0.5 * p * p), 0.0);
    });
    r.push_back(commutator_residual(g, kappa, 1.0, 0.8));
  }
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i - 1] / r[i] >= 12.0);
}

TEST_CASE("symmetry of x_A depends on the measure", "[deformed_algebra]") {
  const KappaParameter kappa(0.3);
  auto u_at = [](double p) { return Complex(std::exp(-0.5 * p * p), 0.3 * p * std::exp(-p * p)); };
  auto v_at = [](double p) { return Complex(p * std::exp(-0.4 * p * p), 0.0); };
  auto defect = [&](OrderingParameter a, SymmetryMeasure m, std::size_t n) {
    const auto u = GridFunction::sample(-14.0, 14.0, n, u_at);
    const auto v = GridFunction::sample(-14.0, 14.0, n, v_at);
    return symmetry_defect(u, v, a, kappa, 1.0, 1.0, m);
  };
  // x3 under the unit measure: defect vanishes with refinement
  const double coarse = defect(OrderingParameter::symmetric(), SymmetryMeasure::unit, 201);
  const double fine = defect(OrderingParameter::symmetric(), SymmetryMeasure::unit, 1601);
  CHECK(fine < coarse);
  CHECK(fine < 1e-7);
  // x1 is not symmetric under dp, but is under f^-1 dp
  CHECK(defect(OrderingParameter::left(), SymmetryMeasure::unit, 1601) > 1e-2);
  CHECK(defect(OrderingParameter::left(), SymmetryMeasure::ordering, 1601) < 1e-7);
  CHECK(defect(OrderingParameter::right(), SymmetryMeasure::ordering, 1601) < 1e-7);
}

TEST_CASE("minimum-uncertainty ODE", "[deformed_algebra]") {
  for (double k : {0.1, 0.3, 0.5}) {
    for (double z : {0.5, 1.0, 2.0}) {
      const KappaParameter kappa(k);
      const StateSpec spec(kappa, z, 1.3);
      const double dx = delta_x(spec);
      const double dp = delta_p(spec);
      double canonical = 0.0, family = 0.0, unit = 0.0;
      const auto general = DeformationProfile::general(kappa, z, dx, dp, 1.3, 0.05);
      for (int i = 0; i < 200; ++i) {
        const double p = (-5.0 + 10.0 * i / 199.0) / std::sqrt(z);
        canonical = std::max(canonical, std::abs(ode_residual(p, kappa, z, dx, dp, 1.3).normalized));
        family = std::max(family,
                          std::abs(ode_residual(p, kappa, z, dx, dp, 1.3, general).normalized));
        unit = std::max(unit, std::abs(ode_residual(p, kappa, z, dx, dp, 1.3,
                                                    DeformationProfile::unit())
                                           .normalized));
      }
      INFO("kappa = " << k << ", zeta = " << z);
      CHECK(canonical < 1e-12);
      CHECK(family < 1e-12);
      CHECK(unit > 1e-3);
    }
  }
}
