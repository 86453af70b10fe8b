#pragma once

// Compile-time dimensional analysis over three base units:
//   momentum  MeV/c
//   length    fm
//   speed     c
// Energy (MeV) is momentum * speed, mass (MeV/c^2) is momentum / speed and
// action (MeV fm / c) is momentum * length. Mixing dimensions in + or - or
// passing the wrong quantity to a typed function does not compile.

#include <cmath>
#include <compare>

namespace kappa_rup::units {

template <int Momentum, int Length, int Speed>
class Quantity {
 public:
  static constexpr int momentum_exponent = Momentum;
  static constexpr int length_exponent = Length;
  static constexpr int speed_exponent = Speed;

  constexpr Quantity() = default;
  constexpr explicit Quantity(double value) : value_(value) {}

  /// Magnitude in base units (MeV/c, fm, c).
  constexpr double value() const noexcept { return value_; }

  constexpr Quantity operator-() const { return Quantity(-value_); }
  constexpr Quantity& operator+=(Quantity o) {
    value_ += o.value_;
    return *this;
  }
  constexpr Quantity& operator-=(Quantity o) {
    value_ -= o.value_;
    return *this;
  }
  friend constexpr Quantity operator+(Quantity a, Quantity b) { return Quantity(a.value_ + b.value_); }
  friend constexpr Quantity operator-(Quantity a, Quantity b) { return Quantity(a.value_ - b.value_); }
  friend constexpr Quantity operator*(double s, Quantity q) { return Quantity(s * q.value_); }
  friend constexpr Quantity operator*(Quantity q, double s) { return Quantity(q.value_ * s); }
  friend constexpr Quantity operator/(Quantity q, double s) { return Quantity(q.value_ / s); }
  friend constexpr auto operator<=>(Quantity, Quantity) = default;

 private:
  double value_ = 0.0;
};

/// Dimensionless results collapse to double.
template <class Q>
constexpr auto collapse(Q q) {
  if constexpr (Q::momentum_exponent == 0 && Q::length_exponent == 0 && Q::speed_exponent == 0) {
    return q.value();
  } else {
    return q;
  }
}

template <int P1, int L1, int V1, int P2, int L2, int V2>
constexpr auto operator*(Quantity<P1, L1, V1> a, Quantity<P2, L2, V2> b) {
  return collapse(Quantity<P1 + P2, L1 + L2, V1 + V2>(a.value() * b.value()));
}

template <int P1, int L1, int V1, int P2, int L2, int V2>
constexpr auto operator/(Quantity<P1, L1, V1> a, Quantity<P2, L2, V2> b) {
  return collapse(Quantity<P1 - P2, L1 - L2, V1 - V2>(a.value() / b.value()));
}

template <int P, int L, int V>
constexpr auto operator/(double s, Quantity<P, L, V> q) {
  return Quantity<-P, -L, -V>(s / q.value());
}

template <int P, int L, int V>
  requires(P % 2 == 0 && L % 2 == 0 && V % 2 == 0)
auto sqrt(Quantity<P, L, V> q) {
  return collapse(Quantity<P / 2, L / 2, V / 2>(std::sqrt(q.value())));
}

using Momentum = Quantity<1, 0, 0>;
using InverseMomentum = Quantity<-1, 0, 0>;
using InverseMomentumSquared = Quantity<-2, 0, 0>;
using Length = Quantity<0, 1, 0>;
using Speed = Quantity<0, 0, 1>;
using Action = Quantity<1, 1, 0>;
using Energy = Quantity<1, 0, 1>;
using Mass = Quantity<1, 0, -1>;

constexpr Momentum mev_per_c(double v) { return Momentum(v); }
constexpr InverseMomentum per_mev_per_c(double v) { return InverseMomentum(v); }
constexpr Length femtometres(double v) { return Length(v); }
constexpr Speed fraction_of_c(double v) { return Speed(v); }
constexpr Energy mev(double v) { return Energy(v); }
constexpr Mass mev_per_c2(double v) { return Mass(v); }
constexpr Action mev_fm_per_c(double v) { return Action(v); }

}  // namespace kappa_rup::units
