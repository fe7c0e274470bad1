#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "abmod/dense_poly.hpp"
#include "abmod/rational.hpp"

namespace abm {

using RatPoly = Poly<Rational>;

// Coefficient field for the whole library. A Scalar is an element of
// Q(tau), the rationals extended by one transcendental symbol tau (the
// stand-in for 2*pi*i that monodromy computations introduce). Plain
// rationals stay on a cheap fast path; the tau part is allocated only on
// demand and collapses back automatically whenever a result is rational,
// so values that happen to be rational compare equal regardless of how
// they were produced.
class Scalar {
public:
  Scalar() : q_(0) {}
  Scalar(long n) : q_(n) {}  // NOLINT: implicit by design
  Scalar(Rational q) : q_(std::move(q)) {}  // NOLINT: implicit by design

  static Scalar tau();
  // Fraction of polynomials in tau; reduces and demotes as needed.
  static Scalar tau_fraction(RatPoly num, RatPoly den);

  bool is_rational() const { return !ext_; }
  bool is_zero() const { return !ext_ && q_.is_zero(); }

  // Value as a plain rational; throws errc::field_too_small when the
  // value genuinely involves tau.
  Rational rat() const;

  // Numerator / denominator over Q[tau] (den = 1 for rationals).
  RatPoly tau_num() const;
  RatPoly tau_den() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
  Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
  Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);
  friend bool operator==(const Scalar& x, const Scalar& y);

  Scalar inverse() const;

  std::string str() const;

private:
  struct TauFrac {
    RatPoly num;
    RatPoly den;  // monic, positive degree or (with nonconstant num) one
  };

  Rational q_;                     // value when ext_ is empty
  std::shared_ptr<const TauFrac> ext_;  // immutable, shared on copy
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

using Polynomial = Poly<Scalar>;

}  // namespace abm
