#include "abmod/scalar.hpp"

#include <ostream>
#include <utility>

#include "abmod/errors.hpp"

namespace abm {

namespace {

// Canonical fraction: gcd removed, denominator monic. Returns a rational
// (den and num constant) through the bool flag.
std::pair<RatPoly, RatPoly> reduce(RatPoly num, RatPoly den) {
  if (den.is_zero()) fail(errc::not_a_unit, "division by zero in Q(tau)");
  if (num.is_zero()) return {RatPoly(), RatPoly(Rational(1))};
  RatPoly g = RatPoly::gcd(num, den);
  num = num.divmod(g).first;
  den = den.divmod(g).first;
  Rational lead = den.leading();
  num = Rational(1) / lead * num;
  den = Rational(1) / lead * den;
  return {std::move(num), std::move(den)};
}

}  // namespace

Scalar Scalar::tau() {
  return tau_fraction(RatPoly::x(), RatPoly(Rational(1)));
}

Scalar Scalar::tau_fraction(RatPoly num, RatPoly den) {
  auto [n, d] = reduce(std::move(num), std::move(den));
  if (n.degree() <= 0 && d.degree() <= 0) {
    // Rational after reduction (d is monic constant, i.e. exactly 1).
    return Scalar(n.is_zero() ? Rational(0) : n.coeff(0));
  }
  Scalar s;
  s.ext_ = std::make_shared<const TauFrac>(TauFrac{std::move(n), std::move(d)});
  return s;
}

Rational Scalar::rat() const {
  if (ext_) fail(errc::field_too_small, "value involves tau: " + str());
  return q_;
}

RatPoly Scalar::tau_num() const { return ext_ ? ext_->num : RatPoly(q_); }
RatPoly Scalar::tau_den() const {
  return ext_ ? ext_->den : RatPoly(Rational(1));
}

Scalar Scalar::operator-() const {
  if (!ext_) return Scalar(-q_);
  return tau_fraction(-ext_->num, ext_->den);
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  if (!x.ext_ && !y.ext_) return Scalar(x.q_ + y.q_);
  RatPoly xn = x.tau_num(), xd = x.tau_den();
  RatPoly yn = y.tau_num(), yd = y.tau_den();
  return Scalar::tau_fraction(xn * yd + yn * xd, xd * yd);
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
  if (!x.ext_ && !y.ext_) return Scalar(x.q_ * y.q_);
  return Scalar::tau_fraction(x.tau_num() * y.tau_num(),
                              x.tau_den() * y.tau_den());
}

Scalar operator/(const Scalar& x, const Scalar& y) {
  if (y.is_zero()) fail(errc::not_a_unit, "division by zero scalar");
  if (!x.ext_ && !y.ext_) return Scalar(x.q_ / y.q_);
  return Scalar::tau_fraction(x.tau_num() * y.tau_den(),
                              x.tau_den() * y.tau_num());
}

bool operator==(const Scalar& x, const Scalar& y) {
  if (!x.ext_ && !y.ext_) return x.q_ == y.q_;
  // Canonical representations make cross-multiplication exact.
  return (x.tau_num() * y.tau_den() - y.tau_num() * x.tau_den()).is_zero();
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(errc::not_a_unit, "inverse of zero scalar");
  if (!ext_) return Scalar(q_.inverse());
  return tau_fraction(ext_->den, ext_->num);
}

std::string Scalar::str() const {
  if (!ext_) return q_.str();
  std::string n = ext_->num.str("tau");
  if (ext_->den.degree() <= 0) {
    // Monic constant denominator means exactly 1.
    return n;
  }
  return "(" + n + ")/(" + ext_->den.str("tau") + ")";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.str();
}

const char* errc_name(errc code) {
  switch (code) {
    case errc::not_a_unit: return "NotAUnit";
    case errc::divisor_not_monic: return "DivisorNotMonic";
    case errc::not_fully_split: return "NotFullySplit";
    case errc::syntax_error: return "SyntaxError";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::not_regular: return "NotRegular";
    case errc::not_geometric: return "NotGeometric";
    case errc::invalid_theta: return "InvalidTheta";
    case errc::not_a_fresco: return "NotAFresco";
    case errc::not_normal: return "NotNormal";
    case errc::selection_ambiguous: return "SelectionAmbiguous";
    case errc::rank_not_stabilized: return "RankNotStabilized";
    case errc::field_too_small: return "FieldTooSmall";
    case errc::not_minimal_embedding: return "NotMinimalEmbedding";
    case errc::canonicalization_failed: return "CanonicalizationFailed";
    case errc::not_primitive: return "NotPrimitive";
    case errc::degree_bound_exceeded: return "DegreeBoundExceeded";
    case errc::cross_check_failed: return "CrossCheckFailed";
  }
  return "UnknownError";
}

}  // namespace abm
