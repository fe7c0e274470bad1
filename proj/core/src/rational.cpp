#include "abmod/rational.hpp"

#include <cctype>
#include <ostream>

#include "abmod/errors.hpp"

namespace abm {

Rational::Rational(long n, long d) {
  if (d == 0) fail(errc::syntax_error, "rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational Rational::from_string(std::string_view s) {
  // mpq_class accepts "p/q" directly but also things like whitespace-laden
  // strings; be strict so the JSON readers give clean diagnostics.
  if (s.empty()) fail(errc::syntax_error, "empty rational literal");
  auto ok_part = [](std::string_view p, bool sign_ok) {
    if (p.empty()) return false;
    size_t i = 0;
    if (sign_ok && (p[0] == '-' || p[0] == '+')) i = 1;
    if (i == p.size()) return false;
    for (; i < p.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(p[i]))) return false;
    return true;
  };
  size_t slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (!ok_part(s, true))
      fail(errc::syntax_error, "bad rational literal '" + std::string(s) + "'");
  } else {
    if (!ok_part(s.substr(0, slash), true) || !ok_part(s.substr(slash + 1), false))
      fail(errc::syntax_error, "bad rational literal '" + std::string(s) + "'");
  }
  mpq_class v(std::string(s), 10);
  if (v.get_den() == 0)
    fail(errc::syntax_error, "rational with zero denominator");
  v.canonicalize();
  return Rational(v);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(errc::not_a_unit, "division of rationals by zero");
  v_ /= o.v_;
  return *this;
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

Rational Rational::inverse() const {
  if (is_zero()) fail(errc::not_a_unit, "inverse of zero");
  return Rational(mpq_class(1) / v_);
}

Rational Rational::pow(long e) const {
  Rational base = *this;
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  Rational acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

std::string Rational::str() const {
  return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

Rational class_representative(const Rational& lambda) {
  // Representative in (0, 1]: lambda - ceil(lambda) + 1.
  mpz_class fl = lambda.floor();
  Rational frac = lambda - Rational(mpq_class(fl));
  if (frac.is_zero()) return Rational(1);
  return frac;
}

long class_shift(const Rational& lambda) {
  Rational diff = lambda - class_representative(lambda);
  return static_cast<long>(diff.num().get_si());
}

}  // namespace abm
