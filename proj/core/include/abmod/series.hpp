#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "abmod/scalar.hpp"

namespace abm {

// Precision sentinel for exact polynomials (elements known to all orders).
// Large enough that no computation ever reaches it, small enough that
// sums of two precisions cannot overflow an int.
constexpr int kExactPrec = 1 << 28;

// Truncated power series in b over Q(tau). A value represents an element
// of C[[b]] known modulo b^prec; the stored coefficient list never
// extends to or beyond prec (trailing zeroes are trimmed as well).
//
// Precision is data, not a global setting. Binary operations take the
// worst case of their inputs, with one refinement: multiplication gains
// back the valuation of the partner, prec(x*y) =
// min(prec(x) + val(y), prec(y) + val(x)).
class TruncatedSeries {
public:
  TruncatedSeries() : prec_(kExactPrec) {}  // exact zero
  explicit TruncatedSeries(int prec) : prec_(prec) {}

  static TruncatedSeries constant(const Scalar& c, int prec = kExactPrec);
  static TruncatedSeries monomial(int exp, const Scalar& c = Scalar(1),
                                  int prec = kExactPrec);
  static TruncatedSeries from_coeffs(std::vector<Scalar> coeffs, int prec);

  int precision() const { return prec_; }
  bool is_exact() const { return prec_ >= kExactPrec; }

  // Coefficient of b^i as stored; zero for indices with no stored value.
  // Only meaningful for i < precision().
  Scalar coeff(int i) const;
  // Largest stored index + 1.
  int stored_size() const { return static_cast<int>(c_.size()); }

  // Index of the first nonzero coefficient; precision() when the series
  // is zero as far as it is known.
  int valuation() const;
  bool is_zero() const { return c_.empty(); }
  // True when this is exactly the constant 1 as far as stored.
  bool is_one() const;

  TruncatedSeries operator-() const;
  friend TruncatedSeries operator+(const TruncatedSeries& x,
                                   const TruncatedSeries& y);
  friend TruncatedSeries operator-(const TruncatedSeries& x,
                                   const TruncatedSeries& y);
  friend TruncatedSeries operator*(const TruncatedSeries& x,
                                   const TruncatedSeries& y);
  friend TruncatedSeries operator*(const Scalar& s, const TruncatedSeries& x);
  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    return *this = *this + o;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    return *this = *this - o;
  }

  // Multiplication by b^t, t >= 0. Gains t digits of precision.
  TruncatedSeries shifted(int t) const;

  // Reciprocal; requires a unit constant term (errc::not_a_unit).
  TruncatedSeries invert() const;

  // d/db; costs one digit of precision.
  TruncatedSeries derivative() const;

  // Substitution b -> inner, requires inner to vanish at 0
  // (errc::invalid_theta otherwise).
  TruncatedSeries compose(const TruncatedSeries& inner) const;

  // Same values, precision lowered to n (no-op if already below).
  TruncatedSeries truncated(int n) const;

  // Structural equality: same precision and same stored coefficients.
  friend bool operator==(const TruncatedSeries& x, const TruncatedSeries& y) {
    return x.prec_ == y.prec_ && x.c_ == y.c_;
  }

  std::string str(const std::string& var = "b") const;

private:
  void trim();

  std::vector<Scalar> c_;
  int prec_;
};

// Agreement of all coefficients below the smaller precision.
bool equal_mod_prec(const TruncatedSeries& x, const TruncatedSeries& y);

std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s);

// Formal Laurent series: finitely many negative exponents, known modulo
// b^prec. Normalized so the lowest stored coefficient is nonzero.
class LaurentSeries {
public:
  LaurentSeries() : base_(0), prec_(kExactPrec) {}
  LaurentSeries(const TruncatedSeries& s);  // NOLINT: implicit by design
  LaurentSeries(int base, std::vector<Scalar> coeffs, int prec);

  static LaurentSeries monomial(int exp, const Scalar& c = Scalar(1),
                                int prec = kExactPrec);

  int precision() const { return prec_; }
  bool is_exact() const { return prec_ >= kExactPrec; }
  bool is_zero() const { return c_.empty(); }

  // Exponent of the first nonzero term; precision() when zero as known.
  int valuation() const;

  // Coefficient of b^e for any integer e (zero off the stored window;
  // only meaningful for e < precision()).
  Scalar coeff(int e) const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& x, const LaurentSeries& y);
  friend LaurentSeries operator-(const LaurentSeries& x, const LaurentSeries& y);
  friend LaurentSeries operator*(const LaurentSeries& x, const LaurentSeries& y);
  friend LaurentSeries operator*(const Scalar& s, const LaurentSeries& x);
  LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }

  // Multiplication by b^t for any integer t.
  LaurentSeries shifted(int t) const;

  // Reciprocal of a nonzero series (unit times power of b).
  LaurentSeries invert() const;

  // d/db; costs one digit of precision.
  LaurentSeries derivative() const;

  LaurentSeries truncated(int n) const;

  // Terms with exponent below n, precision unchanged. Unlike truncated()
  // this does not forget that the removed coefficients were known.
  LaurentSeries head(int n) const;

  // True when no negative exponent is stored.
  bool is_power_series() const { return c_.empty() || base_ >= 0; }
  // Conversion back to C[[b]]; throws errc::not_normal on negative
  // exponents.
  TruncatedSeries to_truncated() const;

  friend bool operator==(const LaurentSeries& x, const LaurentSeries& y) {
    return x.base_ == y.base_ && x.prec_ == y.prec_ && x.c_ == y.c_;
  }

  std::string str(const std::string& var = "b") const;

private:
  void normalize();

  int base_;  // exponent of c_[0]
  std::vector<Scalar> c_;
  int prec_;
};

bool equal_mod_prec(const LaurentSeries& x, const LaurentSeries& y);

std::ostream& operator<<(std::ostream& os, const LaurentSeries& s);

}  // namespace abm
