#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "abmod/series.hpp"

namespace abm {

// Default cap on the a-degree of any single element. All the module,
// fresco and theme computations stay far below this; blowing through it
// almost certainly means a runaway loop upstream.
constexpr int kDefaultADegreeBound = 64;

// Element of the completed skew algebra generated by a and b with
// a*b - b*a = b^2, stored in left normal form: sum of c * b^m * a^d with
// the b-powers on the left. Precision is b-adic: terms with m >= prec
// are unknown and never stored.
class AbElement {
public:
  AbElement() : prec_(kExactPrec), a_bound_(kDefaultADegreeBound) {}
  explicit AbElement(int prec, int a_bound = kDefaultADegreeBound)
      : prec_(prec), a_bound_(a_bound) {}

  static AbElement one() { return monomial(0, 0, Scalar(1)); }
  static AbElement a() { return monomial(0, 1, Scalar(1)); }
  static AbElement b() { return monomial(0, 0, Scalar(1)).shifted_b(1); }
  // c * b^m * a^d (already in normal form).
  static AbElement monomial(int m, int d, const Scalar& c,
                            int prec = kExactPrec);
  // A pure series in b; the element inherits its precision.
  static AbElement from_series(const TruncatedSeries& s);
  // c * a^d * b^m, normalized through the commutation rule.
  static AbElement right_monomial(int m, int d, const Scalar& c,
                                  int prec = kExactPrec);

  int precision() const { return prec_; }
  bool is_exact() const { return prec_ >= kExactPrec; }
  int a_degree_bound() const { return a_bound_; }

  bool is_zero() const { return t_.empty(); }
  // Highest a-degree among stored terms; -1 for zero.
  int a_degree() const;
  // Smallest b-exponent among stored terms; precision() for zero.
  int b_valuation() const;
  // Smallest total degree m + d among stored terms; precision() for zero.
  int order() const;

  Scalar coeff(int m, int d) const;
  // The series C_d(b) with x = sum_d C_d(b) * a^d.
  TruncatedSeries series_coeff(int d) const;

  // Stored terms keyed (d, m) -> coefficient; no zeroes.
  const std::map<std::pair<int, int>, Scalar>& terms() const { return t_; }

  AbElement operator-() const;
  friend AbElement operator+(const AbElement& x, const AbElement& y);
  friend AbElement operator-(const AbElement& x, const AbElement& y);
  friend AbElement operator*(const AbElement& x, const AbElement& y);
  friend AbElement operator*(const Scalar& s, const AbElement& x);
  AbElement& operator+=(const AbElement& o) { return *this = *this + o; }
  AbElement& operator-=(const AbElement& o) { return *this = *this - o; }
  AbElement& operator*=(const AbElement& o) { return *this = *this * o; }

  // Left multiplication by b^t. Negative t requires every stored
  // b-exponent to be >= -t.
  AbElement shifted_b(int t) const;

  AbElement truncated(int n) const;

  // Right form: x = sum of c * a^d * b^m, as a (d, m) -> c table.
  std::map<std::pair<int, int>, Scalar> right_form() const;
  static AbElement from_right_terms(
      const std::map<std::pair<int, int>, Scalar>& terms,
      int prec = kExactPrec);

  // Right division by a - T(b): x = q*(a - T) + r with r a pure series.
  std::pair<AbElement, TruncatedSeries> right_divide_linear(
      const TruncatedSeries& t) const;

  std::string str() const;

private:
  void put(int m, int d, const Scalar& c);  // accumulate, drop zeroes

  std::map<std::pair<int, int>, Scalar> t_;  // key (d, m)
  int prec_;
  int a_bound_;
};

// Agreement of all coefficients with b-exponent below the smaller
// precision.
bool equal_mod_prec(const AbElement& x, const AbElement& y);

// Division interface taking the divisor as an element: must be exactly
// a - T(b) (monic of a-degree 1), else errc::divisor_not_monic.
std::pair<AbElement, TruncatedSeries> right_divide(const AbElement& x,
                                                   const AbElement& d);

// Homogeneous element of degree k for the grading deg a = deg b = 1:
// sum over j of gamma_j * b^(k-j) * a^j.
class HomogeneousElement {
public:
  HomogeneousElement(int degree, std::vector<Scalar> gamma);

  // Lowest-total-degree part of x; requires x nonzero with enough
  // precision to see the full initial form.
  static HomogeneousElement initial_form(const AbElement& x);

  int degree() const { return k_; }
  const Scalar& gamma(int j) const { return g_[j]; }
  bool is_monic() const { return (g_[k_] - Scalar(1)).is_zero(); }

  AbElement element() const;  // exact

  friend HomogeneousElement operator*(const HomogeneousElement& x,
                                      const HomogeneousElement& y);
  friend bool operator==(const HomogeneousElement& x,
                         const HomogeneousElement& y) {
    return x.k_ == y.k_ && x.g_ == y.g_;
  }

  std::string str() const;

private:
  int k_;
  std::vector<Scalar> g_;  // size k_ + 1, g_[j] on b^(k-j) a^j
};

// The monic polynomial B matched to a monic homogeneous P of degree k:
// the coefficient of b^k in the right remainder of P by (a - lambda*b)
// is a degree-k polynomial r(lambda); B(x) is the monic normalization
// of r(-x).
Polynomial bernstein_poly_of_homogeneous(const HomogeneousElement& p);

// Inverse map. Returns the monic-in-a representative, which differs from
// the raw expansion of b^k * B(-b^-1 a) by the factor (-1)^k.
HomogeneousElement homogeneous_from_bernstein(const Polynomial& b, int k);

// lambda_1..lambda_k with P = (a - lambda_1 b)...(a - lambda_k b), in the
// ordering that makes lambda_j + j nondecreasing (roots of B sorted
// nonincreasing, lambda_j = -r_j + k - j). The factorization is verified
// by successive right division. Throws errc::not_fully_split when B has
// irrational roots.
std::vector<Rational> factor_homogeneous(const HomogeneousElement& p);
// Same with a caller-chosen ordering of the root multiset of B;
// lambda_j = -roots_in_order[j-1] + k - j per position.
std::vector<Rational> factor_homogeneous(const HomogeneousElement& p,
                                         std::vector<Rational> roots_in_order);

}  // namespace abm
