#include "abmod/ab_element.hpp"

#include <algorithm>
#include <sstream>

#include "abmod/errors.hpp"
#include "abmod/spectral.hpp"

namespace abm {

namespace {

int clamp_prec(long p) {
  return static_cast<int>(std::min<long>(p, kExactPrec));
}

Scalar binom(int n, int k) {
  if (k < 0 || k > n) return Scalar(0);
  mpz_class v;
  mpz_bin_uiui(v.get_mpz_t(), n, k);
  return Scalar(Rational(mpq_class(v)));
}

// Rising factorial m*(m+1)*...*(m+i-1).
Scalar rising(int m, int i) {
  Scalar acc(1);
  for (int t = 0; t < i; ++t) acc *= Scalar(static_cast<long>(m + t));
  return acc;
}

}  // namespace

void AbElement::put(int m, int d, const Scalar& c) {
  if (c.is_zero() || m >= prec_) return;
  if (d > a_bound_)
    fail(errc::degree_bound_exceeded,
         "a-degree " + std::to_string(d) + " exceeds the bound " +
             std::to_string(a_bound_));
  auto key = std::make_pair(d, m);
  auto it = t_.find(key);
  if (it == t_.end()) {
    t_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

AbElement AbElement::monomial(int m, int d, const Scalar& c, int prec) {
  AbElement x(prec);
  x.put(m, d, c);
  return x;
}

AbElement AbElement::from_series(const TruncatedSeries& s) {
  AbElement x(s.precision());
  for (int m = 0; m < s.stored_size(); ++m) x.put(m, 0, s.coeff(m));
  return x;
}

AbElement AbElement::right_monomial(int m, int d, const Scalar& c, int prec) {
  // a^d * b^m = sum_i C(d,i) * m^(i) * b^(m+i) * a^(d-i).
  AbElement x(prec);
  for (int i = 0; i <= d; ++i)
    x.put(m + i, d - i, c * binom(d, i) * rising(m, i));
  return x;
}

int AbElement::a_degree() const {
  return t_.empty() ? -1 : t_.rbegin()->first.first;
}

int AbElement::b_valuation() const {
  int v = prec_;
  for (const auto& [key, c] : t_) v = std::min(v, key.second);
  return v;
}

int AbElement::order() const {
  int v = prec_;
  for (const auto& [key, c] : t_) v = std::min(v, key.first + key.second);
  return v;
}

Scalar AbElement::coeff(int m, int d) const {
  auto it = t_.find(std::make_pair(d, m));
  return it == t_.end() ? Scalar(0) : it->second;
}

TruncatedSeries AbElement::series_coeff(int d) const {
  std::vector<Scalar> c;
  for (auto it = t_.lower_bound({d, 0}); it != t_.end() && it->first.first == d;
       ++it) {
    if (static_cast<int>(c.size()) <= it->first.second)
      c.resize(it->first.second + 1, Scalar(0));
    c[it->first.second] = it->second;
  }
  return TruncatedSeries::from_coeffs(std::move(c), prec_);
}

AbElement AbElement::operator-() const {
  AbElement r = *this;
  for (auto& [key, c] : r.t_) c = -c;
  return r;
}

AbElement operator+(const AbElement& x, const AbElement& y) {
  AbElement r(std::min(x.prec_, y.prec_), std::max(x.a_bound_, y.a_bound_));
  for (const auto& [key, c] : x.t_) r.put(key.second, key.first, c);
  for (const auto& [key, c] : y.t_) r.put(key.second, key.first, c);
  return r;
}

AbElement operator-(const AbElement& x, const AbElement& y) {
  return x + (-y);
}

AbElement operator*(const AbElement& x, const AbElement& y) {
  // (c1 b^m1 a^d1)(c2 b^m2 a^d2): push a^d1 through b^m2, then exponents
  // add. The unknown tails contribute only from b-order
  // min(prec_x + val_y, prec_y + val_x) on, as in series multiplication.
  int prec = clamp_prec(std::min(
      static_cast<long>(x.prec_) + y.b_valuation(),
      static_cast<long>(y.prec_) + x.b_valuation()));
  AbElement r(prec, std::max(x.a_bound_, y.a_bound_));
  for (const auto& [k1, c1] : x.t_) {
    int d1 = k1.first, m1 = k1.second;
    for (const auto& [k2, c2] : y.t_) {
      int d2 = k2.first, m2 = k2.second;
      Scalar c = c1 * c2;
      for (int i = 0; i <= d1 && m1 + m2 + i < prec; ++i)
        r.put(m1 + m2 + i, d1 - i + d2, c * binom(d1, i) * rising(m2, i));
    }
  }
  return r;
}

AbElement operator*(const Scalar& s, const AbElement& x) {
  AbElement r(x.prec_, x.a_bound_);
  if (s.is_zero()) return r;
  for (const auto& [key, c] : x.t_) r.put(key.second, key.first, s * c);
  return r;
}

AbElement AbElement::shifted_b(int t) const {
  AbElement r(clamp_prec(static_cast<long>(prec_) + t), a_bound_);
  for (const auto& [key, c] : t_) {
    if (key.second + t < 0)
      fail(errc::not_normal, "b-exponent would become negative");
    r.put(key.second + t, key.first, c);
  }
  return r;
}

AbElement AbElement::truncated(int n) const {
  if (n >= prec_) return *this;
  AbElement r(n, a_bound_);
  for (const auto& [key, c] : t_) r.put(key.second, key.first, c);
  return r;
}

std::map<std::pair<int, int>, Scalar> AbElement::right_form() const {
  // b^m a^d = sum_i (-1)^i C(d,i) m^(i) a^(d-i) b^(m+i).
  std::map<std::pair<int, int>, Scalar> out;
  for (const auto& [key, c] : t_) {
    int d = key.first, m = key.second;
    for (int i = 0; i <= d; ++i) {
      Scalar v = c * binom(d, i) * rising(m, i);
      if (i % 2) v = -v;
      if (m + i >= prec_ || v.is_zero()) continue;
      auto k2 = std::make_pair(d - i, m + i);
      auto it = out.find(k2);
      if (it == out.end())
        out.emplace(k2, v);
      else {
        it->second += v;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

AbElement AbElement::from_right_terms(
    const std::map<std::pair<int, int>, Scalar>& terms, int prec) {
  AbElement r(prec);
  for (const auto& [key, c] : terms)
    r += right_monomial(key.second, key.first, c, prec);
  return r;
}

std::pair<AbElement, TruncatedSeries> AbElement::right_divide_linear(
    const TruncatedSeries& t) const {
  AbElement q(prec_, a_bound_);
  AbElement r = *this;
  AbElement divisor = AbElement::a() - AbElement::from_series(t);
  while (r.a_degree() >= 1) {
    int d = r.a_degree();
    // Peel the whole top series coefficient at once.
    AbElement chunk(r.prec_, r.a_bound_);
    TruncatedSeries cd = r.series_coeff(d);
    for (int m = 0; m < cd.stored_size(); ++m)
      chunk.put(m, d - 1, cd.coeff(m));
    q += chunk;
    r -= chunk * divisor;
  }
  return {q, r.series_coeff(0)};
}

bool equal_mod_prec(const AbElement& x, const AbElement& y) {
  int n = std::min(x.precision(), y.precision());
  for (const auto& [key, c] : x.terms())
    if (key.second < n && !(c - y.coeff(key.second, key.first)).is_zero())
      return false;
  for (const auto& [key, c] : y.terms())
    if (key.second < n && !(c - x.coeff(key.second, key.first)).is_zero())
      return false;
  return true;
}

std::pair<AbElement, TruncatedSeries> right_divide(const AbElement& x,
                                                   const AbElement& d) {
  if (d.a_degree() != 1 || !d.series_coeff(1).is_one())
    fail(errc::divisor_not_monic, "divisor must have the form a - T(b)");
  return x.right_divide_linear(-d.series_coeff(0));
}

std::string AbElement::str() const {
  if (t_.empty()) return is_exact() ? "0" : "O(b^" + std::to_string(prec_) + ")";
  std::ostringstream os;
  bool first = true;
  // Display highest a-degree first, lowest b-exponent first within it.
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    auto [d, m] = it->first;
    std::string cs = it->second.str();
    if (!first) {
      if (!cs.empty() && cs[0] == '-') {
        os << " - ";
        cs = cs.substr(1);
      } else {
        os << " + ";
      }
    }
    first = false;
    bool unit = cs == "1", negunit = cs == "-1";
    if (m == 0 && d == 0) {
      os << cs;
      continue;
    }
    if (negunit)
      os << "-";
    else if (!unit) {
      bool composite = cs.find(' ') != std::string::npos;
      os << (composite ? "(" + cs + ")" : cs) << "*";
    }
    if (m > 0) {
      os << "b";
      if (m > 1) os << "^" << m;
      if (d > 0) os << "*";
    }
    if (d > 0) {
      os << "a";
      if (d > 1) os << "^" << d;
    }
  }
  if (!is_exact()) os << " + O(b^" << prec_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------
// Homogeneous elements and the Bernstein correspondence.

HomogeneousElement::HomogeneousElement(int degree, std::vector<Scalar> gamma)
    : k_(degree), g_(std::move(gamma)) {
  if (k_ < 0 || static_cast<int>(g_.size()) != k_ + 1)
    fail(errc::syntax_error, "homogeneous element needs k+1 coefficients");
}

HomogeneousElement HomogeneousElement::initial_form(const AbElement& x) {
  if (x.is_zero())
    fail(errc::syntax_error, "zero element has no initial form");
  int k = x.order();
  if (k >= x.precision())
    fail(errc::precision_exhausted,
         "initial form not visible at this precision");
  std::vector<Scalar> g(k + 1, Scalar(0));
  for (const auto& [key, c] : x.terms())
    if (key.first + key.second == k) g[key.first] = c;
  return HomogeneousElement(k, std::move(g));
}

AbElement HomogeneousElement::element() const {
  AbElement r;
  for (int j = 0; j <= k_; ++j)
    r += AbElement::monomial(k_ - j, j, g_[j]);
  return r;
}

HomogeneousElement operator*(const HomogeneousElement& x,
                             const HomogeneousElement& y) {
  // The defining relation is graded, so the product of homogeneous
  // elements is homogeneous of the summed degree.
  return HomogeneousElement::initial_form(x.element() * y.element());
}

std::string HomogeneousElement::str() const { return element().str(); }

Polynomial bernstein_poly_of_homogeneous(const HomogeneousElement& p) {
  if (!p.is_monic())
    fail(errc::divisor_not_monic,
         "homogeneous element must be monic in a");
  int k = p.degree();
  AbElement pe = p.element();
  // The right remainder of P by (a - lambda*b) is r(lambda) * b^k with
  // r of degree k; sample k+1 points and interpolate.
  std::vector<std::pair<Scalar, Scalar>> samples;
  for (int t = 0; t <= k; ++t) {
    TruncatedSeries lam_b =
        TruncatedSeries::monomial(1, Scalar(static_cast<long>(t)));
    TruncatedSeries rem = pe.right_divide_linear(lam_b).second;
    samples.emplace_back(Scalar(static_cast<long>(t)), rem.coeff(k));
  }
  Polynomial r = interpolate(samples);
  // B(x) = monic normalization of r(-x).
  Polynomial rx = r.compose(Polynomial(std::vector<Scalar>{Scalar(0), Scalar(-1)}));
  return rx.make_monic();
}

HomogeneousElement homogeneous_from_bernstein(const Polynomial& b, int k) {
  if (!b.is_monic() || b.degree() != k)
    fail(errc::divisor_not_monic, "B must be monic of degree k");
  // b^k B(-b^-1 a) = [B(k - u) with u := b^-1 a] * b^k, and u^d * b^k
  // stays in the algebra for d <= k; the monic-in-a representative is
  // (-1)^k times that expansion.
  Polynomial shifted = b.compose(
      Polynomial(std::vector<Scalar>{Scalar(static_cast<long>(k)), Scalar(-1)}));
  AbElement acc;
  AbElement ud_bk = AbElement::monomial(k, 0, Scalar(1));  // u^0 b^k
  for (int d = 0; d <= k; ++d) {
    acc += shifted.coeff(d) * ud_bk;
    if (d < k)
      ud_bk = (AbElement::a() * ud_bk).shifted_b(-1);  // u * (previous)
  }
  if (k % 2) acc = -acc;
  return HomogeneousElement::initial_form(acc);
}

std::vector<Rational> factor_homogeneous(const HomogeneousElement& p) {
  Polynomial b = bernstein_poly_of_homogeneous(p);
  RootList rl = rational_roots(b);
  if (!rl.fully_split)
    fail(errc::not_fully_split,
         "Bernstein polynomial has irrational roots: residual " +
             rl.residual.str());
  // Principal ordering: roots nonincreasing.
  std::vector<Rational> roots = rl.roots;
  std::reverse(roots.begin(), roots.end());
  return factor_homogeneous(p, std::move(roots));
}

std::vector<Rational> factor_homogeneous(const HomogeneousElement& p,
                                         std::vector<Rational> roots_in_order) {
  int k = p.degree();
  if (static_cast<int>(roots_in_order.size()) != k)
    fail(errc::syntax_error, "need exactly k roots");
  std::vector<Rational> lambdas(k);
  for (int j = 1; j <= k; ++j)
    lambdas[j - 1] = -roots_in_order[j - 1] + Rational(k - j);
  // Verify by dividing off the factors right to left.
  AbElement rest = p.element();
  for (int j = k; j >= 1; --j) {
    auto [q, rem] = rest.right_divide_linear(
        TruncatedSeries::monomial(1, Scalar(lambdas[j - 1])));
    if (!rem.is_zero())
      fail(errc::not_fully_split,
           "claimed factor a - " + lambdas[j - 1].str() +
               "*b does not divide exactly");
    rest = q;
  }
  if (!(rest - AbElement::one()).is_zero())
    fail(errc::not_fully_split, "factorization did not exhaust the element");
  return lambdas;
}

}  // namespace abm
