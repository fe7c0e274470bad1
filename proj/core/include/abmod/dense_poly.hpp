#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "abmod/errors.hpp"

namespace abm {

// Dense univariate polynomial over a field K. K needs +,-,*,/ plus
// is_zero() and str(). The zero polynomial has an empty coefficient list
// and degree -1.
template <class K>
class Poly {
public:
  Poly() = default;
  Poly(K constant) {  // NOLINT: implicit by design
    c_.push_back(std::move(constant));
    normalize();
  }
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }
  static Poly monomial(std::size_t deg, K coeff = K(1)) {
    std::vector<K> c(deg + 1, K(0));
    c[deg] = std::move(coeff);
    return Poly(std::move(c));
  }

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<K>& coeffs() const { return c_; }

  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(0); }
  const K& leading() const { return c_.back(); }  // undefined on zero

  bool is_monic() const {
    return !c_.empty() && (c_.back() - K(1)).is_zero();
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = K(0) - v;
    return r;
  }

  friend Poly operator+(const Poly& p, const Poly& q) {
    std::vector<K> c(std::max(p.c_.size(), q.c_.size()), K(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coeff(i) + q.coeff(i);
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }
  friend Poly operator*(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return Poly();
    std::vector<K> c(p.c_.size() + q.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i)
      for (std::size_t j = 0; j < q.c_.size(); ++j)
        c[i + j] += p.c_[i] * q.c_[j];
    return Poly(std::move(c));
  }
  friend Poly operator*(const K& s, const Poly& p) {
    Poly r = p;
    for (auto& v : r.c_) v = s * v;
    r.normalize();
    return r;
  }

  friend bool operator==(const Poly& p, const Poly& q) {
    return (p - q).is_zero();
  }

  // Euclidean division: *this = q*d + r with deg r < deg d.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) fail(errc::not_a_unit, "polynomial division by zero");
    Poly r = *this;
    std::vector<K> q;
    long dd = d.degree();
    if (r.degree() >= dd) q.assign(r.degree() - dd + 1, K(0));
    K lead_inv = K(1) / d.leading();
    while (!r.is_zero() && r.degree() >= dd) {
      long shift = r.degree() - dd;
      K f = r.leading() * lead_inv;
      q[shift] = f;
      for (long i = 0; i <= dd; ++i)
        r.c_[shift + i] = r.c_[shift + i] - f * d.c_[i];
      r.normalize();
    }
    return {Poly(std::move(q)), r};
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<K> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = K(long(i)) * c_[i];
    return Poly(std::move(c));
  }

  K eval(const K& x) const {
    K acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly compose(const Poly& inner) const {
    Poly acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * inner + Poly(c_[i]);
    return acc;
  }

  Poly make_monic() const {
    if (is_zero()) return *this;
    return (K(1) / leading()) * *this;
  }

  Poly pow(unsigned e) const {
    Poly acc{K(1)};
    Poly base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  static Poly gcd(Poly p, Poly q) {
    while (!q.is_zero()) {
      Poly r = p.divmod(q).second;
      p = std::move(q);
      q = std::move(r);
    }
    return p.make_monic();
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      std::string cs = c_[i].str();
      if (!first) {
        if (!cs.empty() && cs[0] == '-') {
          os << " - ";
          cs = cs.substr(1);
        } else {
          os << " + ";
        }
      }
      first = false;
      bool unit_coeff = (c_[i] - K(1)).is_zero() || (c_[i] + K(1)).is_zero();
      if (i == 0) {
        os << cs;
      } else {
        if (!unit_coeff) {
          // Parenthesize composite coefficient strings for readability.
          if (cs.find_first_of("+- ") != std::string::npos &&
              !(cs.find_first_of("+- ") == 0 &&
                cs.find_first_of("+- ", 1) == std::string::npos))
            os << "(" << cs << ")*";
          else
            os << cs << "*";
        } else if ((c_[i] + K(1)).is_zero()) {
          os << "-";
        }
        os << var;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

private:
  void normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<K> c_;
};

// Lagrange interpolation through distinct nodes (x_i, y_i).
template <class K>
Poly<K> interpolate(const std::vector<std::pair<K, K>>& points) {
  Poly<K> acc;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Poly<K> li{K(1)};
    K denom(1);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      li = li * Poly<K>(std::vector<K>{K(0) - points[j].first, K(1)});
      denom = denom * (points[i].first - points[j].first);
    }
    acc = acc + (points[i].second / denom) * li;
  }
  return acc;
}

}  // namespace abm
