#pragma once

#include <vector>

#include "abmod/dense_poly.hpp"
#include "abmod/matrix.hpp"
#include "abmod/rational.hpp"
#include "abmod/scalar.hpp"

namespace abm {

// Characteristic polynomial det(x*I - A), monic of degree n.
// Faddeev-LeVerrier: exact in any field of characteristic zero.
template <class K>
Poly<K> char_poly(const Matrix<K>& a) {
  std::size_t n = a.rows();
  std::vector<K> c(n + 1, K(0));
  c[n] = K(1);
  Matrix<K> m(n, n);  // zero
  for (std::size_t k = 1; k <= n; ++k) {
    // m <- a*(m + c_{k-1}*I)
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    m = a * m;
    K tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
    c[n - k] = K(0) - K(1) / K(static_cast<long>(k)) * tr;
  }
  return Poly<K>(std::move(c));
}

// Minimal polynomial via Krylov sequences: the lcm over basis vectors of
// the first linear dependency among v, Av, A^2 v, ...
template <class K>
Poly<K> min_poly(const Matrix<K>& a) {
  std::size_t n = a.rows();
  Poly<K> result{K(1)};
  for (std::size_t s = 0; s < n && result.degree() < static_cast<long>(n); ++s) {
    std::vector<std::vector<K>> krylov;
    std::vector<K> v(n, K(0));
    v[s] = K(1);
    Poly<K> ann;
    while (true) {
      // Is v in the span of the earlier vectors?
      Matrix<K> m(n, krylov.size());
      for (std::size_t j = 0; j < krylov.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = krylov[j][i];
      std::vector<K> coeffs;
      if (!krylov.empty() && solve_linear(m, v, coeffs)) {
        std::vector<K> pc(krylov.size() + 1, K(0));
        for (std::size_t j = 0; j < krylov.size(); ++j) pc[j] = K(0) - coeffs[j];
        pc[krylov.size()] = K(1);
        ann = Poly<K>(std::move(pc));
        break;
      }
      krylov.push_back(v);
      v = a.apply(v);
    }
    Poly<K> g = Poly<K>::gcd(result, ann);
    result = (result * ann).divmod(g).first;
  }
  return result;
}

// Result of hunting for rational roots. `roots` lists each root with
// multiplicity, sorted ascending; `residual` is the (monic) cofactor
// without rational roots, so fully_split means residual == 1.
struct RootList {
  std::vector<Rational> roots;
  bool fully_split = false;
  RatPoly residual;
};

RootList rational_roots(const RatPoly& p);

// Convenience overload for scalar polynomials; every coefficient must be
// rational (throws errc::field_too_small otherwise).
RootList rational_roots(const Polynomial& p);

RatPoly to_rat_poly(const Polynomial& p);
Polynomial to_scalar_poly(const RatPoly& p);

}  // namespace abm
