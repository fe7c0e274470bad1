#include "abmod/spectral.hpp"

#include <algorithm>
#include <set>

#include "abmod/errors.hpp"

namespace abm {

namespace {

// Pollard-Brent rho step for one nontrivial factor of a composite n > 1.
mpz_class pollard_rho(const mpz_class& n, unsigned long seed) {
  if (n % 2 == 0) return 2;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(seed);
  while (true) {
    mpz_class x = rng.get_z_range(n - 2) + 2;
    mpz_class c = rng.get_z_range(n - 1) + 1;
    mpz_class y = x, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      mpz_class diff = x > y ? x - y : y - x;
      if (diff == 0) break;  // cycle, retry with new parameters
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(const mpz_class& n, std::vector<mpz_class>& primes) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    primes.push_back(n);
    return;
  }
  // Small trial division first; rho only for what survives.
  mpz_class rest = n;
  for (unsigned long p = 2; p < 10000 && rest > 1; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      primes.push_back(mpz_class(p));
      rest /= p;
    }
    mpz_class sq = mpz_class(p) * p;
    if (sq > rest) break;
  }
  if (rest == 1) return;
  if (mpz_probab_prime_p(rest.get_mpz_t(), 40)) {
    primes.push_back(rest);
    return;
  }
  mpz_class d = pollard_rho(rest, 0xab0d);
  factor_into(d, primes);
  factor_into(rest / d, primes);
}

std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> primes;
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::set<mpz_class> divs{mpz_class(1)};
  for (const auto& p : primes) {
    std::set<mpz_class> next = divs;
    for (const auto& d : divs) next.insert(d * p);
    divs = std::move(next);
  }
  return {divs.begin(), divs.end()};
}

}  // namespace

RootList rational_roots(const RatPoly& p) {
  RootList out;
  if (p.is_zero())
    fail(errc::syntax_error, "root search on the zero polynomial");
  RatPoly cur = p.make_monic();

  // Peel off roots at zero first.
  std::size_t val = 0;
  while (cur.coeff(val).is_zero()) ++val;
  for (std::size_t i = 0; i < val; ++i) out.roots.push_back(Rational(0));
  if (val > 0) {
    std::vector<Rational> c(cur.coeffs().begin() + val, cur.coeffs().end());
    cur = RatPoly(std::move(c));
  }

  while (cur.degree() > 0) {
    // Integer model: multiply by the lcm of coefficient denominators.
    mpz_class lcm = 1;
    for (const auto& c : cur.coeffs())
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
    std::vector<mpz_class> ic;
    for (const auto& c : cur.coeffs())
      ic.push_back(c.num() * (lcm / c.den()));

    bool found = false;
    for (const auto& pn : positive_divisors(ic.front())) {
      for (const auto& qd : positive_divisors(ic.back())) {
        for (int sign = 1; sign >= -1 && !found; sign -= 2) {
          Rational cand(mpq_class(sign * pn, qd));
          if (cur.eval(cand).is_zero()) {
            // Deflate, keeping multiplicities: repeat on the quotient.
            out.roots.push_back(cand);
            RatPoly lin(std::vector<Rational>{-cand, Rational(1)});
            cur = cur.divmod(lin).first;
            found = true;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }

  std::sort(out.roots.begin(), out.roots.end());
  out.residual = cur.make_monic();
  out.fully_split = cur.degree() <= 0;
  return out;
}

RatPoly to_rat_poly(const Polynomial& p) {
  std::vector<Rational> c;
  c.reserve(p.coeffs().size());
  for (const auto& s : p.coeffs()) c.push_back(s.rat());
  return RatPoly(std::move(c));
}

Polynomial to_scalar_poly(const RatPoly& p) {
  std::vector<Scalar> c;
  c.reserve(p.coeffs().size());
  for (const auto& r : p.coeffs()) c.push_back(Scalar(r));
  return Polynomial(std::move(c));
}

RootList rational_roots(const Polynomial& p) {
  return rational_roots(to_rat_poly(p));
}

}  // namespace abm
