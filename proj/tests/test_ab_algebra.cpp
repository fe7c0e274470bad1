#include "doctest.h"

#include <random>

#include "abmod/ab_element.hpp"
#include "abmod/errors.hpp"
#include "abmod/parser.hpp"
#include "abmod/spectral.hpp"

using namespace abm;

namespace {

Scalar half() { return Scalar(Rational(1, 2)); }

AbElement lin(const Rational& lambda) {
  return AbElement::a() - AbElement::monomial(1, 0, Scalar(lambda));
}

// Deterministic random elements for property tests.
AbElement random_element(std::mt19937_64& rng, int prec) {
  std::uniform_int_distribution<int> deg(0, 3), bexp(0, 3), num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3), count(1, 5);
  AbElement x(prec);
  int n = count(rng);
  for (int i = 0; i < n; ++i)
    x += AbElement::monomial(bexp(rng), deg(rng),
                             Scalar(Rational(num(rng), den(rng))), prec);
  return x;
}

TruncatedSeries random_poly_series(std::mt19937_64& rng, int maxdeg) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), deg(0, maxdeg);
  int d = deg(rng);
  std::vector<Scalar> c(d + 1, Scalar(0));
  for (int i = 0; i <= d; ++i) c[i] = Scalar(Rational(num(rng), den(rng)));
  return TruncatedSeries::from_coeffs(std::move(c), kExactPrec);
}

}  // namespace

TEST_CASE("commutation rule produces normal forms") {
  // a*b = b*a + b^2
  AbElement ab = AbElement::a() * AbElement::b();
  CHECK(ab.coeff(1, 1) == Scalar(1));
  CHECK(ab.coeff(2, 0) == Scalar(1));
  CHECK(ab.terms().size() == 2);
  // a*b^2 = b^2*a + 2 b^3
  AbElement ab2 = AbElement::a() * (AbElement::b() * AbElement::b());
  CHECK(ab2.coeff(2, 1) == Scalar(1));
  CHECK(ab2.coeff(3, 0) == Scalar(2));
  CHECK(ab2.terms().size() == 2);
  // b*a is already normal
  AbElement ba = AbElement::b() * AbElement::a();
  CHECK(ba.coeff(1, 1) == Scalar(1));
  CHECK(ba.terms().size() == 1);
}

TEST_CASE("right form round trips") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    AbElement x = random_element(rng, 12);
    CHECK(equal_mod_prec(AbElement::from_right_terms(x.right_form(), 12), x));
  }
  // b*a in right form is a*b - b^2.
  AbElement ba = AbElement::b() * AbElement::a();
  auto rf = ba.right_form();
  CHECK(rf.at({1, 1}) == Scalar(1));
  CHECK(rf.at({0, 2}) == Scalar(-1));
}

TEST_CASE("worked product of two linear factors") {
  AbElement p = lin(Rational(3, 2)) * lin(Rational(1, 2));
  CHECK(p.coeff(0, 2) == Scalar(1));
  CHECK(p.coeff(1, 1) == Scalar(-2));
  CHECK(p.coeff(2, 0) == Scalar(Rational(1, 4)));
  CHECK(p.terms().size() == 3);
  CHECK(p.is_exact());
}

TEST_CASE("ring axioms at fixed precision") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    AbElement x = random_element(rng, 10);
    AbElement y = random_element(rng, 10);
    AbElement z = random_element(rng, 10);
    CHECK(equal_mod_prec((x * y) * z, x * (y * z)));
    CHECK(equal_mod_prec(x * (y + z), x * y + x * z));
    CHECK(equal_mod_prec(AbElement::one() * x, x));
    CHECK(equal_mod_prec(x * AbElement::one(), x));
  }
}

TEST_CASE("master commutation identity") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    TruncatedSeries s = random_poly_series(rng, 10);
    AbElement sb = AbElement::from_series(s);
    AbElement lhs = AbElement::a() * sb - sb * AbElement::a() -
                    AbElement::from_series(
                        TruncatedSeries::monomial(2) * s.derivative());
    CHECK(lhs.is_zero());
  }
}

TEST_CASE("right division by a - T(b)") {
  AbElement x = lin(Rational(3, 2)) * lin(Rational(1, 2));

  SUBCASE("exact factor") {
    auto [q, r] = x.right_divide_linear(TruncatedSeries::monomial(1, half()));
    CHECK(r.is_zero());
    CHECK(equal_mod_prec(q, lin(Rational(3, 2))));
  }
  SUBCASE("remainder as a function of lambda") {
    // lambda = 2: r = (4 - 2 + 1/4) b^2.
    auto [q, r] = x.right_divide_linear(TruncatedSeries::monomial(1, Scalar(2)));
    CHECK(r.coeff(2) == Scalar(Rational(9, 4)));
  }
  SUBCASE("self division") {
    AbElement d = lin(Rational(1, 2));
    auto [q, r] = right_divide(d, d);
    CHECK(r.is_zero());
    CHECK(equal_mod_prec(q, AbElement::one()));
  }
  SUBCASE("reconstruction on random input") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      AbElement e = random_element(rng, 12);
      TruncatedSeries t = random_poly_series(rng, 3).truncated(12);
      auto [q, r] = e.right_divide_linear(t);
      AbElement back = q * (AbElement::a() - AbElement::from_series(t)) +
                       AbElement::from_series(r);
      CHECK(equal_mod_prec(back, e));
    }
  }
  SUBCASE("divisor must be monic linear") {
    CHECK_THROWS_AS(right_divide(x, Scalar(2) * AbElement::a()), ab_error);
    CHECK_THROWS_AS(right_divide(x, x), ab_error);
  }
}

TEST_CASE("bernstein polynomial of a homogeneous element") {
  HomogeneousElement p2 = HomogeneousElement::initial_form(
      lin(Rational(3, 2)) * lin(Rational(1, 2)));
  Polynomial b = bernstein_poly_of_homogeneous(p2);
  Polynomial expect(std::vector<Scalar>{Scalar(Rational(1, 4)), Scalar(1),
                                        Scalar(1)});
  CHECK(b == expect);

  HomogeneousElement p1 = HomogeneousElement::initial_form(lin(Rational(5)));
  CHECK(bernstein_poly_of_homogeneous(p1) ==
        Polynomial(std::vector<Scalar>{Scalar(5), Scalar(1)}));

  // b^k alone is not monic in a.
  HomogeneousElement bk(2, {Scalar(1), Scalar(0), Scalar(0)});
  CHECK_THROWS_AS(bernstein_poly_of_homogeneous(bk), ab_error);
}

TEST_CASE("homogeneous element from bernstein polynomial") {
  Polynomial b1(std::vector<Scalar>{half(), Scalar(1)});
  HomogeneousElement h1 = homogeneous_from_bernstein(b1, 1);
  CHECK(equal_mod_prec(h1.element(), lin(Rational(1, 2))));

  Polynomial b2 = b1 * b1;
  HomogeneousElement h2 = homogeneous_from_bernstein(b2, 2);
  CHECK(equal_mod_prec(h2.element(),
                       lin(Rational(3, 2)) * lin(Rational(1, 2))));

  Polynomial bx(std::vector<Scalar>{Scalar(0), Scalar(1)});
  CHECK(equal_mod_prec(homogeneous_from_bernstein(bx, 1).element(),
                       AbElement::a()));
}

TEST_CASE("correspondence round trips") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  for (int k = 1; k <= 6; ++k) {
    for (int trial = 0; trial < 8; ++trial) {
      Polynomial b{Scalar(1)};
      for (int j = 0; j < k; ++j) {
        Polynomial f(std::vector<Scalar>{Scalar(Rational(num(rng), den(rng))),
                                         Scalar(1)});
        b = b * f;
      }
      HomogeneousElement h = homogeneous_from_bernstein(b, k);
      CHECK(h.is_monic());
      CHECK(bernstein_poly_of_homogeneous(h) == b);
    }
  }
  // The correspondence is defined for any monic B, split or not.
  Polynomial irr(std::vector<Scalar>{Scalar(1), Scalar(0), Scalar(1)});
  CHECK(bernstein_poly_of_homogeneous(homogeneous_from_bernstein(irr, 2)) ==
        irr);
}

TEST_CASE("factoring homogeneous elements") {
  HomogeneousElement p2 = HomogeneousElement::initial_form(
      lin(Rational(3, 2)) * lin(Rational(1, 2)));
  std::vector<Rational> l = factor_homogeneous(p2);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == Rational(3, 2));
  CHECK(l[1] == Rational(1, 2));

  std::vector<Rational> single =
      factor_homogeneous(HomogeneousElement::initial_form(lin(Rational(5))));
  REQUIRE(single.size() == 1);
  CHECK(single[0] == Rational(5));

  Polynomial irr(std::vector<Scalar>{Scalar(1), Scalar(0), Scalar(1)});
  CHECK_THROWS_AS(factor_homogeneous(homogeneous_from_bernstein(irr, 2)),
                  ab_error);

  // lambda_j + j nondecreasing on random split polynomials.
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  for (int trial = 0; trial < 15; ++trial) {
    int k = 1 + trial % 4;
    Polynomial b{Scalar(1)};
    for (int j = 0; j < k; ++j)
      b = b * Polynomial(std::vector<Scalar>{
              Scalar(Rational(num(rng), den(rng))), Scalar(1)});
    std::vector<Rational> ls =
        factor_homogeneous(homogeneous_from_bernstein(b, k));
    for (int j = 1; j < k; ++j)
      CHECK(ls[j - 1] + Rational(j) <= ls[j] + Rational(j + 1));
  }
}

TEST_CASE("bernstein multiplicativity under products") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3), kd(1, 3);
  for (int trial = 0; trial < 12; ++trial) {
    int k1 = kd(rng), k2 = kd(rng);
    auto rand_homog = [&](int k) {
      Polynomial b{Scalar(1)};
      for (int j = 0; j < k; ++j)
        b = b * Polynomial(std::vector<Scalar>{
                Scalar(Rational(num(rng), den(rng))), Scalar(1)});
      return homogeneous_from_bernstein(b, k);
    };
    HomogeneousElement p1 = rand_homog(k1), p2 = rand_homog(k2);
    Polynomial bp = bernstein_poly_of_homogeneous(p1 * p2);
    Polynomial b1 = bernstein_poly_of_homogeneous(p1);
    Polynomial b2 = bernstein_poly_of_homogeneous(p2);
    // Shift B1 by the degree of the right factor: B(x) = B1(x - k2) B2(x).
    Polynomial shifted = b1.compose(Polynomial(
        std::vector<Scalar>{Scalar(-static_cast<long>(k2)), Scalar(1)}));
    CHECK(bp == shifted * b2);
  }
}

TEST_CASE("a-degree guard") {
  CHECK_THROWS_AS(AbElement::monomial(0, kDefaultADegreeBound + 1, Scalar(1)),
                  ab_error);
}

TEST_CASE("parser") {
  SUBCASE("worked presentation text") {
    AbElement x = parse_ab_element("(a - 3/2 b)*(a - 1/2 b)", 16);
    CHECK(equal_mod_prec(x, lin(Rational(3, 2)) * lin(Rational(1, 2))));
    CHECK(x.is_exact());
  }
  SUBCASE("commutation relation collapses to zero") {
    AbElement z = parse_ab_element("a*b - b*a - b^2", 16);
    CHECK(z.is_zero());
    CHECK(z.is_exact());
  }
  SUBCASE("inv of a non-unit") {
    CHECK_THROWS_AS(parse_ab_element("inv(b)", 16), ab_error);
  }
  SUBCASE("inv expands at the requested precision") {
    AbElement x = parse_ab_element("inv(1 + b)", 3);
    CHECK(x.precision() == 3);
    CHECK(x.coeff(0, 0) == Scalar(1));
    CHECK(x.coeff(1, 0) == Scalar(-1));
    CHECK(x.coeff(2, 0) == Scalar(1));
  }
  SUBCASE("syntax errors carry a position") {
    try {
      parse_ab_element("a + $", 16);
      CHECK(false);
    } catch (const ab_error& e) {
      CHECK(e.code() == errc::syntax_error);
      CHECK(std::string(e.what()).find("position 4") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_ab_element("(a", 16), ab_error);
    CHECK_THROWS_AS(parse_ab_element("a )", 16), ab_error);
    CHECK_THROWS_AS(parse_ab_element("q", 16), ab_error);
  }
  SUBCASE("factor splitting for presentations") {
    auto fs = parse_factors("(a - 3/2 b) * inv(1 + b^2) * (a - 1/2 b)", 16);
    REQUIRE(fs.has_value());
    REQUIRE(fs->size() == 3);
    CHECK(!(*fs)[0].is_inverse);
    CHECK((*fs)[1].is_inverse);
    CHECK((*fs)[1].inv_argument.coeff(2) == Scalar(1));
    CHECK(!(*fs)[2].is_inverse);
    // Sum at top level: not a factor sequence.
    CHECK(!parse_factors("a - 1/2 b", 16).has_value());
  }
  SUBCASE("series parsing") {
    TruncatedSeries t = parse_series("z + z^2", 16);
    CHECK(t.coeff(1) == Scalar(1));
    CHECK(t.coeff(2) == Scalar(1));
    CHECK_THROWS_AS(parse_series("a + b", 16), ab_error);
  }
  SUBCASE("scalar parsing round trips") {
    CHECK(parse_scalar("3/2") == Scalar(Rational(3, 2)));
    CHECK(parse_scalar("-7") == Scalar(-7));
    Scalar t = Scalar::tau();
    CHECK(parse_scalar("2*tau + 1") == Scalar(2) * t + Scalar(1));
    Scalar frac = (Scalar(1) + t) / (Scalar(2) - t);
    CHECK(parse_scalar(frac.str()) == frac);
    CHECK(parse_scalar(Scalar(Rational(-5, 3)).str()) ==
          Scalar(Rational(-5, 3)));
  }
}
