#include "doctest.h"

#include "abmod/dense_poly.hpp"
#include "abmod/errors.hpp"
#include "abmod/matrix.hpp"
#include "abmod/rational.hpp"
#include "abmod/scalar.hpp"
#include "abmod/series.hpp"
#include "abmod/spectral.hpp"

using namespace abm;

namespace {

TruncatedSeries ts(std::vector<long> coeffs, int prec) {
  std::vector<Scalar> c;
  for (long v : coeffs) c.push_back(Scalar(v));
  return TruncatedSeries::from_coeffs(std::move(c), prec);
}

}  // namespace

TEST_CASE("rational basics") {
  CHECK(Rational(4, 6) == Rational(2, 3));
  CHECK(Rational::from_string("-3/2").str() == "-3/2");
  CHECK(Rational::from_string("7").is_integer());
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK((-Rational(1, 2)).is_negative());
  CHECK(Rational(3, 4).inverse() == Rational(4, 3));
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK_THROWS_AS(Rational::from_string("1/0"), ab_error);
  CHECK_THROWS_AS(Rational::from_string("x"), ab_error);
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(1, 2).pow(0) == Rational(1));
}

TEST_CASE("class representative in (0,1]") {
  CHECK(class_representative(Rational(3, 2)) == Rational(1, 2));
  CHECK(class_shift(Rational(3, 2)) == 1);
  CHECK(class_representative(Rational(1)) == Rational(1));
  CHECK(class_shift(Rational(1)) == 0);
  CHECK(class_representative(Rational(-1, 2)) == Rational(1, 2));
  CHECK(class_shift(Rational(-1, 2)) == -1);
  CHECK(class_representative(Rational(0)) == Rational(1));
  CHECK(class_shift(Rational(0)) == -1);
  CHECK(class_representative(Rational(3)) == Rational(1));
  CHECK(class_shift(Rational(3)) == 2);
}

TEST_CASE("scalar field with tau") {
  Scalar t = Scalar::tau();
  CHECK(!t.is_rational());
  CHECK((t - t).is_rational());
  CHECK((t / t) == Scalar(1));
  Scalar x = (t * t - Scalar(1)) / (t - Scalar(1));
  CHECK(x == t + Scalar(1));
  CHECK((t + Scalar(1)) * (t - Scalar(1)) == t * t - Scalar(1));
  CHECK_THROWS_AS(t.rat(), ab_error);
  CHECK(Scalar(Rational(1, 2)).rat() == Rational(1, 2));
  CHECK(t.inverse() * t == Scalar(1));
  // Demotion makes rational values compare equal however they arose.
  Scalar y = t * t.inverse();
  CHECK(y.is_rational());
  CHECK(y == Scalar(1));
}

TEST_CASE("polynomial arithmetic") {
  using P = Poly<Rational>;
  P x = P::x();
  P p = (x + P(Rational(1))) * (x + P(Rational(1)));
  P q = (x + P(Rational(1))) * (x + P(Rational(2)));
  CHECK(P::gcd(p, q) == x + P(Rational(1)));
  auto [quo, rem] = q.divmod(x + P(Rational(1)));
  CHECK(quo == x + P(Rational(2)));
  CHECK(rem.is_zero());
  CHECK(p.eval(Rational(-1)).is_zero());
  CHECK(p.derivative() == Rational(2) * (x + P(Rational(1))));
  // Interpolation: through (0,1), (1,2), (2,5) runs x^2 + 1.
  std::vector<std::pair<Rational, Rational>> pts{
      {Rational(0), Rational(1)}, {Rational(1), Rational(2)},
      {Rational(2), Rational(5)}};
  P f = interpolate(pts);
  CHECK(f == x * x + P(Rational(1)));
}

TEST_CASE("series multiplication tracks precision") {
  CHECK(ts({1, 2}, 3) * ts({1, 3}, 3) == ts({1, 5, 6}, 3));
  CHECK(ts({1, 1}, 4) * ts({1, -1}, 4) == ts({1, 0, -1}, 4));
  // Valuation refinement: 1 (N=3) times b^2 (N=3) is known to N=3.
  TruncatedSeries r = ts({1}, 3) * ts({0, 0, 1}, 3);
  CHECK(r.precision() == 3);
  CHECK(r.coeff(2) == Scalar(1));
  // Exact times truncated gains the shift: b^2 * S' with S' at N-1.
  TruncatedSeries d = ts({1, 1, 1}, 3).derivative();
  CHECK(d.precision() == 2);
  TruncatedSeries gain = TruncatedSeries::monomial(2) * d;
  CHECK(gain.precision() == 4);
}

TEST_CASE("series inversion") {
  TruncatedSeries one = TruncatedSeries::constant(Scalar(1));
  CHECK(one.invert().is_one());
  TruncatedSeries i = ts({1, 1}, 3).invert();
  CHECK(i == ts({1, -1, 1}, 3));
  CHECK((i * ts({1, 1}, 3)).is_one());
  CHECK_THROWS_AS(ts({0, 1}, 3).invert(), ab_error);
}

TEST_CASE("series derivative") {
  CHECK(ts({1, 1, 1}, 3).derivative() == ts({1, 2}, 2));
  CHECK(TruncatedSeries::constant(Scalar(5)).derivative().is_zero());
  TruncatedSeries b3 = ts({0, 0, 0, 1}, 5);
  CHECK(b3.derivative() == ts({0, 0, 3}, 4));
}

TEST_CASE("series composition") {
  // (1 + b)^2 via compose: f = 1 + 2b + b^2, inner z + z^2 at N=4:
  // f(inner) = 1 + 2z + 3z^2 + 2z^3 + z^4 -> truncated at 4.
  TruncatedSeries f = ts({1, 2, 1}, 4);
  TruncatedSeries inner = ts({0, 1, 1}, 4);
  TruncatedSeries got = f.compose(inner);
  CHECK(got.precision() == 4);
  CHECK(got.coeff(0) == Scalar(1));
  CHECK(got.coeff(1) == Scalar(2));
  CHECK(got.coeff(2) == Scalar(3));
  CHECK(got.coeff(3) == Scalar(2));
  CHECK_THROWS_AS(f.compose(ts({1, 1}, 4)), ab_error);
}

TEST_CASE("laurent series") {
  LaurentSeries x = LaurentSeries::monomial(-2) + LaurentSeries::monomial(-1);
  CHECK(x.valuation() == -2);
  LaurentSeries sq = x * x;
  CHECK(sq.coeff(-4) == Scalar(1));
  CHECK(sq.coeff(-3) == Scalar(2));
  CHECK(sq.coeff(-2) == Scalar(1));
  // (b^2 (1 + b))^-1 = b^-2 (1 - b + b^2 - ...).
  LaurentSeries y(2, {Scalar(1), Scalar(1)}, 8);
  LaurentSeries inv = y.invert();
  CHECK(inv.valuation() == -2);
  CHECK(inv.coeff(-2) == Scalar(1));
  CHECK(inv.coeff(-1) == Scalar(-1));
  CHECK(inv.coeff(0) == Scalar(1));
  CHECK((inv * y).coeff(0) == Scalar(1));
  CHECK_THROWS_AS(x.to_truncated(), ab_error);
  CHECK(LaurentSeries(ts({1, 2}, 5)).to_truncated() == ts({1, 2}, 5));
}

TEST_CASE("rational root hunting") {
  RatPoly x = RatPoly::x();
  RatPoly h = (x + RatPoly(Rational(1, 2))) * (x + RatPoly(Rational(1, 2)));
  RootList rl = rational_roots(h);
  REQUIRE(rl.roots.size() == 2);
  CHECK(rl.roots[0] == Rational(-1, 2));
  CHECK(rl.roots[1] == Rational(-1, 2));
  CHECK(rl.fully_split);

  RootList none = rational_roots(x * x + RatPoly(Rational(1)));
  CHECK(none.roots.empty());
  CHECK(!none.fully_split);
  CHECK(none.residual == x * x + RatPoly(Rational(1)));

  // Non-monic integer form: 6x^2 + 5x + 1 has roots -1/2, -1/3.
  RootList two = rational_roots(RatPoly(
      std::vector<Rational>{Rational(1), Rational(5), Rational(6)}));
  REQUIRE(two.roots.size() == 2);
  CHECK(two.roots[0] == Rational(-1, 2));
  CHECK(two.roots[1] == Rational(-1, 3));
  CHECK(two.fully_split);

  // Mixed: (x - 2)(x^2 + 1).
  RootList mixed = rational_roots(
      (x - RatPoly(Rational(2))) * (x * x + RatPoly(Rational(1))));
  REQUIRE(mixed.roots.size() == 1);
  CHECK(mixed.roots[0] == Rational(2));
  CHECK(!mixed.fully_split);
  CHECK(mixed.residual == x * x + RatPoly(Rational(1)));

  // Roots at zero are picked up with multiplicity.
  RootList zero = rational_roots(x * x * (x + RatPoly(Rational(1))));
  CHECK(zero.roots.size() == 3);
  CHECK(zero.fully_split);
}

TEST_CASE("matrix algebra over the scalars") {
  Matrix<Scalar> m{{Scalar(0), Scalar(Rational(1, 4))},
                   {Scalar(-1), Scalar(-1)}};
  Polynomial cp = char_poly(m);
  Polynomial expect(std::vector<Scalar>{Scalar(Rational(1, 4)), Scalar(1),
                                        Scalar(1)});
  CHECK(cp == expect);
  CHECK(min_poly(m) == expect);

  Matrix<Scalar> id = Matrix<Scalar>::identity(2);
  CHECK(min_poly(id) == Polynomial(std::vector<Scalar>{Scalar(-1), Scalar(1)}));
  Polynomial cid = char_poly(id);
  CHECK(cid.degree() == 2);
  CHECK(cid.eval(Scalar(1)).is_zero());

  Matrix<Scalar> z(3, 3);
  CHECK(min_poly(z) == Polynomial(std::vector<Scalar>{Scalar(0), Scalar(1)}));

  // min divides char.
  auto [q, r] = char_poly(m).divmod(min_poly(m));
  CHECK(r.is_zero());

  // Inverse and determinant.
  Matrix<Scalar> a{{Scalar(1), Scalar(2)}, {Scalar(3), Scalar(4)}};
  CHECK(determinant(a) == Scalar(-2));
  CHECK(inverse(a) * a == Matrix<Scalar>::identity(2));

  // Kernel of a rank-1 projector-like matrix.
  Matrix<Scalar> p{{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}};
  auto ker = kernel_basis(p);
  REQUIRE(ker.size() == 1);
  CHECK(p.apply(ker[0])[0].is_zero());
  CHECK(p.apply(ker[0])[1].is_zero());
}
