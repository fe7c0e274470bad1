#include "abmod/theme.hpp"

#include <doctest.h>

#include "abmod/errors.hpp"

using namespace abm;

namespace {

Rational r(long n, long d = 1) { return Rational(n, d); }

TruncatedSeries one() { return TruncatedSeries::constant(Scalar(1)); }

AbModule f2() {
  return module_from_presentation(
      make_presentation({r(3, 2), r(1, 2)}, {one()}), 16);
}

// Quotient by (a - 3/2 b) (1 - b/2)^-1 (a - 3/2 b): the same Bernstein
// polynomial as f2 but with a log-bearing generator.
AbModule theta_log() {
  TruncatedSeries s = one() + TruncatedSeries::monomial(1, Scalar(r(-1, 2)));
  return module_from_presentation(make_presentation({r(3, 2), r(3, 2)}, {s}),
                                  16);
}

// s^(-1/2) Log s realized; its module is isomorphic to f2.
ThemeGeneration log_theme() {
  return generate_theme(XiElement::term(r(1, 2), 1, Scalar(1), 1));
}

}  // namespace

TEST_CASE("theme detection") {
  SUBCASE("a log-generated rank-2 module is a theme") {
    ThemeCheck tc = is_theme(f2());
    CHECK(tc.ok);
    CHECK(tc.mu == r(1, 2));
  }
  SUBCASE("rank one") {
    ThemeCheck tc = is_theme(AbModule::e_lambda(r(5, 2), 16));
    CHECK(tc.ok);
    CHECK(tc.mu == r(1, 2));
  }
  SUBCASE("an isotypic sum has a family of submodules") {
    AbModule dbl = AbModule::direct_sum(AbModule::e_lambda(r(1, 2), 16),
                                        AbModule::e_lambda(r(1, 2), 16));
    CHECK(!is_theme(dbl).ok);
  }
  SUBCASE("two classes give two submodules") {
    ThemeGeneration tg = generate_theme(
        XiElement::term(r(1, 2), 0, Scalar(1), 0) +
        XiElement::term(r(2, 3), 0, Scalar(1), 0));
    CHECK(!is_theme(tg.realization.module).ok);
  }
  SUBCASE("a repeated plain factor hides a second submodule") {
    // (a - 3/2 b)^2 with no inner unit: e2 - (1/2) b e1 spans a normal
    // rank-1 submodule at 5/2 next to the one at 3/2, so the module is
    // monogenic but not a theme (and indeed has no log realization).
    AbModule dbl = module_from_presentation(
        make_presentation({r(3, 2), r(3, 2)}, {one()}), 16);
    CHECK(!is_theme(dbl).ok);
  }
  SUBCASE("needs a geometric module") {
    CHECK_THROWS_AS(is_theme(AbModule::e_lambda(r(-1, 2), 16)), ab_error);
  }
}

TEST_CASE("fundamental data") {
  SUBCASE("log theme") {
    FundamentalData d = fundamental_data(f2());
    CHECK(d.lambda1 == r(3, 2));
    REQUIRE(d.p.size() == 1);
    CHECK(d.p[0] == 0);
    CHECK(d.rank() == 2);
    CHECK(d.lambda(2) == r(1, 2));
    CHECK(d.str() == "(3/2; [0])");
  }
  SUBCASE("inner unit shifts the step") {
    FundamentalData d = fundamental_data(theta_log());
    CHECK(d == FundamentalData{r(3, 2), {1}});
    CHECK(d.lambda(2) == r(3, 2));
  }
  SUBCASE("the data reads off the initial form only") {
    // (a - 3/2 b)^2 and the 5/2-1/2 product both carry the data of
    // their principal factorization whether or not they are themes
    AbModule dbl = module_from_presentation(
        make_presentation({r(3, 2), r(3, 2)}, {one()}), 16);
    CHECK(fundamental_data(dbl) == FundamentalData{r(3, 2), {1}});
    AbModule ss = module_from_presentation(
        make_presentation({r(5, 2), r(1, 2)}, {one()}), 16);
    CHECK(fundamental_data(ss) == FundamentalData{r(3, 2), {1}});
  }
  SUBCASE("rank one") {
    FundamentalData d = fundamental_data(AbModule::e_lambda(r(5, 2), 16));
    CHECK(d.lambda1 == r(5, 2));
    CHECK(d.p.empty());
    CHECK(d.lambdas() == std::vector<Rational>{r(5, 2)});
  }
  SUBCASE("mixed classes are rejected") {
    ThemeGeneration tg = generate_theme(
        XiElement::term(r(1, 2), 0, Scalar(1), 0) +
        XiElement::term(r(2, 3), 0, Scalar(1), 0));
    try {
      fundamental_data(tg.realization.module);
      CHECK(false);
    } catch (const ab_error& e) {
      CHECK(e.code() == errc::not_primitive);
    }
  }
}

TEST_CASE("unit parameter spaces") {
  SUBCASE("rank two") {
    auto v0 = build_VW(FundamentalData{r(3, 2), {0}});
    REQUIRE(v0.size() == 1);
    CHECK(v0[0].support == std::vector<int>{0});
    CHECK(!v0[0].has_q);

    auto v1 = build_VW(FundamentalData{r(3, 2), {1}});
    CHECK(v1[0].support == std::vector<int>{0, 1});
    CHECK(v1[0].has_q);
    CHECK(v1[0].q == 1);

    auto v2 = build_VW(FundamentalData{r(3, 2), {2}});
    CHECK(v2[0].support == std::vector<int>{0, 2});
    CHECK(v2[0].q == 2);
    CHECK(v2[0].describe_w().find("b^2") != std::string::npos);
  }
  SUBCASE("rank three accumulates the tail") {
    auto vw = build_VW(FundamentalData{r(5, 2), {1, 2}});
    REQUIRE(vw.size() == 2);
    // p1 + p2 = 3 >= 2 with h = 1
    CHECK(vw[0].support == std::vector<int>{0, 1, 3});
    CHECK(vw[0].q == 3);
    CHECK(vw[1].support == std::vector<int>{0, 2});
    CHECK(vw[1].q == 2);
  }
  SUBCASE("short tail leaves the staircase alone") {
    auto vw = build_VW(FundamentalData{r(5, 2), {0, 0}});
    CHECK(vw[0].support == std::vector<int>{0, 1});
    CHECK(!vw[0].has_q);
    CHECK(vw[1].support == std::vector<int>{0});
  }
}

TEST_CASE("module of a canonical form") {
  SUBCASE("p = 2 sample") {
    CanonicalForm cf{FundamentalData{r(3, 2), {2}},
                     {one() + TruncatedSeries::monomial(2)}};
    AbModule m = theme_from_canonical(cf, 16);
    CHECK(m.rank() == 2);
    CHECK(is_theme(m).ok);
    CHECK(fundamental_data(m) == cf.data);
  }
  SUBCASE("units must be normalized") {
    CanonicalForm cf{FundamentalData{r(3, 2), {2}},
                     {Scalar(2) * one() + TruncatedSeries::monomial(2)}};
    CHECK_THROWS_AS(theme_from_canonical(cf), ab_error);
  }
  SUBCASE("support outside V is rejected") {
    CanonicalForm cf{FundamentalData{r(3, 2), {2}},
                     {one() + TruncatedSeries::monomial(1)}};
    CHECK_THROWS_AS(theme_from_canonical(cf), ab_error);
  }
  SUBCASE("the open condition is enforced") {
    CanonicalForm cf{FundamentalData{r(3, 2), {2}}, {one()}};
    CHECK_THROWS_AS(theme_from_canonical(cf), ab_error);
  }
  SUBCASE("one unit per inner slot") {
    CanonicalForm cf{FundamentalData{r(3, 2), {2}}, {}};
    CHECK_THROWS_AS(theme_from_canonical(cf), ab_error);
  }
}

TEST_CASE("canonical form search") {
  SUBCASE("p = 0 forces the trivial unit") {
    bool uq = false;
    CanonicalForm cf = canonical_form(f2(), &uq);
    CHECK(cf.data == FundamentalData{r(3, 2), {0}});
    REQUIRE(cf.s.size() == 1);
    CHECK(cf.s[0].is_one());
    CHECK(uq);
  }
  SUBCASE("rank one is trivial") {
    bool uq = false;
    CanonicalForm cf = canonical_form(AbModule::e_lambda(r(5, 2), 16), &uq);
    CHECK(cf.data.lambda1 == r(5, 2));
    CHECK(cf.s.empty());
    CHECK(uq);
  }
  SUBCASE("the inner unit is recovered") {
    bool uq = false;
    CanonicalForm cf = canonical_form(theta_log(), &uq);
    CHECK(cf.data == FundamentalData{r(3, 2), {1}});
    REQUIRE(cf.s.size() == 1);
    CHECK(cf.s[0].coeff(0) == Scalar(1));
    CHECK(cf.s[0].coeff(1) == Scalar(r(-1, 2)));
    CHECK(uq);
  }
  SUBCASE("the realized log theme matches its presentation") {
    bool uq = false;
    CanonicalForm cf = canonical_form(log_theme().realization.module, &uq);
    CHECK(cf.data == FundamentalData{r(3, 2), {0}});
    CHECK(cf.s[0].is_one());
    CHECK(uq);
  }
  SUBCASE("p = 2 round trip") {
    CanonicalForm cf{FundamentalData{r(3, 2), {2}},
                     {one() + TruncatedSeries::monomial(2)}};
    AbModule m = theme_from_canonical(cf, 16);
    bool uq = false;
    CanonicalForm back = canonical_form(m, &uq);
    CHECK(back.data == cf.data);
    CHECK(back.s[0].coeff(1).is_zero());
    CHECK(back.s[0].coeff(2) == Scalar(1));
    CHECK(uq);
  }
  SUBCASE("rank three round trip") {
    CanonicalForm cf{FundamentalData{r(5, 2), {1, 1}},
                     {one() + TruncatedSeries::monomial(1),
                      one() + TruncatedSeries::monomial(1)}};
    AbModule m = theme_from_canonical(cf, 16);
    REQUIRE(m.rank() == 3);
    bool uq = false;
    CanonicalForm back = canonical_form(m, &uq);
    CHECK(back.data == cf.data);
    CHECK(are_isomorphic(theme_from_canonical(back, 16), m));
    // the quotient stage is invariant, so its unit comes back exactly
    CHECK(back.s[1].coeff(1) == Scalar(1));
    HomDimension hd = hom_dimension(m, m);
    CHECK(hd.stabilized);
    // unique forms are guaranteed for invariant themes
    CHECK((hd.dim != 3 || uq));
  }
  SUBCASE("only themes have one") {
    AbModule ss = module_from_presentation(
        make_presentation({r(5, 2), r(1, 2)}, {one()}), 16);
    try {
      canonical_form(ss);
      CHECK(false);
    } catch (const ab_error& e) {
      CHECK(e.code() == errc::not_primitive);
    }
  }
}

TEST_CASE("hom dimension") {
  AbModule e12 = AbModule::e_lambda(r(1, 2), 16);
  SUBCASE("rank-1 endomorphisms are scalars") {
    HomDimension hd = hom_dimension(e12, e12);
    CHECK(hd.dim == 1);
    CHECK(hd.stabilized);
  }
  SUBCASE("distinct classes have no maps") {
    HomDimension hd = hom_dimension(e12, AbModule::e_lambda(r(1, 3), 16));
    CHECK(hd.dim == 0);
    CHECK(hd.stabilized);
  }
  SUBCASE("integer shifts map one way only") {
    AbModule e52 = AbModule::e_lambda(r(5, 2), 16);
    CHECK(hom_dimension(e52, e12).dim == 1);  // e -> b^2 e
    CHECK(hom_dimension(e12, e52).dim == 0);
  }
  SUBCASE("the log theme is rigid") {
    // phi(e) must solve Pi(x) = 0; A2 = a - (1/2)b is injective here
    // ((t+1)^2 never vanishes) so only the identity line survives.
    HomDimension hd = hom_dimension(f2(), f2());
    CHECK(hd.dim == 1);
    CHECK(hd.stabilized);
  }
  SUBCASE("a positive step opens a second endomorphism") {
    HomDimension hd = hom_dimension(theta_log(), theta_log());
    CHECK(hd.dim == 2);
    CHECK(hd.stabilized);
    CanonicalForm cf{FundamentalData{r(3, 2), {2}},
                     {one() + TruncatedSeries::monomial(2)}};
    AbModule m = theme_from_canonical(cf, 16);
    CHECK(hom_dimension(m, m).dim == 2);
  }
  SUBCASE("the repeated plain factor also has two") {
    AbModule dbl = module_from_presentation(
        make_presentation({r(3, 2), r(3, 2)}, {one()}), 16);
    CHECK(hom_dimension(dbl, dbl).dim == 2);
  }
  SUBCASE("sums multiply the count") {
    AbModule dbl = AbModule::direct_sum(e12, AbModule::e_lambda(r(1, 2), 16));
    CHECK(hom_dimension(dbl, dbl).dim == 4);
  }
  SUBCASE("needs geometric modules") {
    CHECK_THROWS_AS(hom_dimension(e12, AbModule::e_lambda(r(-1, 2), 16)),
                    ab_error);
  }
}

TEST_CASE("monodromy invariance") {
  SUBCASE("log-free rank one is fixed pointwise") {
    ThemeGeneration tg =
        generate_theme(XiElement::term(r(1, 2), 0, Scalar(1), 0));
    InvarianceReport rep = is_invariant(tg.realization.module, tg.realization);
    CHECK(rep.invariant);
    CHECK(rep.hom.dim == 1);
    CHECK(rep.realization_invariant);
  }
  SUBCASE("an essential log with p = 0 cannot be stabilized") {
    ThemeGeneration tg = log_theme();
    InvarianceReport rep = is_invariant(tg.realization.module, tg.realization);
    // U(x) - x = tau s^(-1/2) is log-free but the realized span has no
    // nonzero log-free element, and this obstructs every realization:
    // the endomorphism count stays at 1.
    CHECK(!rep.invariant);
    CHECK(rep.hom.dim == 1);
    CHECK(rep.hom.stabilized);
    CHECK(!rep.realization_invariant);
  }
  SUBCASE("the invariant log theme keeps its realization") {
    ThemeGeneration tg = generate_theme(
        XiElement::term(r(1, 2), 0, Scalar(1), 1) +
        XiElement::term(r(3, 2), 1, Scalar(1), 1));
    REQUIRE(are_isomorphic(tg.realization.module, theta_log()));
    InvarianceReport rep = is_invariant(tg.realization.module, tg.realization);
    CHECK(rep.invariant);
    CHECK(rep.hom.dim == 2);
    CHECK(rep.realization_invariant);
  }
}

TEST_CASE("isomorphism testing") {
  SUBCASE("presentation against realization") {
    CHECK(are_isomorphic(f2(), log_theme().realization.module));
    CHECK(are_isomorphic(log_theme().realization.module, f2()));
  }
  SUBCASE("rank-1 classes") {
    AbModule e12 = AbModule::e_lambda(r(1, 2), 16);
    CHECK(are_isomorphic(e12, AbModule::e_lambda(r(1, 2), 16)));
    CHECK(!are_isomorphic(e12, AbModule::e_lambda(r(3, 2), 16)));
  }
  SUBCASE("rank mismatch") {
    CHECK(!are_isomorphic(AbModule::e_lambda(r(1, 2), 16), f2()));
  }
  SUBCASE("the kernel can be nonzero without a generator") {
    // Pi of the log theme kills e1 in E_{1/2} + E_{3/2}, but e1 spans a
    // rank-1 submodule only.
    AbModule sum = AbModule::direct_sum(AbModule::e_lambda(r(1, 2), 16),
                                        AbModule::e_lambda(r(3, 2), 16));
    CHECK(!are_isomorphic(f2(), sum));
  }
  SUBCASE("equal Bernstein polynomials are not enough") {
    // theta_log and the semisimple twisted product share
    // (x + 1/2)(x + 3/2)
    TruncatedSeries s = one() + TruncatedSeries::monomial(1);
    AbModule tw = module_from_presentation(
        make_presentation({r(5, 2), r(1, 2)}, {s}), 16);
    CHECK(fresco_bernstein_polynomial(tw) ==
          fresco_bernstein_polynomial(theta_log()));
    CHECK(!are_isomorphic(theta_log(), tw));
    CHECK(!are_isomorphic(tw, theta_log()));
  }
}

TEST_CASE("theme structure facts") {
  SUBCASE("semi-simple themes have rank one") {
    for (const AbModule& m : {f2(), theta_log()}) {
      ThemeCheck tc = is_theme(m);
      REQUIRE(tc.ok);
      CHECK((m.rank() == 1 || !is_semisimple(m)));
    }
  }
  SUBCASE("the principal sequence of a theme repeats its exponents") {
    JHSequence jh = principal_jh(theta_log());
    REQUIRE(jh.lambda.size() == 2);
    CHECK(jh.lambda[0] == r(3, 2));
    CHECK(jh.lambda[1] == r(3, 2));
    CHECK(jh.principal);
  }
}
