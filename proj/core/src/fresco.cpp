#include "abmod/fresco.hpp"

#include <algorithm>
#include <sstream>

#include "abmod/errors.hpp"

namespace abm {

namespace {

AbElement linear_factor(const Rational& lambda) {
  return AbElement::a() - AbElement::monomial(1, 0, Scalar(lambda));
}

}  // namespace

FrescoPresentation make_presentation(std::vector<Rational> lambda,
                                     std::vector<TruncatedSeries> s) {
  if (lambda.empty())
    fail(errc::syntax_error, "presentation needs at least one factor");
  if (s.size() + 1 != lambda.size())
    fail(errc::syntax_error, "presentation needs one unit between "
                             "consecutive linear factors");
  for (auto& u : s) {
    Scalar c0 = u.coeff(0);
    if (c0.is_zero()) fail(errc::not_a_unit, "inner series is not a unit");
    if (!u.is_one()) u = c0.inverse() * u;
  }
  return FrescoPresentation{std::move(lambda), std::move(s)};
}

std::optional<FrescoPresentation> presentation_shape(
    const std::vector<ParsedFactor>& factors) {
  if (factors.empty() || factors.size() % 2 == 0) return std::nullopt;
  std::vector<Rational> lams;
  std::vector<TruncatedSeries> units;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i % 2 == 1) {
      if (!factors[i].is_inverse) return std::nullopt;
      units.push_back(factors[i].inv_argument);
      continue;
    }
    if (factors[i].is_inverse) return std::nullopt;
    // The factor must be exactly a - lambda*b.
    const AbElement& x = factors[i].value;
    if (!(x.coeff(0, 1) - Scalar(1)).is_zero()) return std::nullopt;
    Scalar ml = x.coeff(1, 0);
    if (!ml.is_rational()) return std::nullopt;
    for (const auto& term : x.terms()) {
      int d = term.first.first, m = term.first.second;
      if (!((d == 1 && m == 0) || (d == 0 && m == 1))) return std::nullopt;
    }
    lams.push_back((-ml).rat());
  }
  return make_presentation(std::move(lams), std::move(units));
}

AbElement FrescoPresentation::element(int prec) const {
  AbElement acc = linear_factor(lambda[0]);
  for (int j = 1; j < rank(); ++j) {
    const TruncatedSeries& u = s[j - 1];
    if (!u.is_one())
      acc = acc * AbElement::from_series(u.truncated(prec).invert());
    acc = acc * linear_factor(lambda[j]);
  }
  return acc;
}

std::string FrescoPresentation::str() const {
  std::ostringstream os;
  for (int j = 0; j < rank(); ++j) {
    if (j) os << " * inv(" << s[j - 1].str() << ") * ";
    os << "(a - " << lambda[j].str() << " b)";
  }
  return os.str();
}

AbModule module_from_presentation(const FrescoPresentation& pi, int prec) {
  int k = pi.rank();
  AbElement x = pi.element(prec);
  if (x.a_degree() != k)
    fail(errc::syntax_error, "presentation does not expand to a-degree k");
  TruncatedSeries ck = x.series_coeff(k);
  if (ck.coeff(0).is_zero())
    fail(errc::not_a_unit, "leading coefficient is not a unit");
  std::vector<std::vector<TruncatedSeries>> cols(
      k, std::vector<TruncatedSeries>(k));
  for (int j = 0; j + 1 < k; ++j)
    cols[j][j + 1] = TruncatedSeries::constant(Scalar(1));
  TruncatedSeries cinv;
  bool unit_one = ck.is_one();
  if (!unit_one) cinv = ck.truncated(prec).invert();
  for (int i = 0; i < k; ++i) {
    TruncatedSeries ci = x.series_coeff(i);
    cols[k - 1][i] = unit_one ? -ci : -(cinv * ci);
  }
  return AbModule(std::move(cols), prec);
}

FrescoCheck is_fresco(const AbModule& e) {
  if (!e.is_geometric())
    fail(errc::not_geometric, "monogenicity test wants a geometric module");
  int k = e.rank();
  int prec = e.precision();

  // Lattice of a.E + b.E. It contains b times everything, so it has full
  // rank and the quotient is killed by b: the codimension counts the
  // elementary divisors equal to b.
  std::vector<Lattice::Column> cols;
  for (int j = 0; j < k; ++j) {
    Lattice::Column ca(k), cb(k);
    for (int i = 0; i < k; ++i) ca[i] = LaurentSeries(e.action_column(j)[i]);
    cb[j] = LaurentSeries::monomial(1);
    cols.push_back(std::move(ca));
    cols.push_back(std::move(cb));
  }
  SmithData sm = smith(Lattice::from_columns(k, std::move(cols), prec));

  FrescoCheck out;
  int gen_idx = -1;
  for (int i = 0; i < sm.rank; ++i) {
    out.codimension += sm.vals[i];
    if (sm.vals[i] > 0) gen_idx = i;
  }
  if (sm.rank < k || out.codimension != 1) return out;

  ModuleElement g = e.zero();
  for (int i = 0; i < k; ++i) g.coords[i] = sm.u[gen_idx][i];

  // The class of g spans E/(aE + bE); confirm its a-powers give a basis.
  std::vector<Lattice::Column> pow;
  ModuleElement v = g;
  for (int t = 0; t < k; ++t) {
    Lattice::Column col(k);
    for (int i = 0; i < k; ++i) col[i] = LaurentSeries(v.coords[i]);
    pow.push_back(std::move(col));
    if (t + 1 < k) v = e.apply_a(v);
  }
  out.ok = Lattice::from_columns(k, std::move(pow), prec) ==
           Lattice::full(k, prec);
  if (out.ok) out.generator = std::move(g);
  return out;
}

FrescoNormalForm presentation_from_module(const AbModule& f,
                                          const ModuleElement& gen) {
  int k = f.rank();
  int n = finite_window(f.precision());

  std::vector<ModuleElement> pw;
  pw.push_back(gen);
  for (int t = 0; t < k; ++t) pw.push_back(f.apply_a(pw.back()));

  // a^k.gen = sum_{j<k} u_j(b) a^j.gen, solved coefficientwise. The
  // constant-term matrix of the powers is invertible (they form a basis),
  // so the flattened square system has exactly one solution.
  Matrix<Scalar> m(k * n, k * n);
  for (int j = 0; j < k; ++j)
    for (int t = 0; t < n; ++t) {
      std::vector<TruncatedSeries> shifted(k);
      for (int i = 0; i < k; ++i)
        shifted[i] = pw[j].coords[i].shifted(t).truncated(n);
      std::vector<Scalar> col = flatten(shifted, k, n);
      for (int r = 0; r < k * n; ++r) m(r, j * n + t) = col[r];
    }
  std::vector<TruncatedSeries> top(k);
  for (int i = 0; i < k; ++i) top[i] = pw[k].coords[i].truncated(n);
  std::vector<Scalar> rhs = flatten(top, k, n);

  std::vector<Scalar> sol;
  if (!solve_linear(m, rhs, sol))
    fail(errc::not_a_fresco, "generator powers do not span the module");

  AbElement pi = AbElement::monomial(0, k, Scalar(1), n);
  for (int j = 0; j < k; ++j) {
    std::vector<Scalar> cj(sol.begin() + j * n, sol.begin() + (j + 1) * n);
    pi -= AbElement::from_series(TruncatedSeries::from_coeffs(cj, n)) *
          AbElement::monomial(0, j, Scalar(1));
  }

  HomogeneousElement p = HomogeneousElement::initial_form(pi);
  if (p.degree() != k || !p.is_monic())
    fail(errc::not_a_fresco, "generator relation has order below the rank");
  return {std::move(pi), std::move(p)};
}

namespace {

struct BernsteinPair {
  HomogeneousElement p;
  Polynomial b;
};

BernsteinPair bernstein_pair(const AbModule& f) {
  if (f.rank() == 0)
    return {HomogeneousElement(0, {Scalar(1)}), Polynomial(Scalar(1))};
  FrescoCheck chk = is_fresco(f);
  if (!chk.ok)
    fail(errc::not_a_fresco, "module has no generator of the right kind");
  FrescoNormalForm nf = presentation_from_module(f, chk.generator);
  Polynomial from_p = bernstein_poly_of_homogeneous(nf.p);
  Polynomial from_res = char_poly(f.saturate().module().residue_matrix());
  if (!(from_p == from_res))
    fail(errc::cross_check_failed,
         "initial-form and residue Bernstein polynomials disagree");
  return {std::move(nf.p), std::move(from_p)};
}

}  // namespace

HomogeneousElement bernstein_element(const AbModule& f) {
  return bernstein_pair(f).p;
}

Polynomial fresco_bernstein_polynomial(const AbModule& f) {
  return bernstein_pair(f).b;
}

ExactSequenceReport exact_sequence_check(const AbModule& f, const Lattice& g) {
  BernsteinPair full = bernstein_pair(f);
  QuotientData q = quotient_by(f, g);
  SubmoduleData s = submodule_on(f, g);
  BernsteinPair sub = bernstein_pair(s.module);
  BernsteinPair quo = bernstein_pair(q.module);

  ExactSequenceReport rep{std::move(s.module), std::move(q.module),
                          full.p,  sub.p,      quo.p,
                          full.b,  sub.b,      quo.b};
  rep.p_identity = (rep.p_f == rep.p_g * rep.p_h);
  Polynomial arg(std::vector<Scalar>{Scalar(-rep.quotient.rank()), Scalar(1)});
  rep.b_identity = (rep.b_f == rep.b_g.compose(arg) * rep.b_h);
  return rep;
}

JHSequence principal_jh(const AbModule& f) {
  int k = f.rank();
  BernsteinPair bp = bernstein_pair(f);
  std::vector<Rational> required = factor_homogeneous(bp.p);

  JHSequence out;
  AbModule current = f;
  std::vector<ModuleElement> lifts;  // basis of `current` in F coordinates
  for (int i = 0; i < k; ++i) lifts.push_back(f.basis_element(i));

  for (int j = 0; j < k; ++j) {
    const Rational& lam = required[j];
    std::vector<Rank1Family> fams = rank1_normal_submodules(current);
    const Rank1Family* pick = nullptr;
    for (const auto& fam : fams)
      if (fam.lambda == lam) pick = &fam;
    if (!pick)
      fail(errc::precision_exhausted,
           "no rank-1 normal submodule at the required exponent; raise "
           "the precision");
    if (pick->basis.size() != 1)
      fail(errc::selection_ambiguous,
           "several distinct rank-1 normal submodules share the required "
           "exponent");
    const ModuleElement& v = pick->basis[0];

    ModuleElement gen = f.zero();
    for (int i = 0; i < current.rank(); ++i)
      gen = gen + v.coords[i] * lifts[i];
    out.lambda.push_back(lam);
    out.generators.push_back(std::move(gen));
    if (j + 1 == k) break;

    Lattice::Column col(current.rank());
    for (int i = 0; i < current.rank(); ++i) col[i] = LaurentSeries(v.coords[i]);
    Lattice span = Lattice::from_columns(current.rank(), {std::move(col)},
                                         current.precision());
    QuotientData q = quotient_by(current, span);
    std::vector<ModuleElement> next_lifts;
    for (const auto& lift : q.lift) {
      ModuleElement w = f.zero();
      for (int i = 0; i < current.rank(); ++i)
        w = w + lift.coords[i] * lifts[i];
      next_lifts.push_back(std::move(w));
    }
    lifts = std::move(next_lifts);
    current = std::move(q.module);
  }

  out.principal = true;
  for (int j = 0; j + 1 < k; ++j)
    if (out.lambda[j] + Rational(j) > out.lambda[j + 1] + Rational(j + 1))
      out.principal = false;
  out.strictly_decreasing_exists = true;
  for (int i = 0; i < k && out.strictly_decreasing_exists; ++i)
    for (int j = i + 1; j < k; ++j)
      if (out.lambda[i] + Rational(i) == out.lambda[j] + Rational(j)) {
        out.strictly_decreasing_exists = false;
        break;
      }
  return out;
}

}  // namespace abm
