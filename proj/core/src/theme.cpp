#include "abmod/theme.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <utility>

#include "abmod/errors.hpp"
#include "abmod/matrix.hpp"

namespace abm {

namespace {

// pi applied through the module action: sum_d c_d(b) . (a^d v).
ModuleElement apply_op(const AbModule& m, const AbElement& op,
                       const ModuleElement& v) {
  ModuleElement acc = m.zero();
  ModuleElement pw = v;
  int dmax = op.a_degree();
  for (int d = 0; d <= dmax; ++d) {
    TruncatedSeries c = op.series_coeff(d);
    if (!c.is_zero()) acc = acc + c * pw;
    if (d < dmax) pw = m.apply_a(pw);
  }
  return acc;
}

Lattice::Column column_of(const ModuleElement& v) {
  Lattice::Column col;
  col.reserve(v.coords.size());
  for (const auto& s : v.coords) col.push_back(s);
  return col;
}

// v, a.v, ..., a^{k-1}.v span the module over C[[b]]. Rank alone is
// fooled by spans of positive valuation, so every unit basis column is
// checked for membership.
bool generates(const AbModule& m, const ModuleElement& v, int n) {
  int k = m.rank();
  std::vector<Lattice::Column> cols;
  ModuleElement pw = v;
  for (int d = 0; d < k; ++d) {
    cols.push_back(column_of(pw));
    if (d + 1 < k) pw = m.apply_a(pw);
  }
  Lattice lat = Lattice::from_columns(k, std::move(cols), n);
  if (lat.rank() != k) return false;
  for (int i = 0; i < k; ++i) {
    Lattice::Column e(k);
    e[i] = LaurentSeries::monomial(0, Scalar(1));
    if (!lat.contains(e)) return false;
  }
  return true;
}

// Weight vectors for searching a kernel span: each basis vector alone,
// subsets of size 2..cap with unit and with tau-power weights, the full
// sum and full tau-curve, and a single long tau-curve when the basis is
// too large to enumerate subsets.
std::vector<std::vector<Scalar>> combination_weights(int d, int cap) {
  std::vector<std::vector<Scalar>> out;
  for (int i = 0; i < d; ++i) {
    std::vector<Scalar> w(d, Scalar(0));
    w[i] = Scalar(1);
    out.push_back(std::move(w));
  }
  if (d < 2) return out;
  Scalar tau = Scalar::tau();
  auto curve_pair = [&](unsigned mask) {
    std::vector<Scalar> unit(d, Scalar(0));
    std::vector<Scalar> curve(d, Scalar(0));
    Scalar wgt(1);
    for (int i = 0; i < d; ++i) {
      if (!(mask & (1u << i))) continue;
      unit[i] = Scalar(1);
      curve[i] = wgt;
      wgt = wgt * tau;
    }
    out.push_back(std::move(unit));
    out.push_back(std::move(curve));
  };
  if (d <= 12) {
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
      int size = std::popcount(mask);
      if (size < 2 || size > std::max(cap, 2)) continue;
      curve_pair(mask);
    }
    curve_pair((1u << d) - 1);
  } else {
    std::vector<Scalar> curve(d);
    Scalar wgt(1);
    for (int i = 0; i < d; ++i) {
      curve[i] = wgt;
      wgt = wgt * tau;
    }
    out.push_back(std::move(curve));
  }
  return out;
}

ModuleElement combine(const AbModule& m,
                      const std::vector<std::vector<Scalar>>& ker,
                      const std::vector<Scalar>& wgt, int n) {
  std::vector<Scalar> flat(static_cast<std::size_t>(m.rank()) * n, Scalar(0));
  for (std::size_t v = 0; v < ker.size(); ++v) {
    if (wgt[v].is_zero()) continue;
    for (std::size_t c = 0; c < flat.size(); ++c)
      flat[c] += wgt[v] * ker[v][c];
  }
  return ModuleElement{unflatten(flat, m.rank(), n)};
}

}  // namespace

ThemeCheck is_theme(const AbModule& f) {
  if (!f.is_geometric())
    fail(errc::not_geometric, "theme detection needs a geometric module");
  ThemeCheck tc;
  if (f.rank() == 0) return tc;
  std::size_t count = 0;
  for (const auto& fam : rank1_normal_submodules(f)) count += fam.basis.size();
  if (count != 1) return tc;
  FrescoCheck fc = is_fresco(f);
  if (!fc.ok)
    fail(errc::cross_check_failed,
         "unique rank-1 submodule on a module with no power basis");
  FrescoNormalForm nf = presentation_from_module(f, fc.generator);
  std::vector<Rational> lam = factor_homogeneous(nf.p);
  tc.ok = true;
  tc.mu = class_representative(lam[0]);
  for (const auto& l : lam)
    if (!(class_representative(l) == tc.mu))
      fail(errc::cross_check_failed,
           "unique rank-1 submodule but exponents in several classes");
  return tc;
}

Rational FundamentalData::lambda(int j) const {
  Rational l = lambda1;
  for (int i = 1; i < j; ++i) l = l + Rational(p[i - 1] - 1);
  return l;
}

std::vector<Rational> FundamentalData::lambdas() const {
  std::vector<Rational> out;
  out.reserve(rank());
  Rational l = lambda1;
  out.push_back(l);
  for (int pi : p) {
    l = l + Rational(pi - 1);
    out.push_back(l);
  }
  return out;
}

std::string FundamentalData::str() const {
  std::ostringstream os;
  os << "(" << lambda1.str() << "; [";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ", ";
    os << p[i];
  }
  os << "])";
  return os.str();
}

FundamentalData fundamental_data(const AbModule& theme) {
  FrescoCheck fc = is_fresco(theme);
  if (!fc.ok)
    fail(errc::not_a_fresco, "fundamental data needs a monogenic module");
  FrescoNormalForm nf = presentation_from_module(theme, fc.generator);
  std::vector<Rational> lam = factor_homogeneous(nf.p);
  int k = static_cast<int>(lam.size());
  Rational rep = class_representative(lam[0]);
  for (const auto& l : lam)
    if (!(class_representative(l) == rep))
      fail(errc::not_primitive, "exponents span several classes mod Z");
  FundamentalData data;
  data.lambda1 = lam[0];
  for (int j = 1; j < k; ++j) {
    Rational step = lam[j] - lam[j - 1] + Rational(1);
    if (!step.is_integer() || step < Rational(0))
      fail(errc::not_primitive,
           "successive exponents do not step by p - 1 with p >= 0");
    data.p.push_back(static_cast<int>(step.num().get_si()));
  }
  if (!(Rational(k - 1) < data.lambda1))
    fail(errc::not_primitive, "leading exponent too small for the rank");
  return data;
}

std::string VWSpace::describe_w() const {
  std::ostringstream os;
  os << "S(0) = 1, coeff of b^" << p << " nonzero, support {";
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i) os << ", ";
    os << support[i];
  }
  os << "}";
  return os.str();
}

std::vector<VWSpace> build_VW(const FundamentalData& data) {
  int k = data.rank();
  std::vector<VWSpace> out;
  for (int j = 1; j < k; ++j) {
    VWSpace vw;
    vw.p = data.p[j - 1];
    for (int i = 0; i <= k - j - 1; ++i) vw.support.push_back(i);
    int run = 0;
    for (int h = 0; j + h <= k - 1; ++h) {
      run += data.p[j - 1 + h];
      if (run >= k - j) {
        vw.has_q = true;
        vw.q = run;
        break;
      }
    }
    // q >= k - j always exceeds the staircase when present
    if (vw.has_q) vw.support.push_back(vw.q);
    if (!std::binary_search(vw.support.begin(), vw.support.end(), vw.p))
      fail(errc::cross_check_failed,
           "open-condition exponent fell outside its support space");
    out.push_back(std::move(vw));
  }
  return out;
}

std::string CanonicalForm::str() const {
  std::ostringstream os;
  os << data.str();
  for (std::size_t j = 0; j < s.size(); ++j)
    os << ", S" << (j + 1) << " = " << s[j].str();
  return os.str();
}

AbModule theme_from_canonical(const CanonicalForm& cf, int prec) {
  int k = cf.data.rank();
  if (static_cast<int>(cf.s.size()) != k - 1)
    fail(errc::syntax_error, "canonical form needs one unit per inner slot");
  std::vector<VWSpace> vw = build_VW(cf.data);
  for (int j = 0; j + 1 < k; ++j) {
    const TruncatedSeries& s = cf.s[j];
    if (!(s.coeff(0) == Scalar(1)))
      fail(errc::syntax_error, "canonical units are normalized to S(0) = 1");
    if (vw[j].p > 0 && s.coeff(vw[j].p).is_zero())
      fail(errc::syntax_error, "canonical unit drops its required b-power");
    for (int t = 1; t < s.stored_size(); ++t)
      if (!s.coeff(t).is_zero() &&
          !std::binary_search(vw[j].support.begin(), vw[j].support.end(), t))
        fail(errc::syntax_error, "canonical unit supported outside V");
  }
  AbModule m =
      module_from_presentation(make_presentation(cf.data.lambdas(), cf.s), prec);
  if (!is_theme(m).ok)
    fail(errc::cross_check_failed,
         "canonical presentation did not yield a primitive theme");
  return m;
}

namespace {

// Endomorphism-equation residual for the stacked matrix of series
// phi[dp*k2 + i] (column dp of the map, coordinate i of the target):
// for every source basis column d,
//   sum_dp action1[d][dp] . phi_col(dp)  -  a2(phi_col(d)).
int hom_dim_window(const AbModule& m1, const AbModule& m2, int w, int keep) {
  int k1 = m1.rank();
  int k2 = m2.rank();
  int kk = k1 * k2;
  auto op = [&](const std::vector<TruncatedSeries>& phi) {
    std::vector<TruncatedSeries> res(kk, TruncatedSeries(w));
    for (int d = 0; d < k1; ++d) {
      ModuleElement col{std::vector<TruncatedSeries>(
          phi.begin() + static_cast<std::ptrdiff_t>(d) * k2,
          phi.begin() + static_cast<std::ptrdiff_t>(d + 1) * k2)};
      ModuleElement av = m2.apply_a(col);
      for (int r = 0; r < k2; ++r) {
        TruncatedSeries cell = TruncatedSeries(w) - av.coords[r];
        for (int dp = 0; dp < k1; ++dp) {
          const TruncatedSeries& c1 = m1.action_column(d)[dp];
          if (c1.is_zero()) continue;
          cell = cell + c1 * phi[dp * k2 + r];
        }
        res[d * k2 + r] = cell;
      }
    }
    return res;
  };
  std::vector<std::vector<Scalar>> ker =
      kernel_basis(operator_matrix(kk, w, op));
  if (ker.empty()) return 0;
  // compare kernel vectors only where the window constrains them
  Matrix<Scalar> proj(ker.size(), static_cast<std::size_t>(kk) * keep);
  for (std::size_t v = 0; v < ker.size(); ++v)
    for (int t = 0; t < keep; ++t)
      for (int i = 0; i < kk; ++i)
        proj(v, static_cast<std::size_t>(t) * kk + i) = ker[v][t * kk + i];
  return static_cast<int>(rank(proj));
}

}  // namespace

HomDimension hom_dimension(const AbModule& m1, const AbModule& m2) {
  if (!m1.is_geometric() || !m2.is_geometric())
    fail(errc::not_geometric, "hom spaces are computed between geometric modules");
  if (m1.rank() == 0 || m2.rank() == 0) return {0, true};
  int n = std::min(finite_window(m1.precision()),
                   finite_window(m2.precision()));
  // Solutions mod b^n are compared at the fixed level m. Truncation
  // artifacts live in a band below the window top, so they vanish at m
  // once n - m is deep enough, while genuine maps keep full rank there.
  // Growing the window can only shrink the projected image, hence the
  // stabilization check against the next smaller window at the same m.
  int m = n / 2;
  if (m < 3 || n - m < 3)
    fail(errc::precision_exhausted,
         "window too small to separate hom solutions from truncation");
  HomDimension hd;
  hd.dim = hom_dim_window(m1, m2, n, m);
  hd.stabilized = (hom_dim_window(m1, m2, n - 1, m) == hd.dim);
  return hd;
}

InvarianceReport is_invariant(const AbModule& theme, const Realization& r) {
  InvarianceReport rep;
  rep.hom = hom_dimension(theme, theme);
  rep.invariant = (rep.hom.dim == theme.rank());
  rep.realization_invariant = true;
  for (const auto& img : r.basis_images) {
    XiElement u(img.dim_v(), img.log_cap(), img.precision());
    for (const auto& cls : img.classes())
      u = u + monodromy_unipotent(img, cls);
    if (!realization_contains(r, u)) {
      rep.realization_invariant = false;
      break;
    }
  }
  return rep;
}

bool are_isomorphic(const AbModule& m1, const AbModule& m2) {
  if (m1.rank() != m2.rank()) return false;
  if (m1.rank() == 0) return true;
  FrescoCheck fc = is_fresco(m1);
  if (!fc.ok)
    fail(errc::not_a_fresco, "isomorphism testing needs a monogenic module");
  FrescoNormalForm nf = presentation_from_module(m1, fc.generator);
  int k = m2.rank();
  int n = std::min(finite_window(m1.precision()),
                   finite_window(m2.precision()));
  auto op = [&](const std::vector<TruncatedSeries>& v) {
    return apply_op(m2, nf.pi_normal, ModuleElement{v}).coords;
  };
  std::vector<std::vector<Scalar>> ker =
      kernel_basis(operator_matrix(k, n, op));
  if (ker.empty()) return false;
  for (const auto& wgt : combination_weights(static_cast<int>(ker.size()), k))
    if (generates(m2, combine(m2, ker, wgt, n), n)) return true;
  return false;
}

namespace {

// (a - lambda b) through the module action.
ModuleElement apply_linear(const AbModule& m, const Rational& lambda,
                           const ModuleElement& v) {
  return m.apply_a(v) - Scalar(lambda) * m.apply_b(v);
}

}  // namespace

CanonicalForm canonical_form(const AbModule& theme, bool* unique) {
  if (!is_theme(theme).ok)
    fail(errc::not_primitive, "canonical forms exist for primitive themes");
  FundamentalData data = fundamental_data(theme);
  int k = data.rank();
  CanonicalForm cf;
  cf.data = data;
  if (unique) *unique = true;
  if (k == 1) return cf;

  int n = finite_window(theme.precision());
  std::vector<Rank1Family> fams = rank1_normal_submodules(theme);
  const Rank1Family* fam = nullptr;
  for (const auto& f : fams)
    if (!f.basis.empty()) fam = &f;
  if (!fam || fams.size() != 1 || fam->basis.size() != 1)
    fail(errc::cross_check_failed, "submodule uniqueness lost on re-query");
  if (!(fam->lambda == data.lambda(1)))
    fail(errc::cross_check_failed,
         "submodule exponent disagrees with the principal factorization");
  ModuleElement y0 = fam->basis[0];

  bool uniq = true;
  std::vector<TruncatedSeries> tail;
  if (k >= 3) {
    Lattice sub = Lattice::from_columns(k, {column_of(y0)}, n);
    QuotientData qd = quotient_by(theme, sub);
    if (qd.module.rank() != k - 1)
      fail(errc::cross_check_failed, "quotient rank dropped unexpectedly");
    CanonicalForm down = canonical_form(qd.module, &uniq);
    bool match = down.data.lambda1 == data.lambda(2) &&
                 static_cast<int>(down.data.p.size()) == k - 2;
    for (int i = 0; match && i < k - 2; ++i)
      match = (down.data.p[i] == data.p[i + 1]);
    if (!match)
      fail(errc::cross_check_failed,
           "quotient data disagrees with the tail of the fundamental data");
    tail = std::move(down.s);
  }

  // With the tail units fixed, a new generator e' presents the theme
  // canonically iff  A_2 S_2^-1 ... S_{k-1}^-1 A_k e' = c S_1 y0  for a
  // nonzero constant c, S_1 = 1 + sum alpha_t b^t supported in V_1
  // (ker A_1 = C y0 for a theme). Linear in (e', c, c*alpha).
  std::vector<VWSpace> vw = build_VW(data);
  std::vector<int> sup;
  for (int t : vw[0].support)
    if (t >= 1) sup.push_back(t);
  int na = static_cast<int>(sup.size());

  std::vector<TruncatedSeries> sinv;
  sinv.reserve(tail.size());
  for (const auto& s : tail) sinv.push_back(s.truncated(n).invert());
  auto chain = [&](const ModuleElement& v) {
    ModuleElement z = apply_linear(theme, data.lambda(k), v);
    for (int j = k - 1; j >= 2; --j) {
      z = sinv[j - 2] * z;
      z = apply_linear(theme, data.lambda(j), z);
    }
    return z;
  };

  std::size_t kn = static_cast<std::size_t>(k) * n;
  Matrix<Scalar> stage = operator_matrix(
      k, n, [&](const std::vector<TruncatedSeries>& v) {
        return chain(ModuleElement{v}).coords;
      });
  Matrix<Scalar> sys(kn, kn + 1 + na);
  for (std::size_t r = 0; r < kn; ++r)
    for (std::size_t c = 0; c < kn; ++c) sys(r, c) = stage(r, c);
  {
    std::vector<Scalar> flat = flatten(y0.coords, k, n);
    for (std::size_t r = 0; r < kn; ++r) sys(r, kn) = -flat[r];
  }
  for (int a = 0; a < na; ++a) {
    ModuleElement sh = TruncatedSeries::monomial(sup[a]) * y0;
    std::vector<Scalar> flat = flatten(sh.coords, k, n);
    for (std::size_t r = 0; r < kn; ++r) sys(r, kn + 1 + a) = -flat[r];
  }

  std::vector<std::vector<Scalar>> ker = kernel_basis(sys);
  if (ker.empty())
    fail(errc::canonicalization_failed,
         "no generator change matches the canonical shape at this precision");

  // Uniqueness at this stage: a kernel direction with c = 0 but moving
  // some alpha would scale onto a base solution and yield a second form
  // (the generator condition is open), so the forms match uniquely iff
  // the (c, alpha)-projection of the kernel has rank <= 1.
  {
    Matrix<Scalar> proj(ker.size(), 1 + static_cast<std::size_t>(na));
    for (std::size_t v = 0; v < ker.size(); ++v)
      for (int j = 0; j <= na; ++j) proj(v, j) = ker[v][kn + j];
    if (rank(proj) > 1) uniq = false;
  }

  int d = static_cast<int>(ker.size());
  bool found = false;
  int attempts = 0;
  for (const auto& wgt : combination_weights(d, k)) {
    if (attempts > 400) break;
    std::vector<Scalar> x(kn + 1 + na, Scalar(0));
    for (int v = 0; v < d; ++v) {
      if (wgt[v].is_zero()) continue;
      for (std::size_t c = 0; c < x.size(); ++c) x[c] += wgt[v] * ker[v][c];
    }
    Scalar c = x[kn];
    if (c.is_zero()) continue;
    ++attempts;
    std::vector<Scalar> coeffs(vw[0].support.back() + 1, Scalar(0));
    coeffs[0] = Scalar(1);
    for (int a = 0; a < na; ++a) coeffs[sup[a]] = x[kn + 1 + a] / c;
    if (vw[0].p > 0 && coeffs[vw[0].p].is_zero()) continue;
    ModuleElement ep{unflatten(std::vector<Scalar>(x.begin(),
                                                   x.begin() + kn),
                               k, n)};
    if (!generates(theme, ep, n)) continue;
    CanonicalForm cand;
    cand.data = data;
    cand.s.push_back(TruncatedSeries::from_coeffs(coeffs, kExactPrec));
    for (const auto& t : tail) cand.s.push_back(t);
    // independent verification through the converse construction
    try {
      if (!are_isomorphic(theme_from_canonical(cand, n), theme)) continue;
    } catch (const ab_error&) {
      continue;
    }
    cf = std::move(cand);
    found = true;
    break;
  }
  if (!found)
    fail(errc::canonicalization_failed,
         "kernel candidates exhausted without a matching canonical form");
  if (unique) *unique = uniq;
  return cf;
}

}  // namespace abm
