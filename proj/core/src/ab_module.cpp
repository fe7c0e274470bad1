#include "abmod/ab_module.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "abmod/errors.hpp"

namespace abm {

namespace {

// b^{-t} on a power series known to have valuation >= t.
TruncatedSeries shift_down(const TruncatedSeries& s, int t) {
  return LaurentSeries(s).shifted(-t).to_truncated();
}

}  // namespace

int ModuleElement::valuation() const {
  int v = kExactPrec;
  for (const auto& c : coords) v = std::min(v, c.valuation());
  return v;
}

ModuleElement operator+(const ModuleElement& x, const ModuleElement& y) {
  if (x.coords.size() != y.coords.size())
    fail(errc::not_normal, "element sum: rank mismatch");
  ModuleElement r = x;
  for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += y.coords[i];
  return r;
}

ModuleElement operator-(const ModuleElement& x, const ModuleElement& y) {
  if (x.coords.size() != y.coords.size())
    fail(errc::not_normal, "element difference: rank mismatch");
  ModuleElement r = x;
  for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= y.coords[i];
  return r;
}

ModuleElement operator*(const Scalar& s, const ModuleElement& x) {
  ModuleElement r = x;
  for (auto& c : r.coords) c = s * c;
  return r;
}

ModuleElement operator*(const TruncatedSeries& s, const ModuleElement& x) {
  ModuleElement r = x;
  for (auto& c : r.coords) c = s * c;
  return r;
}

std::string ModuleElement::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ", ";
    os << coords[i].str();
  }
  os << ")";
  return os.str();
}

bool equal_mod_prec(const ModuleElement& x, const ModuleElement& y) {
  if (x.coords.size() != y.coords.size()) return false;
  for (size_t i = 0; i < x.coords.size(); ++i)
    if (!equal_mod_prec(x.coords[i], y.coords[i])) return false;
  return true;
}

AbModule::AbModule(std::vector<std::vector<TruncatedSeries>> action_columns,
                   int prec)
    : k_(static_cast<int>(action_columns.size())),
      prec_(prec),
      m_(std::move(action_columns)) {
  for (const auto& col : m_) {
    if (static_cast<int>(col.size()) != k_)
      fail(errc::not_normal, "action matrix is not square");
    for (const auto& e : col) prec_ = std::min(prec_, e.precision());
  }
}

AbModule AbModule::e_lambda(const Rational& lambda, int prec) {
  return AbModule({{TruncatedSeries::monomial(1, Scalar(lambda))}}, prec);
}

AbModule AbModule::direct_sum(const AbModule& x, const AbModule& y) {
  int k = x.k_ + y.k_;
  std::vector<std::vector<TruncatedSeries>> cols(
      k, std::vector<TruncatedSeries>(k));
  for (int j = 0; j < x.k_; ++j)
    for (int i = 0; i < x.k_; ++i) cols[j][i] = x.m_[j][i];
  for (int j = 0; j < y.k_; ++j)
    for (int i = 0; i < y.k_; ++i) cols[x.k_ + j][x.k_ + i] = y.m_[j][i];
  return AbModule(std::move(cols), std::min(x.prec_, y.prec_));
}

ModuleElement AbModule::zero() const {
  return ModuleElement{std::vector<TruncatedSeries>(k_)};
}

ModuleElement AbModule::basis_element(int j) const {
  ModuleElement e = zero();
  e.coords[j] = TruncatedSeries::constant(Scalar(1));
  return e;
}

ModuleElement AbModule::apply_a(const ModuleElement& v) const {
  if (static_cast<int>(v.coords.size()) != k_)
    fail(errc::not_normal, "apply_a: rank mismatch");
  ModuleElement r = zero();
  for (int i = 0; i < k_; ++i) {
    TruncatedSeries acc = v.coords[i].derivative().shifted(2);
    for (int j = 0; j < k_; ++j) acc += m_[j][i] * v.coords[j];
    r.coords[i] = std::move(acc);
  }
  return r;
}

ModuleElement AbModule::apply_b(const ModuleElement& v) const {
  ModuleElement r = v;
  for (auto& c : r.coords) c = c.shifted(1);
  return r;
}

std::vector<LaurentSeries> AbModule::apply_a(
    const std::vector<LaurentSeries>& v) const {
  std::vector<LaurentSeries> r(k_);
  for (int i = 0; i < k_; ++i) {
    LaurentSeries acc = v[i].derivative().shifted(2);
    for (int j = 0; j < k_; ++j) acc += LaurentSeries(m_[j][i]) * v[j];
    r[i] = std::move(acc);
  }
  return r;
}

bool AbModule::is_simple_pole() const {
  for (const auto& col : m_)
    for (const auto& e : col)
      if (!e.is_zero() && e.valuation() < 1) return false;
  return true;
}

Saturation AbModule::saturate(int max_steps) const {
  int cap = max_steps > 0 ? max_steps : std::max(1, k_ * finite_window(prec_));
  Lattice lat = Lattice::full(k_, prec_);
  Saturation out;
  out.status = SatStatus::not_stabilized;
  out.steps = 0;

  for (int step = 0; step < cap; ++step) {
    std::vector<Lattice::Column> grown = lat.columns();
    for (const auto& col : lat.columns()) {
      std::vector<LaurentSeries> y = apply_a(col);
      for (auto& e : y) e = e.shifted(-1);
      grown.push_back(std::move(y));
    }
    Lattice next = Lattice::from_columns(k_, std::move(grown), lat.precision());
    if (next == lat) {
      out.status = SatStatus::saturated;
      break;
    }
    if (next.rank() < k_ || next.precision() <= 0 ||
        next.min_valuation() >= next.precision())
      fail(errc::precision_exhausted,
           "saturation: valuations dropped below the representable window");
    lat = std::move(next);
    out.steps += 1;
    out.valuation_trail.push_back(lat.min_valuation());
  }

  out.basis = lat;
  out.delta = lat.denominator_exponent();
  out.prec = lat.precision();
  if (out.status != SatStatus::saturated) return out;

  out.action.assign(k_, std::vector<TruncatedSeries>(k_));
  for (int j = 0; j < k_; ++j) {
    std::vector<LaurentSeries> y = apply_a(lat.columns()[j]);
    std::vector<LaurentSeries> coords;
    if (!lat.contains(y, &coords))
      fail(errc::precision_exhausted,
           "saturation: stable lattice is not closed under a");
    for (int i = 0; i < k_; ++i) {
      out.action[j][i] = coords[i].to_truncated();
      out.prec = std::min(out.prec, out.action[j][i].precision());
    }
  }
  return out;
}

AbModule Saturation::module() const {
  if (status != SatStatus::saturated)
    fail(errc::not_regular, "saturation did not stabilize");
  return AbModule(action, prec);
}

Matrix<Scalar> AbModule::residue_matrix() const {
  if (!is_simple_pole())
    fail(errc::not_regular, "residue matrix requires a simple pole module");
  Matrix<Scalar> r(k_, k_);
  for (int j = 0; j < k_; ++j)
    for (int i = 0; i < k_; ++i) r(i, j) = -m_[j][i].coeff(1);
  return r;
}

Polynomial AbModule::bernstein_polynomial() const {
  Saturation sat = saturate();
  if (sat.status != SatStatus::saturated)
    fail(errc::not_regular,
         "saturation did not stabilize: module is not regular at this "
         "precision");
  return min_poly(sat.module().residue_matrix());
}

bool AbModule::is_geometric() const {
  RootList roots = rational_roots(bernstein_polynomial());
  if (!roots.fully_split) return false;
  for (const auto& r : roots.roots)
    if (!(r < Rational(0))) return false;
  return true;
}

ModuleElement AbModule::apply_a_series_with_delta(const TruncatedSeries& c,
                                                  const ModuleElement& v,
                                                  int delta) const {
  ModuleElement acc = zero();
  if (v.is_zero()) return acc;
  int mstop = c.is_exact() ? c.stored_size() : c.precision();
  ModuleElement y = v;
  for (int m = 0; m < mstop; ++m) {
    if (!c.coeff(m).is_zero()) acc = acc + c.coeff(m) * y;
    if (m + 1 < mstop) {
      y = apply_a(y);
      if (y.is_zero()) break;
    }
  }
  if (!c.is_exact()) {
    // The unknown tail of c contributes from order prec(c) - delta + val(v).
    int bound = std::max(0, c.precision() - delta + v.valuation());
    for (auto& s : acc.coords) s = s.truncated(bound);
  }
  return acc;
}

ModuleElement AbModule::apply_a_series(const TruncatedSeries& c,
                                       const ModuleElement& v) const {
  Saturation sat = saturate();
  if (sat.status != SatStatus::saturated)
    fail(errc::not_regular, "apply_a_series requires a regular module");
  return apply_a_series_with_delta(c, v, sat.delta);
}

AbModule AbModule::change_of_variable(const TruncatedSeries& theta) const {
  if (!theta.coeff(0).is_zero())
    fail(errc::invalid_theta, "theta(0) must vanish");
  if (theta.coeff(1).is_zero())
    fail(errc::invalid_theta, "theta'(0) must be a unit");
  Saturation sat = saturate();
  if (sat.status != SatStatus::saturated)
    fail(errc::not_regular, "change_of_variable requires a regular module");

  int window = std::min(finite_window(prec_), finite_window(theta.precision()));
  // Cap theta' before inverting: the reciprocal of an exact polynomial
  // would otherwise keep only as many digits as the input stores.
  TruncatedSeries theta_p = theta.derivative().truncated(window);
  TruncatedSeries theta_p_inv = theta_p.invert();

  // Column j = expansion of theta(a).e_j in powers of beta = b theta'(a):
  // repeatedly strip the constant coordinates and divide by beta, i.e.
  // apply theta'(a)^{-1} after a shift by b^{-1}.
  std::vector<std::vector<std::vector<Scalar>>> coeffs(
      k_, std::vector<std::vector<Scalar>>(k_));
  std::vector<int> reach(k_, window);
  for (int j = 0; j < k_; ++j) {
    ModuleElement x = apply_a_series_with_delta(theta, basis_element(j), sat.delta);
    for (int t = 0; t < window; ++t) {
      int known = kExactPrec;
      for (const auto& s : x.coords) known = std::min(known, s.precision());
      if (known < 1) {
        reach[j] = t;
        break;
      }
      ModuleElement rem = x;
      for (int i = 0; i < k_; ++i) {
        Scalar c0 = x.coords[i].coeff(0);
        coeffs[j][i].push_back(c0);
        rem.coords[i] -= TruncatedSeries::constant(c0);
        rem.coords[i] = shift_down(rem.coords[i], 1);
      }
      x = apply_a_series_with_delta(theta_p_inv, rem, sat.delta);
    }
  }

  std::vector<std::vector<TruncatedSeries>> cols(
      k_, std::vector<TruncatedSeries>(k_));
  for (int j = 0; j < k_; ++j)
    for (int i = 0; i < k_; ++i)
      cols[j][i] = TruncatedSeries::from_coeffs(coeffs[j][i], reach[j]);
  return AbModule(std::move(cols), window);
}

bool operator==(const AbModule& x, const AbModule& y) {
  if (x.k_ != y.k_) return false;
  for (int j = 0; j < x.k_; ++j)
    for (int i = 0; i < x.k_; ++i)
      if (!equal_mod_prec(x.m_[j][i], y.m_[j][i])) return false;
  return true;
}

std::string AbModule::str() const {
  std::ostringstream os;
  os << "rank " << k_ << " module";
  if (prec_ < kExactPrec) os << " (mod b^" << prec_ << ")";
  for (int j = 0; j < k_; ++j) {
    os << "\n  a.e_" << (j + 1) << " = ";
    bool any = false;
    for (int i = 0; i < k_; ++i) {
      if (m_[j][i].is_zero()) continue;
      if (any) os << " + ";
      os << "(" << m_[j][i].str() << ")*e_" << (i + 1);
      any = true;
    }
    if (!any) os << "0";
  }
  return os.str();
}

AbModule AbModule::from_simple_pole_system(
    const std::vector<std::vector<TruncatedSeries>>& a_cols, int prec) {
  int k = static_cast<int>(a_cols.size());
  for (const auto& col : a_cols)
    if (static_cast<int>(col.size()) != k)
      fail(errc::not_normal, "coefficient matrix is not square");
  int window = finite_window(prec);

  // a.e_j = sum_i A_ij(a).b.e_i with a on the right hand side resolved
  // against the module being defined; every substitution raises the
  // b-valuation, so iterating from the zero action converges.
  std::vector<std::vector<TruncatedSeries>> cur(
      k, std::vector<TruncatedSeries>(k));
  for (int round = 0; round <= window + 1; ++round) {
    AbModule trial(cur, prec);
    std::vector<std::vector<TruncatedSeries>> next(
        k, std::vector<TruncatedSeries>(k));
    for (int j = 0; j < k; ++j) {
      ModuleElement acc = trial.zero();
      for (int i = 0; i < k; ++i) {
        const TruncatedSeries& entry = a_cols[j][i];
        if (entry.is_zero()) continue;
        ModuleElement w = trial.apply_b(trial.basis_element(i));
        int dstop = entry.is_exact() ? entry.stored_size() : entry.precision();
        for (int d = 0; d < dstop; ++d) {
          if (!entry.coeff(d).is_zero()) acc = acc + entry.coeff(d) * w;
          if (d + 1 < dstop) {
            w = trial.apply_a(w);
            if (w.is_zero() || w.valuation() >= window) break;
          }
        }
      }
      next[j] = std::move(acc.coords);
    }
    bool stable = true;
    for (int j = 0; j < k && stable; ++j)
      for (int i = 0; i < k && stable; ++i)
        stable = equal_mod_prec(next[j][i].truncated(window),
                                cur[j][i].truncated(window));
    cur = std::move(next);
    if (stable) return AbModule(std::move(cur), prec);
  }
  fail(errc::precision_exhausted,
       "simple pole system did not stabilize in the working window");
}

SubmoduleData submodule_on(const AbModule& parent, const Lattice& gens) {
  int r = gens.rank();
  std::vector<std::vector<TruncatedSeries>> cols(
      r, std::vector<TruncatedSeries>(r));
  std::vector<ModuleElement> incl;
  for (int j = 0; j < r; ++j) {
    std::vector<LaurentSeries> y = parent.apply_a(gens.columns()[j]);
    std::vector<LaurentSeries> coords;
    if (!gens.contains(y, &coords))
      fail(errc::not_normal, "submodule lattice is not stable under a");
    for (int i = 0; i < r; ++i) cols[j][i] = coords[i].to_truncated();
    ModuleElement v;
    for (const auto& e : gens.columns()[j]) v.coords.push_back(e.to_truncated());
    incl.push_back(std::move(v));
  }
  return SubmoduleData{AbModule(std::move(cols), gens.precision()),
                       std::move(incl)};
}

ModuleElement QuotientData::project(const ModuleElement& x) const {
  ModuleElement r;
  r.coords.resize(proj.size());
  for (size_t i = 0; i < proj.size(); ++i) {
    TruncatedSeries acc;
    for (size_t j = 0; j < proj[i].size(); ++j) acc += proj[i][j] * x.coords[j];
    r.coords[i] = std::move(acc);
  }
  return r;
}

QuotientData quotient_by(const AbModule& parent, const Lattice& sub) {
  SmithData sd = smith(sub);
  if (!sd.is_normal())
    fail(errc::not_normal, "quotient requires a b-saturated submodule");
  int k = parent.rank();
  int r = sd.rank;
  int q = k - r;

  QuotientData out{AbModule(std::vector<std::vector<TruncatedSeries>>(
                                q, std::vector<TruncatedSeries>(q)),
                            parent.precision()),
                   {}, {}};
  out.lift.reserve(q);
  for (int t = 0; t < q; ++t) {
    ModuleElement l;
    l.coords = sd.u[r + t];
    out.lift.push_back(std::move(l));
  }
  out.proj.assign(q, std::vector<TruncatedSeries>(k));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < k; ++j) out.proj[i][j] = sd.uinv[j][r + i];

  std::vector<std::vector<TruncatedSeries>> cols(
      q, std::vector<TruncatedSeries>(q));
  int prec = parent.precision();
  for (int t = 0; t < q; ++t) {
    ModuleElement y = out.project(parent.apply_a(out.lift[t]));
    for (int i = 0; i < q; ++i) {
      cols[t][i] = y.coords[i];
      prec = std::min(prec, y.coords[i].precision());
    }
  }
  out.module = AbModule(std::move(cols), prec);
  return out;
}

std::vector<Scalar> flatten(const std::vector<TruncatedSeries>& coords, int k,
                            int n) {
  std::vector<Scalar> flat(static_cast<size_t>(k) * n, Scalar(0));
  for (int i = 0; i < k; ++i)
    for (int t = 0; t < n; ++t) flat[static_cast<size_t>(t) * k + i] =
        coords[i].coeff(t);
  return flat;
}

std::vector<TruncatedSeries> unflatten(const std::vector<Scalar>& flat, int k,
                                       int n) {
  std::vector<TruncatedSeries> coords(k);
  for (int i = 0; i < k; ++i) {
    std::vector<Scalar> c(n, Scalar(0));
    for (int t = 0; t < n; ++t) c[t] = flat[static_cast<size_t>(t) * k + i];
    coords[i] = TruncatedSeries::from_coeffs(std::move(c), n);
  }
  return coords;
}

Matrix<Scalar> operator_matrix(
    int k, int n,
    const std::function<std::vector<TruncatedSeries>(
        const std::vector<TruncatedSeries>&)>& op) {
  int dim = k * n;
  Matrix<Scalar> m(dim, dim);
  for (int t = 0; t < n; ++t)
    for (int i = 0; i < k; ++i) {
      std::vector<TruncatedSeries> e(k);
      e[i] = TruncatedSeries::monomial(t);
      std::vector<Scalar> out = flatten(op(e), k, n);
      int col = t * k + i;
      for (int row = 0; row < dim; ++row) m(row, col) = out[row];
    }
  return m;
}

namespace {

// Shared gate for the eigenvalue-based operations: saturation plus a
// fully split Bernstein polynomial with negative roots.
struct GeometricData {
  Saturation sat;
  std::vector<Rational> roots;
};

GeometricData require_geometric(const AbModule& e) {
  GeometricData g;
  g.sat = e.saturate();
  if (g.sat.status != SatStatus::saturated)
    fail(errc::not_geometric, "module is not regular at this precision");
  RootList rl = rational_roots(min_poly(g.sat.module().residue_matrix()));
  if (!rl.fully_split)
    fail(errc::not_geometric, "Bernstein polynomial does not split over Q");
  for (const auto& r : rl.roots) {
    if (!(r < Rational(0)))
      fail(errc::not_geometric, "Bernstein polynomial has a root >= 0");
    g.roots.push_back(r);
  }
  return g;
}

}  // namespace

SubmoduleData primitive_part(const AbModule& e,
                             const std::vector<Rational>& classes) {
  GeometricData g = require_geometric(e);
  AbModule sat_mod = g.sat.module();
  int k = e.rank();
  int n = std::min(finite_window(e.precision()), finite_window(sat_mod.precision()));

  std::set<Rational> target;
  for (const auto& c : classes) target.insert(class_representative(c));

  // -b^{-1}a descends to E~/b^n E~ because a(b^n x) lies in b^{n+1} E~.
  auto w_op = [&](const std::vector<TruncatedSeries>& v) {
    ModuleElement y = sat_mod.apply_a(ModuleElement{v});
    for (auto& s : y.coords) s = Scalar(-1) * shift_down(s.truncated(n + 1), 1);
    return y.coords;
  };
  Matrix<Scalar> w = operator_matrix(k, n, w_op);

  // Eigenvalues of w with exponent class in the target set: r - t for a
  // Bernstein root r, shifted down the b-grading.
  std::vector<Lattice::Column> cols;
  std::set<Rational> seen;
  for (const auto& r : g.roots) {
    Rational cls = class_representative(-r);
    if (!target.count(cls) || seen.count(cls)) continue;
    seen.insert(cls);
    Matrix<Scalar> p = Matrix<Scalar>::identity(k * n);
    for (const auto& r2 : g.roots) {
      if (!(class_representative(-r2) == cls)) continue;
      for (int t = 0; t < n; ++t) {
        Matrix<Scalar> f = w;
        Scalar nu = Scalar(r2 - Rational(t));
        for (int d = 0; d < k * n; ++d) f(d, d) = f(d, d) - nu;
        p = p * f;
      }
    }
    // Generalized eigenspace: kernel of a stable power of p.
    Matrix<Scalar> power = p;
    size_t dim = kernel_basis(power).size();
    for (int it = 0; it < k * n; ++it) {
      Matrix<Scalar> nxt = power * p;
      size_t d2 = kernel_basis(nxt).size();
      if (d2 == dim) break;
      power = std::move(nxt);
      dim = d2;
    }
    for (const auto& vec : kernel_basis(power)) {
      Lattice::Column col;
      for (const auto& s : unflatten(vec, k, n)) col.push_back(LaurentSeries(s));
      cols.push_back(std::move(col));
    }
  }
  // The eigenspaces are only determined modulo b^n.
  for (int i = 0; i < k; ++i) {
    Lattice::Column tail(k);
    tail[i] = LaurentSeries::monomial(n);
    cols.push_back(std::move(tail));
  }
  Lattice span = Lattice::from_columns(k, std::move(cols), n);

  // E in the coordinates of the saturation.
  std::vector<Lattice::Column> e_cols;
  for (int j = 0; j < k; ++j) {
    Lattice::Column unit(k);
    unit[j] = LaurentSeries::monomial(0);
    std::vector<LaurentSeries> coords;
    if (!g.sat.basis.contains(unit, &coords))
      fail(errc::precision_exhausted, "module does not embed in its saturation");
    e_cols.push_back(std::move(coords));
  }
  Lattice e_in_sat = Lattice::from_columns(k, std::move(e_cols), n);

  Lattice part = intersect(e_in_sat, span);

  // Back to the original coordinates.
  std::vector<Lattice::Column> back;
  for (const auto& col : part.columns()) {
    Lattice::Column v(k);
    for (int i = 0; i < k; ++i) {
      LaurentSeries acc;
      for (int t = 0; t < k; ++t) acc += col[t] * g.sat.basis.columns()[t][i];
      v[i] = std::move(acc);
    }
    back.push_back(std::move(v));
  }
  Lattice sub = Lattice::from_columns(k, std::move(back), n);
  return submodule_on(e, sub);
}

std::vector<Rank1Family> rank1_normal_submodules(const AbModule& e) {
  GeometricData g = require_geometric(e);
  int k = e.rank();
  int n = finite_window(e.precision());
  int guard = g.sat.delta + 1;
  int np = n - guard;
  if (np < 2)
    fail(errc::precision_exhausted,
         "rank-1 search: no usable window after the saturation gap");

  Matrix<Scalar> a_mat = operator_matrix(k, n, [&](const auto& v) {
    return e.apply_a(ModuleElement{v}).coords;
  });
  Matrix<Scalar> b_mat = operator_matrix(k, n, [&](const auto& v) {
    std::vector<TruncatedSeries> r = v;
    for (auto& s : r) s = s.shifted(1).truncated(n);
    return r;
  });

  std::set<Rational> candidates;
  for (const auto& r : g.roots)
    for (int m = 0; m < n; ++m) candidates.insert(-r + Rational(m));

  std::vector<Rank1Family> out;
  for (const auto& lambda : candidates) {
    Matrix<Scalar> sys = a_mat;
    Scalar l(lambda);
    for (int c = 0; c < k * n; ++c)
      for (int r2 = 0; r2 < k * n; ++r2)
        sys(r2, c) = sys(r2, c) - l * b_mat(r2, c);
    std::vector<std::vector<Scalar>> ker = kernel_basis(sys);
    if (ker.empty()) continue;

    // The top `guard` coefficient blocks are under-determined at this
    // precision (constraints on them sit beyond b^n); project them away.
    Matrix<Scalar> proj(ker.size(), k * np);
    for (size_t v = 0; v < ker.size(); ++v)
      for (int c = 0; c < k * np; ++c) proj(v, c) = ker[v][c];
    rref(proj);
    std::vector<ModuleElement> basis;
    bool fresh = false;
    for (size_t r2 = 0; r2 < proj.rows(); ++r2) {
      std::vector<Scalar> row(k * np, Scalar(0));
      bool nonzero = false;
      for (int c = 0; c < k * np; ++c) {
        row[c] = proj(r2, c);
        nonzero = nonzero || !row[c].is_zero();
      }
      if (!nonzero) continue;
      for (int c = 0; c < k; ++c) fresh = fresh || !row[c].is_zero();
      basis.push_back(ModuleElement{unflatten(row, k, np)});
    }
    if (!fresh || basis.empty()) continue;
    out.push_back(Rank1Family{lambda, std::move(basis)});
  }
  return out;
}

}  // namespace abm
