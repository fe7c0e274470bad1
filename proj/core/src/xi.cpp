#include "abmod/xi.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <utility>

namespace abm {

namespace {

int shift_prec(int p) { return p >= kExactPrec ? kExactPrec : p + 1; }

}  // namespace

XiElement::XiElement(int dim_v, int n_log, int m_prec)
    : dim_v_(dim_v), n_log_(n_log), m_prec_(m_prec) {
  if (dim_v < 1 || n_log < 0 || m_prec < 0)
    fail(errc::syntax_error, "bad expansion element dimensions");
}

XiElement XiElement::term(const Rational& mu, int j, const Scalar& c,
                          int n_log, int m_prec) {
  XiElement x(1, n_log, m_prec);
  x.add_term(mu, j, 0, c);
  return x;
}

void XiElement::put(const Rational& lambda, int j, int m, int v,
                    const Scalar& c) {
  if (c.is_zero()) return;
  if (j < 0 || j > n_log_)
    fail(errc::syntax_error, "log-degree outside the element's window");
  Rational rep = class_representative(lambda);
  long mm = static_cast<long>(m) + class_shift(lambda);
  if (mm < 0) fail(errc::syntax_error, "exponent below the integrable range");
  if (mm >= m_prec_) return;
  auto key = std::make_tuple(rep, j, static_cast<int>(mm));
  auto it = t_.find(key);
  if (it == t_.end()) {
    std::vector<Scalar> vec(dim_v_, Scalar(0));
    vec[v] = c;
    t_.emplace(std::move(key), std::move(vec));
    return;
  }
  it->second[v] += c;
  for (const Scalar& s : it->second)
    if (!s.is_zero()) return;
  t_.erase(it);
}

void XiElement::add_term(const Rational& lambda, int j, int m,
                         std::vector<Scalar> c) {
  if (static_cast<int>(c.size()) != dim_v_)
    fail(errc::syntax_error, "coefficient vector has the wrong length");
  for (int v = 0; v < dim_v_; ++v)
    if (!c[v].is_zero()) put(lambda, j, m, v, c[v]);
}

void XiElement::add_term(const Rational& lambda, int j, int m,
                         const Scalar& c) {
  put(lambda, j, m, 0, c);
}

Scalar XiElement::coeff(const Rational& lambda, int j, int m, int v) const {
  Rational rep = class_representative(lambda);
  long mm = static_cast<long>(m) + class_shift(lambda);
  if (mm < 0) return Scalar(0);
  auto it = t_.find(std::make_tuple(rep, j, static_cast<int>(mm)));
  return it == t_.end() ? Scalar(0) : it->second[v];
}

std::vector<XiElement::Term> XiElement::terms() const {
  std::vector<Term> out;
  out.reserve(t_.size());
  for (const auto& [key, vec] : t_)
    out.push_back(Term{std::get<0>(key), std::get<1>(key), std::get<2>(key), vec});
  return out;
}

std::vector<Rational> XiElement::classes() const {
  // keys are sorted with the class first, so duplicates are adjacent
  std::vector<Rational> out;
  for (const auto& [key, vec] : t_) {
    const Rational& l = std::get<0>(key);
    if (out.empty() || !(out.back() == l)) out.push_back(l);
  }
  return out;
}

int XiElement::max_log() const {
  int best = -1;
  for (const auto& [key, vec] : t_) best = std::max(best, std::get<1>(key));
  return best;
}

int XiElement::min_shift() const {
  int best = m_prec_;
  for (const auto& [key, vec] : t_) best = std::min(best, std::get<2>(key));
  return best;
}

XiElement XiElement::truncated(int m_prec) const {
  XiElement r(dim_v_, n_log_, std::min(m_prec_, m_prec));
  for (const auto& [key, vec] : t_) {
    if (std::get<2>(key) >= r.m_prec_) continue;
    r.t_.emplace(key, vec);
  }
  return r;
}

XiElement XiElement::operator-() const { return Scalar(-1) * *this; }

XiElement operator+(const XiElement& x, const XiElement& y) {
  if (x.dim_v_ != y.dim_v_)
    fail(errc::syntax_error, "mixed value dimensions in expansion sum");
  XiElement r(x.dim_v_, std::max(x.n_log_, y.n_log_),
              std::min(x.m_prec_, y.m_prec_));
  for (const auto& [key, vec] : x.t_)
    for (int v = 0; v < x.dim_v_; ++v)
      r.put(std::get<0>(key), std::get<1>(key), std::get<2>(key), v, vec[v]);
  for (const auto& [key, vec] : y.t_)
    for (int v = 0; v < y.dim_v_; ++v)
      r.put(std::get<0>(key), std::get<1>(key), std::get<2>(key), v, vec[v]);
  return r;
}

XiElement operator-(const XiElement& x, const XiElement& y) {
  return x + (Scalar(-1) * y);
}

XiElement operator*(const Scalar& s, const XiElement& x) {
  XiElement r(x.dim_v_, x.n_log_, x.m_prec_);
  if (s.is_zero()) return r;
  for (const auto& [key, vec] : x.t_) {
    std::vector<Scalar> sv = vec;
    for (auto& e : sv) e = s * e;
    r.t_.emplace(key, std::move(sv));
  }
  return r;
}

bool equal_mod_prec(const XiElement& x, const XiElement& y) {
  if (x.dim_v() != y.dim_v()) return false;
  return (x - y).is_zero();
}

std::string XiElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, vec] : t_) {
    os << (first ? "" : " + ");
    first = false;
    Rational expo =
        std::get<0>(key) + Rational(std::get<2>(key)) - Rational(1);
    if (dim_v_ == 1) {
      os << vec[0].str();
    } else {
      os << "(";
      for (int v = 0; v < dim_v_; ++v) os << (v ? ", " : "") << vec[v].str();
      os << ")";
    }
    os << "*s^(" << expo.str() << ")";
    int j = std::get<1>(key);
    if (j == 1)
      os << "*L";
    else if (j > 1)
      os << "*L^" << j << "/" << j << "!";
  }
  if (first) os << "0";
  if (m_prec_ < kExactPrec) os << " + O(shift " << m_prec_ << ")";
  return os.str();
}

XiElement xi_a(const XiElement& x) {
  XiElement r(x.dim_v(), x.log_cap(), shift_prec(x.precision()));
  for (const auto& t : x.terms()) r.add_term(t.lambda, t.j, t.m + 1, t.c);
  return r;
}

XiElement xi_b(const XiElement& x) {
  XiElement r(x.dim_v(), x.log_cap(), shift_prec(x.precision()));
  for (const auto& t : x.terms()) {
    Rational mu = t.lambda + Rational(t.m);
    for (int i = t.j; i >= 0; --i) {
      Scalar f = Scalar(mu.pow(-(t.j - i + 1)));
      if ((t.j - i) % 2 != 0) f = -f;
      std::vector<Scalar> c = t.c;
      for (auto& e : c) e = f * e;
      r.add_term(t.lambda, i, t.m + 1, std::move(c));
    }
  }
  return r;
}

XiElement xi_apply_series(const TruncatedSeries& f, const XiElement& x) {
  long p = x.precision();
  if (!f.is_exact())
    p = std::min<long>(p, static_cast<long>(f.precision()) + x.min_shift());
  int rp = static_cast<int>(std::min<long>(p, kExactPrec));
  XiElement acc(x.dim_v(), x.log_cap(), rp);
  XiElement pow = x;
  int tcap = f.is_exact() ? f.stored_size()
                          : std::min(f.precision(), finite_window(rp));
  for (int t = 0; t < tcap; ++t) {
    if (t > 0) pow = xi_b(pow);
    Scalar c = f.coeff(t);
    if (!c.is_zero()) acc = acc + c * pow;
  }
  return acc;
}

XiElement xi_apply(const AbElement& op, const XiElement& x) {
  long p = x.precision();
  if (!op.is_exact())
    p = std::min<long>(p, static_cast<long>(op.precision()) + x.min_shift());
  XiElement acc(x.dim_v(), x.log_cap(),
                static_cast<int>(std::min<long>(p, kExactPrec)));
  XiElement apow = x;
  for (int d = 0; d <= op.a_degree(); ++d) {
    if (d > 0) apow = xi_a(apow);
    TruncatedSeries s = op.series_coeff(d);
    if (!(s.is_zero() && s.is_exact())) acc = acc + xi_apply_series(s, apow);
  }
  return acc;
}

XiElement monodromy_unipotent(const XiElement& x,
                              const Rational& lambda_class) {
  Rational rep = class_representative(lambda_class);
  Scalar tau = Scalar::tau();
  XiElement r(x.dim_v(), x.log_cap(), x.precision());
  for (const auto& t : x.terms()) {
    if (!(t.lambda == rep)) continue;
    Scalar f(1);
    for (int i = t.j; i >= 0; --i) {
      std::vector<Scalar> c = t.c;
      for (auto& e : c) e = f * e;
      r.add_term(t.lambda, i, t.m, std::move(c));
      if (i > 0) f = f * tau * Scalar(Rational(1, t.j - i + 1));
    }
  }
  return r;
}

XiWindow::XiWindow(std::vector<Rational> classes, int n_log, int m_prec,
                   int dim_v)
    : n_(n_log), m_(m_prec), dv_(dim_v) {
  if (n_log < 0 || dim_v < 1 || m_prec < 1)
    fail(errc::syntax_error, "bad chart dimensions");
  if (m_prec >= kExactPrec)
    fail(errc::syntax_error, "chart needs a finite shift window");
  for (auto& l : classes) l = class_representative(l);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.empty()) fail(errc::syntax_error, "chart needs a class");
  cls_ = std::move(classes);
  bridge_.resize(cls_.size());
  for (std::size_t c = 0; c < cls_.size(); ++c) {
    bridge_[c].assign(m_, Matrix<Scalar>(n_ + 1, n_ + 1));
    for (int j = 0; j <= n_; ++j) {
      XiElement y = XiElement::term(cls_[c], j, Scalar(1), n_);
      for (int m = 0; m < m_; ++m) {
        for (int i = 0; i <= j; ++i)
          bridge_[c][m](i, j) = y.coeff(cls_[c], i, m);
        if (m + 1 < m_) y = xi_b(y);
      }
    }
  }
}

XiElement XiWindow::monomial(int class_idx, int j, int m, int v) const {
  XiElement x(dv_, n_, kExactPrec);
  x.put(cls_[class_idx], j, m, v, Scalar(1));
  return x;
}

namespace {

int class_index(const std::vector<Rational>& cls, const Rational& l) {
  auto it = std::lower_bound(cls.begin(), cls.end(), l);
  if (it == cls.end() || !(*it == l)) return -1;
  return static_cast<int>(it - cls.begin());
}

}  // namespace

Lattice::Column XiWindow::coordinates(const XiElement& x) const {
  if (x.dim_v() != dv_)
    fail(errc::syntax_error, "value dimension does not match the chart");
  int p = std::min(m_, finite_window(x.precision()));
  // dense table rhs[(class, v)][j][m] of term coefficients
  int slices = static_cast<int>(cls_.size()) * dv_;
  std::vector<std::vector<std::vector<Scalar>>> rhs(
      slices, std::vector<std::vector<Scalar>>(
                  n_ + 1, std::vector<Scalar>(p, Scalar(0))));
  for (const auto& t : x.terms()) {
    int c = class_index(cls_, t.lambda);
    if (c < 0) fail(errc::syntax_error, "class outside the chart");
    if (t.j > n_) fail(errc::syntax_error, "log-degree outside the chart");
    if (t.m >= p) continue;
    for (int v = 0; v < dv_; ++v)
      rhs[c * dv_ + v][t.j][t.m] = t.c[v];
  }
  std::vector<std::vector<Scalar>> coef(rows(),
                                        std::vector<Scalar>(p, Scalar(0)));
  for (int c = 0; c < static_cast<int>(cls_.size()); ++c)
    for (int v = 0; v < dv_; ++v)
      for (int m = 0; m < p; ++m) {
        const Matrix<Scalar>& br = bridge_[c][m];
        // back-substitution down the triangular bridge slice
        std::vector<Scalar> sol(n_ + 1, Scalar(0));
        for (int i = n_; i >= 0; --i) {
          Scalar s = rhs[c * dv_ + v][i][m];
          for (int jj = i + 1; jj <= n_; ++jj)
            s -= br(i, jj) * sol[jj];
          sol[i] = s / br(i, i);
        }
        for (int j = 0; j <= n_; ++j) coef[row(c, j, v)][m] = sol[j];
      }
  Lattice::Column out;
  out.reserve(rows());
  for (int r = 0; r < rows(); ++r)
    out.push_back(TruncatedSeries::from_coeffs(coef[r], p));
  return out;
}

XiElement XiWindow::element_from(
    const std::vector<TruncatedSeries>& coords) const {
  if (static_cast<int>(coords.size()) != rows())
    fail(errc::syntax_error, "coordinate column has the wrong length");
  int p = m_;
  for (const auto& s : coords) p = std::min(p, s.precision());
  XiElement x(dv_, n_, p);
  for (int c = 0; c < static_cast<int>(cls_.size()); ++c)
    for (int j = 0; j <= n_; ++j)
      for (int v = 0; v < dv_; ++v) {
        const TruncatedSeries& s = coords[row(c, j, v)];
        for (int m = 0; m < p; ++m) {
          Scalar cf = s.coeff(m);
          if (cf.is_zero()) continue;
          for (int i = 0; i <= j; ++i)
            x.put(cls_[c], i, m, v, bridge_[c][m](i, j) * cf);
        }
      }
  return x;
}

XiElement XiWindow::element_from(const Lattice::Column& coords) const {
  std::vector<TruncatedSeries> ps;
  ps.reserve(coords.size());
  for (const auto& s : coords) ps.push_back(s.to_truncated());
  return element_from(ps);
}

namespace {

// sum_j f_j(b) * cols[j] = target modulo b^n, solved coefficientwise.
bool series_coordinates(const std::vector<Lattice::Column>& cols,
                        const Lattice::Column& target, int n,
                        std::vector<TruncatedSeries>* out) {
  int rows = static_cast<int>(target.size());
  int k = static_cast<int>(cols.size());
  Matrix<Scalar> m(static_cast<std::size_t>(rows) * n,
                   static_cast<std::size_t>(k) * n);
  std::vector<Scalar> rhs(static_cast<std::size_t>(rows) * n, Scalar(0));
  for (int r = 0; r < rows; ++r)
    for (int s = 0; s < n; ++s) rhs[r * n + s] = target[r].coeff(s);
  for (int j = 0; j < k; ++j)
    for (int r = 0; r < rows; ++r)
      for (int s = 0; s < n; ++s)
        for (int t = 0; t <= s; ++t)
          m(r * n + s, j * n + t) = cols[j][r].coeff(s - t);
  std::vector<Scalar> sol;
  if (!solve_linear(m, rhs, sol)) return false;
  out->clear();
  for (int j = 0; j < k; ++j) {
    std::vector<Scalar> cf(n);
    for (int t = 0; t < n; ++t) cf[t] = sol[j * n + t];
    out->push_back(TruncatedSeries::from_coeffs(std::move(cf), n));
  }
  return true;
}

struct SpanData {
  XiWindow w;
  int k = 0;
  std::vector<XiElement> pows;        // x, a.x, ..., a^(k-1).x
  std::vector<Lattice::Column> cols;  // their chart coordinates
  Lattice::Column top;                // coordinates of a^k.x
  int prec = 0;
};

SpanData a_power_span(const XiElement& x) {
  if (x.is_zero()) fail(errc::syntax_error, "expansion is zero");
  int window = finite_window(x.precision());
  if (window < 2) fail(errc::precision_exhausted, "shift window too small");
  SpanData sd{XiWindow(x.classes(), x.log_cap(), window, x.dim_v())};
  sd.pows.push_back(x);
  sd.cols.push_back(sd.w.coordinates(x));
  Lattice lat = Lattice::from_columns(sd.w.rows(), sd.cols, window);
  int cap = sd.w.rows();
  for (int d = 1; d <= cap; ++d) {
    XiElement nxt = xi_a(sd.pows.back());
    Lattice::Column col = sd.w.coordinates(nxt);
    if (lat.contains(col)) {
      sd.k = d;
      sd.top = std::move(col);
      sd.prec = std::min(window, lat.precision());
      return sd;
    }
    sd.cols.push_back(std::move(col));
    lat = Lattice::from_columns(sd.w.rows(), sd.cols, window);
    if (lat.rank() != d + 1)
      fail(errc::rank_not_stabilized,
           "a-power span degenerated before closing");
    sd.pows.push_back(std::move(nxt));
  }
  fail(errc::rank_not_stabilized, "span still growing at the chart capacity");
}

}  // namespace

ThemeGeneration generate_theme(const XiElement& x) {
  SpanData sd = a_power_span(x);
  int k = sd.k;
  int n = sd.prec;
  std::vector<TruncatedSeries> u;
  if (!series_coordinates(sd.cols, sd.top, n, &u))
    fail(errc::precision_exhausted,
         "generator relation inconsistent at the working precision");
  std::vector<std::vector<TruncatedSeries>> action(
      k, std::vector<TruncatedSeries>(k, TruncatedSeries(n)));
  for (int j = 0; j + 1 < k; ++j)
    action[j][j + 1] = TruncatedSeries::constant(Scalar(1), n);
  for (int i = 0; i < k; ++i) action[k - 1][i] = u[i];
  AbModule f(action, n);
  AbElement pi = AbElement::monomial(0, k, Scalar(1), n);
  for (int j = 0; j < k; ++j)
    pi -= AbElement::from_series(u[j]) * AbElement::monomial(0, j, Scalar(1));
  HomogeneousElement p = HomogeneousElement::initial_form(pi);
  Realization real{std::move(f),           x,
                   std::move(sd.pows),     sd.w.classes(),
                   sd.w.n_log(),           sd.w.m_prec(),
                   sd.w.dim_v()};
  return ThemeGeneration{std::move(real), std::move(pi), std::move(p)};
}

bool realization_intertwines(const Realization& r) {
  int k = r.module.rank();
  if (static_cast<int>(r.basis_images.size()) != k || k == 0) return false;
  if (!equal_mod_prec(r.basis_images[0], r.x)) return false;
  for (int d = 0; d < k; ++d) {
    XiElement lhs = xi_a(r.basis_images[d]);
    XiElement rhs(r.basis_images[d].dim_v(), r.basis_images[d].log_cap(),
                  kExactPrec);
    for (int i = 0; i < k; ++i) {
      const TruncatedSeries& c = r.module.action_column(d)[i];
      if (c.is_zero() && c.is_exact()) continue;
      rhs = rhs + xi_apply_series(c, r.basis_images[i]);
    }
    if (!equal_mod_prec(lhs, rhs)) return false;
  }
  return true;
}

std::vector<XiElement> solve_in_xi(const AbElement& pi,
                                   const std::vector<Rational>& classes,
                                   int n_log, int m_prec, int dim_v) {
  if (pi.terms().empty())
    fail(errc::syntax_error, "kernel of the zero operator is not meaningful");
  // A term b^m a^d raises the exponent shift by m + d.  A candidate monomial
  // whose lowest image shift lands outside the equation window would be a
  // free variable with no constraints at all and would pollute the kernel,
  // so the unknown window is trimmed to keep every unknown constrained at
  // least once.  When the operator is exact, extending the equation window
  // by the largest shift instead captures every constraint the operator
  // generates and the kernel is exact.
  int low = pi.terms().begin()->first.first + pi.terms().begin()->first.second;
  int high = low;
  for (const auto& [key, c] : pi.terms()) {
    low = std::min(low, key.first + key.second);
    high = std::max(high, key.first + key.second);
  }
  const bool exact = pi.precision() >= kExactPrec;
  const int meq =
      exact ? m_prec + high : std::min(m_prec, finite_window(pi.precision()));
  const int munk = exact ? m_prec : meq - low;
  if (munk <= 0) return {};
  XiWindow w(classes, n_log, munk, dim_v);
  int ncls = static_cast<int>(w.classes().size());
  auto eq_row = [&](int c, int j, int m, int v) {
    return ((c * (n_log + 1) + j) * meq + m) * dim_v + v;
  };
  Matrix<Scalar> a(static_cast<std::size_t>(ncls) * (n_log + 1) * meq * dim_v,
                   w.monomials());
  for (int c = 0; c < ncls; ++c)
    for (int j = 0; j <= n_log; ++j)
      for (int m = 0; m < munk; ++m)
        for (int v = 0; v < dim_v; ++v) {
          int idx = w.monomial_index(c, j, m, v);
          XiElement mono(dim_v, n_log, exact ? kExactPrec : meq);
          std::vector<Scalar> unit(dim_v, Scalar(0));
          unit[v] = Scalar(1);
          mono.add_term(w.classes()[c], j, m, std::move(unit));
          XiElement img = xi_apply(pi, mono);
          for (const auto& t : img.terms()) {
            if (t.m >= meq) continue;
            int tc = class_index(w.classes(), t.lambda);
            for (int tv = 0; tv < dim_v; ++tv)
              if (!t.c[tv].is_zero())
                a(eq_row(tc, t.j, t.m, tv), idx) += t.c[tv];
          }
        }
  std::vector<std::vector<Scalar>> ker = kernel_basis(std::move(a));
  std::vector<XiElement> out;
  out.reserve(ker.size());
  for (const auto& vec : ker) {
    XiElement sol(dim_v, n_log, exact ? kExactPrec : munk);
    for (int c = 0; c < ncls; ++c)
      for (int j = 0; j <= n_log; ++j)
        for (int m = 0; m < munk; ++m)
          for (int v = 0; v < dim_v; ++v) {
            std::vector<Scalar> cv(dim_v, Scalar(0));
            cv[v] = vec[w.monomial_index(c, j, m, v)];
            if (!cv[v].is_zero()) sol.add_term(w.classes()[c], j, m,
                                               std::move(cv));
          }
    if (!sol.is_zero()) out.push_back(std::move(sol));
  }
  return out;
}

std::vector<XiElement> solve_in_xi(const FrescoPresentation& pi,
                                   const std::vector<Rational>& classes,
                                   int n_log, int m_prec, int dim_v) {
  return solve_in_xi(pi.element(m_prec), classes, n_log, m_prec, dim_v);
}

namespace {

struct RealChart {
  XiWindow w;
  Lattice span;
  std::vector<Lattice::Column> img;
  int prec = 0;
};

RealChart real_chart(const Realization& r) {
  int window = finite_window(r.m_prec);
  RealChart rc{XiWindow(r.classes, r.n_log, window, r.dim_v)};
  for (const auto& y : r.basis_images) rc.img.push_back(rc.w.coordinates(y));
  rc.span = Lattice::from_columns(rc.w.rows(), rc.img, window);
  rc.prec = window;
  if (rc.span.rank() != r.module.rank())
    fail(errc::precision_exhausted,
         "realization span rank does not match the module");
  return rc;
}

// Lattice spanned by the chart rows with log-degree <= max_log and (when
// given) class index allowed by the mask.
Lattice chart_rows(const XiWindow& w, int prec, int max_log,
                   const std::vector<bool>* class_mask) {
  std::vector<Lattice::Column> cols;
  int ncls = static_cast<int>(w.classes().size());
  for (int c = 0; c < ncls; ++c) {
    if (class_mask && !(*class_mask)[c]) continue;
    for (int j = 0; j <= std::min(max_log, w.n_log()); ++j)
      for (int v = 0; v < w.dim_v(); ++v) {
        Lattice::Column col(w.rows());
        col[w.row(c, j, v)] = LaurentSeries::monomial(0, Scalar(1));
        cols.push_back(std::move(col));
      }
  }
  return Lattice::from_columns(w.rows(), std::move(cols), prec);
}

SubmoduleData stage_submodule(const AbModule& parent, const RealChart& rc,
                              const Lattice& rows) {
  Lattice inter = intersect(rc.span, rows);
  int n = std::min({rc.prec, inter.precision(), parent.precision()});
  std::vector<Lattice::Column> fcols;
  for (const auto& col : inter.columns()) {
    std::vector<TruncatedSeries> fc;
    if (!series_coordinates(rc.img, col, n, &fc))
      fail(errc::precision_exhausted, "stage column left the realized span");
    Lattice::Column lc;
    lc.reserve(fc.size());
    for (const auto& s : fc) lc.push_back(s);
    fcols.push_back(std::move(lc));
  }
  Lattice stage = Lattice::from_columns(parent.rank(), std::move(fcols), n);
  if (!stage.is_zero() && !smith(stage).is_normal())
    fail(errc::not_normal, "filtration stage is not saturated");
  return submodule_on(parent, stage);
}

int theme_rank(const XiElement& x) {
  if (x.is_zero()) return 0;
  try {
    return a_power_span(x).k;
  } catch (const ab_error& e) {
    if (e.code() == errc::rank_not_stabilized) return -1;
    throw;
  }
}

// Searches the kernel of pi on the given chart for an element whose
// generated span reaches rank k. Samples basis vectors, then small
// subsets with unit and with tau-power weights (the weighted samples
// separate components a plain sum leaves proportional).
bool kernel_reaches_rank(const AbElement& pi,
                         const std::vector<Rational>& classes, int n_log,
                         int m_prec, int dim_v, int k) {
  std::vector<XiElement> ker =
      solve_in_xi(pi, classes, n_log, m_prec, dim_v);
  if (ker.empty()) return false;
  int d = static_cast<int>(ker.size());
  for (const auto& v : ker)
    if (theme_rank(v) == k) return true;
  if (d == 1) return false;
  Scalar tau = Scalar::tau();
  if (d <= 12) {
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
      int size = std::popcount(mask);
      if (size < 2 || size > std::max(k, 2)) continue;
      XiElement unit(ker[0].dim_v(), ker[0].log_cap(), ker[0].precision());
      XiElement curve = unit;
      Scalar wgt(1);
      for (int i = 0; i < d; ++i) {
        if (!(mask & (1u << i))) continue;
        unit = unit + ker[i];
        curve = curve + wgt * ker[i];
        wgt = wgt * tau;
      }
      if (theme_rank(unit) == k) return true;
      if (theme_rank(curve) == k) return true;
    }
  } else {
    XiElement curve = ker[0];
    Scalar wgt(1);
    for (int i = 1; i < d; ++i) {
      wgt = wgt * tau;
      curve = curve + wgt * ker[i];
    }
    if (theme_rank(curve) == k) return true;
  }
  return false;
}

// Smallest log level at which the realized module admits a realization:
// the level its images actually use, unless the generator relation has a
// rank-k kernel element at a lower level.
int minimal_log_level(const Realization& r) {
  int used = 0;
  for (const auto& y : r.basis_images) used = std::max(used, y.max_log());
  if (used < r.n_log) return used;
  FrescoCheck fc;
  try {
    fc = is_fresco(r.module);
  } catch (const ab_error&) {
    fc.ok = false;
  }
  if (!fc.ok) return r.n_log;
  FrescoNormalForm nf = presentation_from_module(r.module, fc.generator);
  int k = r.module.rank();
  int window = std::min(finite_window(r.m_prec),
                        finite_window(nf.pi_normal.precision()));
  for (int nn = 0; nn < r.n_log; ++nn)
    if (kernel_reaches_rank(nf.pi_normal, r.classes, nn, window, r.dim_v, k))
      return nn;
  return r.n_log;
}

}  // namespace

std::vector<SubmoduleData> ss_filtration(const Realization& r) {
  RealChart rc = real_chart(r);
  int k = r.module.rank();
  std::vector<SubmoduleData> stages;
  for (int t = 0; t <= r.n_log; ++t) {
    SubmoduleData s =
        stage_submodule(r.module, rc, chart_rows(rc.w, rc.prec, t, nullptr));
    if (!stages.empty() && s.module.rank() < stages.back().module.rank())
      fail(errc::cross_check_failed, "semi-simple stages not increasing");
    int rk = s.module.rank();
    stages.push_back(std::move(s));
    if (rk == k) break;
  }
  if (stages.empty() || stages.back().module.rank() != k)
    fail(errc::precision_exhausted,
         "semi-simple filtration did not reach the whole module");
  return stages;
}

std::vector<SubmoduleData> co_ss_filtration(const Realization& r) {
  if (minimal_log_level(r) < r.n_log)
    fail(errc::not_minimal_embedding,
         "a realization with a lower log level exists");
  RealChart rc = real_chart(r);
  std::vector<SubmoduleData> stages;
  for (int j = 0; j <= r.n_log; ++j) {
    SubmoduleData s = stage_submodule(
        r.module, rc, chart_rows(rc.w, rc.prec, r.n_log - j, nullptr));
    if (!stages.empty() && s.module.rank() > stages.back().module.rank())
      fail(errc::cross_check_failed, "co-semi-simple stages not decreasing");
    stages.push_back(std::move(s));
  }
  if (stages.front().module.rank() != r.module.rank())
    fail(errc::precision_exhausted,
         "co-semi-simple filtration does not start at the whole module");
  return stages;
}

SubmoduleData primitive_filtration(const Realization& r,
                                   const std::vector<Rational>& classes) {
  RealChart rc = real_chart(r);
  std::vector<bool> mask(rc.w.classes().size(), false);
  for (const auto& l : classes) {
    int c = class_index(rc.w.classes(), class_representative(l));
    if (c >= 0) mask[c] = true;
  }
  return stage_submodule(r.module, rc,
                         chart_rows(rc.w, rc.prec, r.n_log, &mask));
}

bool realization_contains(const Realization& r, const XiElement& y) {
  if (y.is_zero()) return true;
  if (y.dim_v() != r.dim_v)
    fail(errc::syntax_error, "value dimension does not match the realization");
  RealChart rc = real_chart(r);
  for (const auto& t : y.terms())
    if (t.j > rc.w.n_log() || class_index(rc.w.classes(), t.lambda) < 0)
      return false;
  int n = std::min(rc.prec, finite_window(y.precision()));
  std::vector<TruncatedSeries> fc;
  return series_coordinates(rc.img, rc.w.coordinates(y), n, &fc);
}

namespace {

// Depth-first search for a filtration with rank-1 quotients E_{lambda_j}
// and lambda_j + j strictly decreasing. Families of dimension > 1 are
// probed through their basis rays and the sum ray.
bool decreasing_jh_dfs(const AbModule& q, const Rational* prev_mu,
                       int stage) {
  if (q.rank() == 0) return true;
  int prec = q.precision();
  for (const auto& fam : rank1_normal_submodules(q)) {
    Rational mu = fam.lambda + Rational(stage);
    if (prev_mu && !(mu < *prev_mu)) continue;
    std::vector<ModuleElement> rays = fam.basis;
    if (fam.basis.size() > 1) {
      ModuleElement sum = fam.basis[0];
      for (std::size_t i = 1; i < fam.basis.size(); ++i)
        sum = sum + fam.basis[i];
      rays.push_back(std::move(sum));
    }
    for (const auto& y : rays) {
      if (y.valuation() != 0) continue;
      Lattice::Column col;
      col.reserve(y.coords.size());
      for (const auto& s : y.coords) col.push_back(s);
      Lattice sub = Lattice::from_columns(q.rank(), {std::move(col)}, prec);
      QuotientData qd = quotient_by(q, sub);
      if (decreasing_jh_dfs(qd.module, &mu, stage + 1)) return true;
    }
  }
  return false;
}

}  // namespace

bool is_semisimple(const AbModule& f) {
  if (f.rank() == 0) return true;
  FrescoCheck fc = is_fresco(f);
  if (!fc.ok)
    fail(errc::not_a_fresco, "semi-simplicity test needs a monogenic module");
  int k = f.rank();
  FrescoNormalForm nf = presentation_from_module(f, fc.generator);
  std::vector<Rational> lam = factor_homogeneous(nf.p);
  // Exponents of the candidate rank-1 summands: lambda_j + j - k.
  std::vector<Rational> classes;
  std::vector<Rational> reps;
  long maxshift = 0;
  int maxmult = 1;
  for (int j = 1; j <= k; ++j) {
    Rational lp = lam[j - 1] + Rational(j - k);
    classes.push_back(lp);
    Rational rep = class_representative(lp);
    maxshift = std::max(maxshift, class_shift(lp));
    int mult = 1 + static_cast<int>(std::count(reps.begin(), reps.end(), rep));
    maxmult = std::max(maxmult, mult);
    reps.push_back(rep);
  }
  int window = std::min<long>(finite_window(nf.pi_normal.precision()),
                              std::max<long>(4 * k, maxshift + 2 * k));
  bool realized =
      kernel_reaches_rank(nf.pi_normal, classes, 0, window, maxmult, k);
  if (!realized && decreasing_jh_dfs(f, nullptr, 1))
    fail(errc::cross_check_failed,
         "a strictly decreasing filtration exists but no log-free "
         "realization was found");
  return realized;
}

}  // namespace abm
