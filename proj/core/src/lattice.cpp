#include "abmod/lattice.hpp"

#include <algorithm>
#include <climits>

#include "abmod/errors.hpp"

namespace abm {

namespace {

// Valuation used for pivot decisions: entries that are zero as stored
// sort last.
int pivot_val(const LaurentSeries& e) {
  return e.is_zero() ? INT_MAX : e.valuation();
}

int column_min_prec(const std::vector<Lattice::Column>& cols) {
  int p = kExactPrec;
  for (const auto& col : cols)
    for (const auto& e : col) p = std::min(p, e.precision());
  return p;
}

// Relative digits carried for the reciprocal of an exact pivot whose
// inverse is not finitely representable. Only reachable when the whole
// lattice is exact; the recomputed lattice precision then records the cut.
constexpr int kExactReciprocalDigits = 64;

// Reciprocal of a pivot entry with an explicit digit budget. invert()
// keeps one output digit per stored digit of an exact input, which is
// far too few for elimination: a pivot like b^-2 - 1 would poison every
// column it touches. A single-term exact pivot inverts exactly; any
// other exact pivot is truncated to the working precision first, which
// is enough because every product it enters has the other factor at
// valuation >= the pivot's.
LaurentSeries pivot_reciprocal(const LaurentSeries& piv, int prec) {
  LaurentSeries p = piv;
  if (p.is_exact()) {
    int v = p.valuation();
    LaurentSeries tail = p - LaurentSeries::monomial(v, p.coeff(v));
    if (!tail.is_zero())
      p = p.truncated(prec < kExactPrec ? prec : v + kExactReciprocalDigits);
  }
  return p.invert();
}

}  // namespace

Lattice Lattice::full(int ambient, int prec) {
  std::vector<Column> cols(ambient, Column(ambient));
  for (int j = 0; j < ambient; ++j)
    cols[j][j] = LaurentSeries::monomial(0);
  return from_columns(ambient, std::move(cols), prec);
}

Lattice Lattice::from_columns(int ambient, std::vector<Column> cols, int prec) {
  Lattice l(ambient, prec);
  for (const auto& c : cols)
    if (static_cast<int>(c.size()) != ambient)
      fail(errc::not_normal, "generator column has wrong ambient dimension");
  l.cols_ = std::move(cols);
  l.normalize();
  return l;
}

// Column echelon form over C[[b]]. Pivots are selected by globally
// minimal valuation (ties: smaller row, then first column); the pivot
// column is scaled so the pivot entry becomes the pure power b^v, the
// pivot row is then cleared in every other column down to exponents
// below v. Untreated columns lose the row entirely (their valuations
// are >= v by minimality), treated ones keep a reduced head, which makes
// the result a canonical form. Columns that vanish modulo the working
// precision are dropped.
void Lattice::normalize() {
  prec_ = std::min(prec_, column_min_prec(cols_));
  struct Piv {
    int col, row, val;
  };
  std::vector<int> untreated(cols_.size());
  for (size_t i = 0; i < cols_.size(); ++i) untreated[i] = static_cast<int>(i);
  std::vector<Piv> pivots;

  while (!untreated.empty()) {
    int best_col = -1, best_row = -1, best_val = INT_MAX;
    for (int c : untreated) {
      for (int r = 0; r < n_; ++r) {
        int v = pivot_val(cols_[c][r]);
        if (v >= prec_) continue;
        if (v < best_val || (v == best_val && r < best_row)) {
          best_val = v;
          best_row = r;
          best_col = c;
        }
      }
    }
    if (best_col < 0) break;  // the rest is zero at the working precision

    // Scale the pivot column so the pivot entry is exactly b^v.
    LaurentSeries mult =
        pivot_reciprocal(cols_[best_col][best_row], prec_).shifted(best_val);
    for (auto& e : cols_[best_col]) e = mult * e;

    for (size_t c = 0; c < cols_.size(); ++c) {
      if (static_cast<int>(c) == best_col) continue;
      const LaurentSeries& e = cols_[c][best_row];
      if (e.is_zero()) continue;
      LaurentSeries high = e - e.head(best_val);
      if (high.is_zero()) continue;
      LaurentSeries q = high.shifted(-best_val);
      for (int r = 0; r < n_; ++r)
        cols_[c][r] -= q * cols_[best_col][r];
    }

    pivots.push_back({best_col, best_row, best_val});
    untreated.erase(std::find(untreated.begin(), untreated.end(), best_col));
  }

  // Present columns sorted by pivot row; remember the processing order,
  // in which each column vanishes at all earlier pivot rows (so that
  // coordinate extraction is a triangular peel).
  std::vector<int> order(pivots.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return pivots[x].row < pivots[y].row; });
  std::vector<Column> kept;
  pivot_rows_.clear();
  pivot_vals_.clear();
  peel_order_.assign(pivots.size(), 0);
  for (size_t slot = 0; slot < order.size(); ++slot) {
    const Piv& p = pivots[order[slot]];
    kept.push_back(std::move(cols_[p.col]));
    pivot_rows_.push_back(p.row);
    pivot_vals_.push_back(p.val);
    peel_order_[order[slot]] = static_cast<int>(slot);
  }
  cols_ = std::move(kept);
  prec_ = std::min(prec_, column_min_prec(cols_));
}

int Lattice::min_valuation() const {
  int v = 0;
  bool seen = false;
  for (const auto& col : cols_)
    for (const auto& e : col)
      if (!e.is_zero()) {
        v = seen ? std::min(v, e.valuation()) : e.valuation();
        seen = true;
      }
  return seen ? v : 0;
}

bool Lattice::contains(const Column& x, std::vector<LaurentSeries>* coords) const {
  if (static_cast<int>(x.size()) != n_)
    fail(errc::not_normal, "membership query has wrong ambient dimension");
  Column r = x;
  if (coords) coords->assign(cols_.size(), LaurentSeries());
  for (int i : peel_order_) {
    const LaurentSeries& e = r[pivot_rows_[i]];
    if (e.is_zero()) continue;
    LaurentSeries high = e - e.head(pivot_vals_[i]);
    if (high.is_zero()) continue;
    LaurentSeries q = high.shifted(-pivot_vals_[i]);
    for (int row = 0; row < n_; ++row) r[row] -= q * cols_[i][row];
    if (coords) (*coords)[i] = q;
  }
  for (const auto& e : r)
    if (!e.head(std::min(prec_, e.precision())).is_zero()) return false;
  return true;
}

bool Lattice::contains(const Lattice& other) const {
  for (const auto& col : other.cols_)
    if (!contains(col)) return false;
  return true;
}

Lattice Lattice::shifted(int t) const {
  Lattice r = *this;
  for (auto& col : r.cols_)
    for (auto& e : col) e = e.shifted(t);
  for (auto& v : r.pivot_vals_) v += t;
  if (r.prec_ < kExactPrec) r.prec_ += t;
  return r;
}

Lattice sum(const Lattice& x, const Lattice& y) {
  if (x.n_ != y.n_) fail(errc::not_normal, "lattice sum: ambient mismatch");
  std::vector<Lattice::Column> cols = x.cols_;
  cols.insert(cols.end(), y.cols_.begin(), y.cols_.end());
  return Lattice::from_columns(x.n_, std::move(cols), std::min(x.prec_, y.prec_));
}

// Intersection via kernel combinations: run the echelon reduction on the
// concatenated generator list while tracking, for every column, its
// coefficient vector over the generators of x. Columns that reduce to
// zero witness relations g_x * s + g_y * t = 0, whose x-part g_x * s
// lies in both lattices; those elements generate the intersection.
Lattice intersect(const Lattice& x, const Lattice& y) {
  if (x.n_ != y.n_) fail(errc::not_normal, "lattice intersect: ambient mismatch");
  int prec = std::min(x.prec_, y.prec_);
  int n = x.n_;
  int rx = x.rank();
  std::vector<Lattice::Column> cols = x.cols_;
  cols.insert(cols.end(), y.cols_.begin(), y.cols_.end());
  std::vector<std::vector<LaurentSeries>> shadow(cols.size(),
                                                 std::vector<LaurentSeries>(rx));
  for (int i = 0; i < rx; ++i) shadow[i][i] = LaurentSeries::monomial(0);

  std::vector<int> untreated(cols.size());
  for (size_t i = 0; i < cols.size(); ++i) untreated[i] = static_cast<int>(i);
  std::vector<Lattice::Column> members;

  while (!untreated.empty()) {
    int best_col = -1, best_row = -1, best_val = INT_MAX;
    for (int c : untreated) {
      for (int r = 0; r < n; ++r) {
        int v = pivot_val(cols[c][r]);
        if (v >= prec) continue;
        if (v < best_val || (v == best_val && r < best_row)) {
          best_val = v;
          best_row = r;
          best_col = c;
        }
      }
    }
    if (best_col < 0) break;

    LaurentSeries mult =
        pivot_reciprocal(cols[best_col][best_row], prec).shifted(best_val);
    for (auto& e : cols[best_col]) e = mult * e;
    for (auto& e : shadow[best_col]) e = mult * e;

    for (size_t c = 0; c < cols.size(); ++c) {
      if (static_cast<int>(c) == best_col) continue;
      const LaurentSeries& e = cols[c][best_row];
      if (e.is_zero()) continue;
      LaurentSeries high = e - e.head(best_val);
      if (high.is_zero()) continue;
      LaurentSeries q = high.shifted(-best_val);
      for (int r = 0; r < n; ++r) cols[c][r] -= q * cols[best_col][r];
      for (int r = 0; r < rx; ++r) shadow[c][r] -= q * shadow[best_col][r];
    }
    untreated.erase(std::find(untreated.begin(), untreated.end(), best_col));
  }

  // Whatever remains untreated is zero at the working precision; its
  // shadow combination of x's generators is an intersection element.
  for (int c : untreated) {
    Lattice::Column elem(n);
    bool nonzero = false;
    for (int r = 0; r < n; ++r) {
      LaurentSeries acc;
      for (int i = 0; i < rx; ++i) acc += shadow[c][i] * x.cols_[i][r];
      nonzero = nonzero || !acc.is_zero();
      elem[r] = std::move(acc);
    }
    if (nonzero) members.push_back(std::move(elem));
  }
  return Lattice::from_columns(n, std::move(members), prec);
}

bool operator==(const Lattice& x, const Lattice& y) {
  if (x.n_ != y.n_ || x.rank() != y.rank()) return false;
  if (x.pivot_rows_ != y.pivot_rows_ || x.pivot_vals_ != y.pivot_vals_)
    return false;
  int prec = std::min(x.prec_, y.prec_);
  for (int c = 0; c < x.rank(); ++c)
    for (int r = 0; r < x.n_; ++r) {
      LaurentSeries d = x.cols_[c][r] - y.cols_[c][r];
      if (!d.head(std::min(prec, d.precision())).is_zero()) return false;
    }
  return true;
}

namespace {

TruncatedSeries ts_div_power(const TruncatedSeries& e, int v) {
  return LaurentSeries(e).shifted(-v).to_truncated();
}

}  // namespace

SmithData smith(const Lattice& g) {
  int n = g.ambient();
  int m = g.rank();
  SmithData out;
  out.ambient = n;

  std::vector<std::vector<TruncatedSeries>> a(n, std::vector<TruncatedSeries>(m));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) a[i][j] = g.columns()[j][i].to_truncated();

  auto ident = [n] {
    std::vector<std::vector<TruncatedSeries>> id(
        n, std::vector<TruncatedSeries>(n));
    for (int i = 0; i < n; ++i) id[i][i] = TruncatedSeries::constant(Scalar(1));
    return id;
  };
  out.u = ident();
  out.uinv = ident();
  int prec = g.precision();

  for (int t = 0; t < std::min(n, m); ++t) {
    int bi = -1, bj = -1, bv = INT_MAX;
    for (int i = t; i < n; ++i)
      for (int j = t; j < m; ++j) {
        const TruncatedSeries& e = a[i][j];
        if (e.is_zero()) continue;
        int v = e.valuation();
        if (v < prec && v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;

    if (bi != t) {
      std::swap(a[bi], a[t]);
      std::swap(out.u[bi], out.u[t]);                      // column swap of U
      for (int c = 0; c < n; ++c) std::swap(out.uinv[c][bi], out.uinv[c][t]);
    }
    if (bj != t)
      for (int i = 0; i < n; ++i) std::swap(a[i][bj], a[i][t]);

    TruncatedSeries unit = ts_div_power(a[t][t], bv);
    TruncatedSeries cut = unit;
    if (cut.is_exact() && cut.stored_size() > 1)
      cut = cut.truncated(prec < kExactPrec ? prec : kExactReciprocalDigits);
    TruncatedSeries unit_inv = cut.invert();
    for (int c = 0; c < m; ++c) a[t][c] = unit_inv * a[t][c];
    for (int r = 0; r < n; ++r) out.u[t][r] = unit * out.u[t][r];
    for (int c = 0; c < n; ++c) out.uinv[c][t] = unit_inv * out.uinv[c][t];

    for (int i = t + 1; i < n; ++i) {
      if (a[i][t].is_zero()) continue;
      TruncatedSeries f = ts_div_power(a[i][t], bv);
      for (int c = 0; c < m; ++c) a[i][c] -= f * a[t][c];
      for (int r = 0; r < n; ++r) out.u[t][r] += f * out.u[i][r];
      for (int c = 0; c < n; ++c) out.uinv[c][i] -= f * out.uinv[c][t];
    }
    for (int c = t + 1; c < m; ++c) {
      if (a[t][c].is_zero()) continue;
      TruncatedSeries f = ts_div_power(a[t][c], bv);
      for (int i = 0; i < n; ++i) a[i][c] -= f * a[i][t];
    }
    out.vals.push_back(bv);
  }
  out.rank = static_cast<int>(out.vals.size());
  return out;
}

Lattice normal_closure(const Lattice& g) {
  SmithData s = smith(g);
  std::vector<Lattice::Column> cols;
  for (int j = 0; j < s.rank; ++j) {
    Lattice::Column col(s.ambient);
    for (int i = 0; i < s.ambient; ++i) col[i] = LaurentSeries(s.u[j][i]);
    cols.push_back(std::move(col));
  }
  return Lattice::from_columns(s.ambient, std::move(cols), g.precision());
}

}  // namespace abm
