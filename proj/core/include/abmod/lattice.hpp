#pragma once

#include <optional>
#include <vector>

#include "abmod/matrix.hpp"
#include "abmod/series.hpp"

namespace abm {

// A finitely generated C[[b]]-submodule of K((b))^n, held as a normalized
// set of generator columns. Normal form: column echelon over the
// valuation ring — pivots chosen by minimal b-valuation, pivot entries
// scaled to pure powers b^v, pivot rows cleared elsewhere (entries in
// other columns keep only exponents below the pivot valuation), columns
// sorted by pivot row. Two lattices are equal modulo b^prec iff their
// normal forms agree.
//
// All rank and equality decisions are taken at the stated precision;
// coefficients at or beyond it are treated as unknown and never consulted.
class Lattice {
public:
  using Column = std::vector<LaurentSeries>;

  Lattice() : n_(0), prec_(kExactPrec) {}
  Lattice(int ambient, int prec) : n_(ambient), prec_(prec) {}

  // The standard lattice C[[b]]^n.
  static Lattice full(int ambient, int prec);
  static Lattice from_columns(int ambient, std::vector<Column> cols, int prec);

  int ambient() const { return n_; }
  int rank() const { return static_cast<int>(cols_.size()); }
  int precision() const { return prec_; }
  // Normalized generators, sorted by pivot row.
  const std::vector<Column>& columns() const { return cols_; }
  // Pivot row of each normalized column.
  const std::vector<int>& pivot_rows() const { return pivot_rows_; }
  // Pivot valuation of each normalized column.
  const std::vector<int>& pivot_vals() const { return pivot_vals_; }

  // Smallest valuation over all entries; 0 for the zero lattice.
  int min_valuation() const;
  // Least t >= 0 with b^t * (this) inside C[[b]]^n.
  int denominator_exponent() const { return std::max(0, -min_valuation()); }

  bool is_zero() const { return cols_.empty(); }

  // Membership of a vector modulo b^prec; optionally yields the
  // C[[b]]((b))-coordinates in the normalized generator basis.
  bool contains(const Column& x, std::vector<LaurentSeries>* coords = nullptr) const;
  bool contains(const Lattice& other) const;

  Lattice shifted(int t) const;  // b^t * L

  friend Lattice sum(const Lattice& x, const Lattice& y);
  friend Lattice intersect(const Lattice& x, const Lattice& y);
  friend bool operator==(const Lattice& x, const Lattice& y);

private:
  void normalize();

  int n_;
  int prec_;
  std::vector<Column> cols_;
  std::vector<int> pivot_rows_;
  std::vector<int> pivot_vals_;
  // Column indices in pivot-processing order. In that order every column
  // vanishes at the pivot rows of earlier columns, which makes coordinate
  // extraction a triangular peel.
  std::vector<int> peel_order_;
};

// Smith decomposition data of a sublattice G of C[[b]]^n (all generator
// entries must be power series): G = U * diag(b^v) * (unimodular), so the
// columns of U are an ambient basis whose first r members scale to a
// basis of G.  Uinv is U's inverse; both are unimodular over C[[b]].
struct SmithData {
  std::vector<std::vector<TruncatedSeries>> u;     // n x n, column major
  std::vector<std::vector<TruncatedSeries>> uinv;  // n x n, column major
  std::vector<int> vals;                           // r elementary exponents
  int rank = 0;
  int ambient = 0;

  bool is_normal() const {
    for (int v : vals)
      if (v != 0) return false;
    return true;
  }
};

SmithData smith(const Lattice& g);

// Saturation closure inside C[[b]]^n: the smallest normal (b-saturated)
// sublattice containing g.
Lattice normal_closure(const Lattice& g);

}  // namespace abm
