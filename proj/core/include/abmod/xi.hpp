#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "abmod/ab_module.hpp"
#include "abmod/fresco.hpp"

namespace abm {

// Element of the expansion module: a finite sum of terms
//   c * s^(lambda+m-1) * (Log s)^j / j!
// with lambda in (0,1], m >= 0 an integer shift, j a log-degree, and c a
// coefficient vector of length dim_v. Terms with shift m >= precision()
// are unknown and never stored; log_cap() bounds j structurally (the
// ambient module is closed under both actions, neither raises j).
class XiElement {
public:
  XiElement() : dim_v_(1), n_log_(0), m_prec_(kExactPrec) {}
  XiElement(int dim_v, int n_log, int m_prec);

  // c * s^(mu-1) * (Log s)^j / j! with dim_v = 1. mu is reduced to the
  // class representative; the shift lands in m.
  static XiElement term(const Rational& mu, int j, const Scalar& c,
                        int n_log, int m_prec = kExactPrec);

  int dim_v() const { return dim_v_; }
  int log_cap() const { return n_log_; }
  int precision() const { return m_prec_; }
  bool is_exact() const { return m_prec_ >= kExactPrec; }
  bool is_zero() const { return t_.empty(); }

  // Adds c * s^(lambda+m-1) * (Log s)^j / j!. The exponent is
  // renormalized so the stored class lies in (0,1]; shifts that fall
  // below zero (non-integrable exponents) are rejected, shifts at or
  // beyond the precision are dropped.
  void add_term(const Rational& lambda, int j, int m, std::vector<Scalar> c);
  void add_term(const Rational& lambda, int j, int m, const Scalar& c);

  Scalar coeff(const Rational& lambda, int j, int m, int v = 0) const;

  struct Term {
    Rational lambda;
    int j = 0;
    int m = 0;
    std::vector<Scalar> c;
  };
  // Stored terms sorted by (lambda, j, m); no zero vectors.
  std::vector<Term> terms() const;

  // Distinct stored classes, sorted.
  std::vector<Rational> classes() const;
  // Largest stored log-degree, -1 when zero.
  int max_log() const;
  // Smallest stored shift; precision() when zero.
  int min_shift() const;

  XiElement truncated(int m_prec) const;

  XiElement operator-() const;
  friend XiElement operator+(const XiElement& x, const XiElement& y);
  friend XiElement operator-(const XiElement& x, const XiElement& y);
  friend XiElement operator*(const Scalar& s, const XiElement& x);

  std::string str() const;

private:
  friend class XiWindow;
  void put(const Rational& lambda, int j, int m, int v, const Scalar& c);

  int dim_v_;
  int n_log_;
  int m_prec_;
  // key (lambda, j, m) -> coefficient vector, zero vectors removed
  std::map<std::tuple<Rational, int, int>, std::vector<Scalar>> t_;
};

// Agreement of all terms with shift below the smaller precision.
bool equal_mod_prec(const XiElement& x, const XiElement& y);

// Multiplication by s: shifts m by one on every term.
XiElement xi_a(const XiElement& x);
// Primitive without constant term: the closed form
//   b(s^(mu-1) (Log s)^j/j!) = sum_{i<=j} (-1)^(j-i) mu^-(j-i+1) s^mu (Log s)^i/i!
// applied termwise with mu = lambda + m.
XiElement xi_b(const XiElement& x);
// f(b).x for a one-variable series f.
XiElement xi_apply_series(const TruncatedSeries& f, const XiElement& x);
// op.x for an element sum c b^m a^d of the skew algebra.
XiElement xi_apply(const AbElement& op, const XiElement& x);

// The unipotent factor of the monodromy on the given class: the class
// component of x with Log s translated by tau,
//   (Log s)^j/j! -> sum_{i<=j} (Log s)^i/i! * tau^(j-i)/(j-i)!.
// Terms of other classes are dropped (the monodromy is class-diagonal;
// the accompanying class scalar is never materialized). (U - id) is
// nilpotent of order at most log_cap + 1.
XiElement monodromy_unipotent(const XiElement& x, const Rational& lambda_class);

// A fixed finite chart of the expansion module: classes x log-degrees x
// value coordinates index the C[[b]]-basis s^(lambda-1)(Log s)^j/j! e_v,
// shifts below m_prec index the series coefficients. The chart converts
// between expansion elements and C[[b]]-coordinate columns; b acts on
// coordinates as plain multiplication by b, which makes every lattice
// question about expansion spans a Lattice computation.
class XiWindow {
public:
  XiWindow(std::vector<Rational> classes, int n_log, int m_prec, int dim_v);

  const std::vector<Rational>& classes() const { return cls_; }
  int n_log() const { return n_; }
  int m_prec() const { return m_; }
  int dim_v() const { return dv_; }

  // C[[b]]-rank of the chart.
  int rows() const { return static_cast<int>(cls_.size()) * (n_ + 1) * dv_; }
  int row(int class_idx, int j, int v) const {
    return (class_idx * (n_ + 1) + j) * dv_ + v;
  }

  // Number of coefficient monomials (rows() * m_prec) and their flat
  // index, for C-linear solves over the whole chart.
  int monomials() const { return rows() * m_; }
  int monomial_index(int class_idx, int j, int m, int v) const {
    return ((class_idx * (n_ + 1) + j) * m_ + m) * dv_ + v;
  }
  XiElement monomial(int class_idx, int j, int m, int v) const;

  // Coordinates of x in the chart basis, precision min(m_prec,
  // x.precision()). Classes or log-degrees outside the chart are
  // rejected.
  Lattice::Column coordinates(const XiElement& x) const;
  // Inverse of coordinates() on power-series columns.
  XiElement element_from(const std::vector<TruncatedSeries>& coords) const;
  XiElement element_from(const Lattice::Column& coords) const;

private:
  std::vector<Rational> cls_;
  int n_;
  int m_;
  int dv_;
  // bridge_[c][m](i, j) = coefficient of s^(lambda+m-1)(Log s)^i/i! in
  // b^m s^(lambda-1)(Log s)^j/j!; upper triangular, unit-free diagonal.
  std::vector<std::vector<Matrix<Scalar>>> bridge_;
};

// A module together with an expansion realizing it: basis_images[d] is
// the image of the d-th basis vector (for generated themes, a^d x), and
// the chart data records where the images live. The defining property is
// that e_d -> basis_images[d] intertwines both actions.
struct Realization {
  AbModule module;
  XiElement x;
  std::vector<XiElement> basis_images;
  std::vector<Rational> classes;
  int n_log = 0;
  int m_prec = 0;
  int dim_v = 1;
};

// Verifies the intertwining property of a realization at its precision.
bool realization_intertwines(const Realization& r);

// Whether y lies in the C[[b]]-span of the realization's basis images at
// the chart precision. Terms outside the chart (foreign class or higher
// log-degree) make the answer false; a mismatched value dimension is an
// error.
bool realization_contains(const Realization& r, const XiElement& y);

struct ThemeGeneration {
  Realization realization;
  AbElement pi_normal;   // a^k - sum u_j(b) a^j on the generator
  HomogeneousElement p;  // initial form of pi_normal
};

// The module generated by a single expansion: detects the C[[b]]-rank k
// of the span of x, a.x, a^2.x, ... by column reduction in the chart of
// x, and returns the action on that basis together with the generator
// relation. Throws errc::rank_not_stabilized when the span is still
// growing at the chart's capacity.
ThemeGeneration generate_theme(const XiElement& x);

// Basis of { x : pi(x) = 0 } in the chart with the given classes,
// log-degree bound and shift window (an exact finite linear system; the
// result can be empty when the classes miss the spectrum of pi).
std::vector<XiElement> solve_in_xi(const AbElement& pi,
                                   const std::vector<Rational>& classes,
                                   int n_log, int m_prec, int dim_v);
std::vector<XiElement> solve_in_xi(const FrescoPresentation& pi,
                                   const std::vector<Rational>& classes,
                                   int n_log, int m_prec, int dim_v);

// The semi-simple filtration of a realized module: stage t+1 is the
// intersection of the realized span with the terms of log-degree <= t,
// so the first stage is the log-free part (the biggest semi-simple
// submodule) and the last is the whole module. Stages are returned as
// normal submodules in increasing order.
std::vector<SubmoduleData> ss_filtration(const Realization& r);

// The co-semi-simple filtration: stage j is the intersection with
// log-degree <= N - j where N is the chart's log level, which must be
// minimal among all realizations of the module
// (errc::not_minimal_embedding otherwise). Stages decrease from the
// whole module down to the log-free part.
std::vector<SubmoduleData> co_ss_filtration(const Realization& r);

// Intersection of the realized module with the terms whose class lies in
// the given set: the primitive part over those classes.
SubmoduleData primitive_filtration(const Realization& r,
                                   const std::vector<Rational>& classes);

}  // namespace abm
