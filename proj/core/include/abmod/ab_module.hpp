#pragma once

#include <functional>
#include <vector>

#include "abmod/lattice.hpp"
#include "abmod/matrix.hpp"
#include "abmod/spectral.hpp"

namespace abm {

// Window used by operations that need a finite coefficient window when
// the object they work on is exact.
constexpr int kDefaultWindow = 16;

inline int finite_window(int prec) {
  return prec >= kExactPrec ? kDefaultWindow : prec;
}

// Element of a free C[[b]]-module, as the coordinate vector in the
// module's distinguished basis.
struct ModuleElement {
  std::vector<TruncatedSeries> coords;

  bool is_zero() const {
    for (const auto& c : coords)
      if (!c.is_zero()) return false;
    return true;
  }
  int valuation() const;  // min over coordinates
  friend ModuleElement operator+(const ModuleElement& x, const ModuleElement& y);
  friend ModuleElement operator-(const ModuleElement& x, const ModuleElement& y);
  friend ModuleElement operator*(const Scalar& s, const ModuleElement& x);
  friend ModuleElement operator*(const TruncatedSeries& s, const ModuleElement& x);
  std::string str() const;
};

bool equal_mod_prec(const ModuleElement& x, const ModuleElement& y);

enum class SatStatus { saturated, not_stabilized };

class AbModule;

// Result of the saturation iteration L <- L + b^{-1}a(L).
struct Saturation {
  std::vector<std::vector<TruncatedSeries>> action;  // saturated action columns
  Lattice basis;     // saturated generators in the original coordinates
  SatStatus status = SatStatus::not_stabilized;
  int steps = 0;     // strict growth steps until stable
  int delta = 0;     // least d >= 0 with b^d * saturation inside the module
  int prec = 0;      // precision of the saturated action
  std::vector<int> valuation_trail;  // min lattice valuation after each step

  AbModule module() const;  // simple-pole module on the saturated basis
};

// An (a,b)-module: free C[[b]]-module of finite rank with an a-action
// satisfying a(S v) = S a(v) + b^2 S'(b) v. The structure is the matrix
// of a on the basis, column j = coordinates of a.e_j, entries known
// modulo b^precision.
class AbModule {
public:
  AbModule(std::vector<std::vector<TruncatedSeries>> action_columns, int prec);

  // Rank-1 module with a.e = lambda b.e.
  static AbModule e_lambda(const Rational& lambda, int prec);
  // The unique module with a.(e) = A(a).b.(e); A's entries are series in
  // the variable a, and the implicit occurrences of a on the right are
  // resolved order-by-order in b.
  static AbModule from_simple_pole_system(
      const std::vector<std::vector<TruncatedSeries>>& a_cols, int prec);
  static AbModule direct_sum(const AbModule& x, const AbModule& y);

  int rank() const { return k_; }
  int precision() const { return prec_; }
  const std::vector<TruncatedSeries>& action_column(int j) const {
    return m_[j];
  }
  const std::vector<std::vector<TruncatedSeries>>& action() const { return m_; }

  ModuleElement zero() const;
  ModuleElement basis_element(int j) const;

  ModuleElement apply_a(const ModuleElement& v) const;
  ModuleElement apply_b(const ModuleElement& v) const;
  // a on Laurent coordinate vectors (needed while saturating).
  std::vector<LaurentSeries> apply_a(const std::vector<LaurentSeries>& v) const;

  bool is_simple_pole() const;

  // Iterate L <- L + b^{-1}a(L) until stable; max_steps <= 0 selects the
  // default cap rank * precision. Throws errc::precision_exhausted when
  // the working window cannot represent the valuations any more.
  Saturation saturate(int max_steps = 0) const;

  // Matrix of -b^{-1}a on E/bE; requires a simple pole module.
  Matrix<Scalar> residue_matrix() const;

  // Minimal polynomial of -b^{-1}a on the saturation mod b; throws
  // errc::not_regular when saturation does not stabilize.
  Polynomial bernstein_polynomial() const;

  // True when the Bernstein polynomial splits over Q with all roots < 0.
  bool is_geometric() const;

  // c(a).v for a one-variable power series c, truncated using the
  // regularity gap (a^m E lies in b^{m-delta} E).
  ModuleElement apply_a_series(const TruncatedSeries& c, const ModuleElement& v) const;

  // Substitution a -> theta(a), b -> b theta'(a), re-expressed on a basis
  // adapted to the new b. Requires theta(0) = 0, theta'(0) != 0 and a
  // regular module.
  AbModule change_of_variable(const TruncatedSeries& theta) const;

  friend bool operator==(const AbModule& x, const AbModule& y);

  std::string str() const;

private:
  ModuleElement apply_a_series_with_delta(const TruncatedSeries& c,
                                          const ModuleElement& v,
                                          int delta) const;

  int k_;
  int prec_;
  std::vector<std::vector<TruncatedSeries>> m_;  // column-major action
};

// A submodule of `parent` with its induced structure: `module` is the
// structure on the chosen basis, `inclusion[j]` its j-th basis vector in
// parent coordinates.
struct SubmoduleData {
  AbModule module;
  std::vector<ModuleElement> inclusion;
};

// Quotient by a normal submodule: structure on the classes of an adapted
// basis, lifts of that basis, and the projection parent -> quotient.
struct QuotientData {
  AbModule module;
  std::vector<ModuleElement> lift;  // parent coordinates of quotient basis
  // projection matrix rows: quotient coordinate i of a parent vector is
  // sum_j proj[i][j] * x_j.
  std::vector<std::vector<TruncatedSeries>> proj;

  ModuleElement project(const ModuleElement& x) const;
};

// Solutions of a.x = lambda b.x in E modulo scalars: for each lambda with
// a solution of coordinate valuation 0 (so that C[[b]].x is normal of
// rank one), the full solution space at the reported precision.
struct Rank1Family {
  Rational lambda;
  std::vector<ModuleElement> basis;
};

// Sub-(a,b)-module structure on a lattice of parent coordinates; the
// lattice must be a-stable (errc::not_normal otherwise).
SubmoduleData submodule_on(const AbModule& parent, const Lattice& gens);

// Quotient of `parent` by the normal submodule spanned by `sub`; throws
// errc::not_normal when the span is not b-saturated in the parent.
QuotientData quotient_by(const AbModule& parent, const Lattice& sub);

// The part of E over the residue classes (mod Z) in `classes`: span of
// the generalized eigenspaces of -b^{-1}a on the saturation whose
// exponent classes lie in the set, intersected with E. Requires a
// geometric module.
SubmoduleData primitive_part(const AbModule& e,
                             const std::vector<Rational>& classes);

// All normal rank-1 submodules C[[b]].x (a.x = lambda b.x, x not in bE),
// grouped by lambda. Requires a geometric module.
std::vector<Rank1Family> rank1_normal_submodules(const AbModule& e);

// Flat coordinates for K-linear algebra on E/b^n E: layout
// flat[t*k + i] = coefficient of b^t in coordinate i.
std::vector<Scalar> flatten(const std::vector<TruncatedSeries>& coords, int k,
                            int n);
std::vector<TruncatedSeries> unflatten(const std::vector<Scalar>& flat, int k,
                                       int n);
// Matrix of a C-linear operator on E/b^n E given by its action on
// coordinate vectors.
Matrix<Scalar> operator_matrix(
    int k, int n,
    const std::function<std::vector<TruncatedSeries>(
        const std::vector<TruncatedSeries>&)>& op);

}  // namespace abm
