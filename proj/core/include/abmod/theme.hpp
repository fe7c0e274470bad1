#pragma once

#include <string>
#include <vector>

#include "abmod/fresco.hpp"
#include "abmod/xi.hpp"

namespace abm {

struct ThemeCheck {
  bool ok = false;
  Rational mu;  // common class in (0, 1] of the exponents, set when ok
};

// A geometric module is a primitive theme exactly when its normal rank-1
// submodule is unique up to scale. The class mu is read off the
// principal exponents, which are cross-checked to agree mod Z.
ThemeCheck is_theme(const AbModule& f);

// Principal exponents of a primitive theme written through the integers
// p_j: lambda_{j+1} = lambda_j + p_j - 1, with lambda_1 > k - 1 and
// every p_j >= 0.
struct FundamentalData {
  Rational lambda1;
  std::vector<int> p;

  int rank() const { return static_cast<int>(p.size()) + 1; }
  Rational lambda(int j) const;  // 1-based; lambda(1) == lambda1
  std::vector<Rational> lambdas() const;
  std::string str() const;

  friend bool operator==(const FundamentalData& x, const FundamentalData& y) {
    return x.lambda1 == y.lambda1 && x.p == y.p;
  }
};

// Reads the data off the principal factorization. Throws
// errc::not_primitive when the exponents span several classes mod Z or
// violate the p_j / lambda_1 constraints.
FundamentalData fundamental_data(const AbModule& theme);

// Monomial exponents available to the j-th inner unit, and the open
// conditions cutting W_j out of that span: S(0) = 1 and a nonzero
// coefficient on b^(p_j). The staircase 0..k-j-1 is always present; the
// extra exponent q_j = p_j + ... + p_{j+h} (h minimal) joins once the
// tail of the p-sequence reaches k - j.
struct VWSpace {
  int p = 0;                 // exponent carrying the open condition
  std::vector<int> support;  // sorted exponents spanning V_j
  bool has_q = false;
  int q = 0;

  std::string describe_w() const;
};

std::vector<VWSpace> build_VW(const FundamentalData& data);

// Fundamental data together with inner units S_j in W_j; the module it
// names is the quotient by (a - l1 b) S_1^-1 ... S_{k-1}^-1 (a - lk b).
struct CanonicalForm {
  FundamentalData data;
  std::vector<TruncatedSeries> s;  // size rank - 1

  std::string str() const;
};

// Builds the module of a canonical form, validating the W_j membership
// of every unit, and verifies the result is a primitive theme.
AbModule theme_from_canonical(const CanonicalForm& cf,
                              int prec = kDefaultWindow);

// Searches prod W_j for a form isomorphic to the given theme. The tail
// units come from the quotient by the unique rank-1 submodule; the first
// unit from the linear system for a generator change, with every
// accepted candidate re-verified through theme_from_canonical. When
// unique is supplied it reports whether the matching parameter point is
// the only one at the working precision. Throws
// errc::canonicalization_failed when the candidates are exhausted
// (reported, never guessed).
CanonicalForm canonical_form(const AbModule& theme, bool* unique = nullptr);

struct HomDimension {
  int dim = 0;
  bool stabilized = false;  // agreement between two adjacent windows
};

// Dimension of the space of maps commuting with a and b, by truncated
// linear algebra on the matrix of series of the map. Solutions at the
// full window are projected to half the window, where truncation
// artifacts have died off but genuine maps keep full rank; the flag
// records agreement with the projection from one window earlier.
HomDimension hom_dimension(const AbModule& m1, const AbModule& m2);

struct InvarianceReport {
  bool invariant = false;  // endomorphism dimension equals the rank
  HomDimension hom;
  bool realization_invariant = false;  // supplied lattice is U-stable
};

// Monodromy invariance of a theme: the endomorphism-dimension criterion
// decides, and the supplied realization is additionally tested for
// stability under the unipotent monodromy. A particular realization can
// fail the lattice test while the theme is invariant (only existence of
// a stable one is equivalent), so both verdicts are reported.
InvarianceReport is_invariant(const AbModule& theme, const Realization& r);

// Isomorphism test rooted at a presentation of m1: m2 must contain a
// generator killed by m1's normalized relation. The kernel is sampled
// with small combinations (unit and tau-power weights), so a negative
// answer means no sampled kernel element generates m2.
bool are_isomorphic(const AbModule& m1, const AbModule& m2);

}  // namespace abm
