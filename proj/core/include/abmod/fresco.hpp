#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abmod/ab_element.hpp"
#include "abmod/ab_module.hpp"
#include "abmod/parser.hpp"

namespace abm {

// Monogenic module given by its factored generator of the left ideal:
// (a - l[0] b) * inv(s[0]) * (a - l[1] b) * ... * inv(s[k-2]) * (a - l[k-1] b).
// Inner units are normalized to s[j](0) = 1 on construction; scaling a
// unit only rescales the whole product, which presents the same module.
struct FrescoPresentation {
  std::vector<Rational> lambda;
  std::vector<TruncatedSeries> s;  // size rank()-1

  int rank() const { return static_cast<int>(lambda.size()); }
  // Expanded left normal form sum c_j(b) a^j at the given precision.
  AbElement element(int prec) const;
  std::string str() const;
};

// Normalizes the unit parts (and validates the shape: k >= 1, matching
// list sizes, every s[j] a unit).
FrescoPresentation make_presentation(std::vector<Rational> lambda,
                                     std::vector<TruncatedSeries> s);

// Recognizes the alternating linear/inverse-unit shape in a parsed
// product. Returns nothing when the factors are not presentation-shaped
// (callers then treat the input as a plain element).
std::optional<FrescoPresentation> presentation_shape(
    const std::vector<ParsedFactor>& factors);

// The module on the basis e, a.e, ..., a^{k-1}.e of the quotient by the
// presentation's left ideal.
AbModule module_from_presentation(const FrescoPresentation& pi, int prec);

struct FrescoCheck {
  bool ok = false;
  ModuleElement generator;  // spans E/(aE + bE) when ok
  int codimension = 0;      // dim of E/(aE + bE)
};

// A geometric module is monogenic iff aE + bE has codimension 1; the
// returned generator is additionally verified to give a power basis.
FrescoCheck is_fresco(const AbModule& e);

struct FrescoNormalForm {
  AbElement pi_normal;   // a^k - sum_{j<k} u_j(b) a^j
  HomogeneousElement p;  // initial form of pi_normal, monic of degree k
};

// The relation satisfied by the generator's a-powers, recovered by
// truncated linear algebra. The initial form is generator-independent.
FrescoNormalForm presentation_from_module(const AbModule& f,
                                          const ModuleElement& gen);

// Initial form of the presentation, computed two independent ways (from
// the generator relation and, via its Bernstein polynomial, from the
// residue of the saturation) and cross-checked.
HomogeneousElement bernstein_element(const AbModule& f);

// Characteristic polynomial of -b^{-1}a on the saturation mod b. For
// monogenic modules this refines the minimal-polynomial invariant of
// AbModule::bernstein_polynomial.
Polynomial fresco_bernstein_polynomial(const AbModule& f);

struct ExactSequenceReport {
  AbModule sub;       // G with the inherited action
  AbModule quotient;  // H = F/G
  HomogeneousElement p_f, p_g, p_h;
  Polynomial b_f, b_g, b_h;
  bool p_identity = false;  // p_f == p_g * p_h
  bool b_identity = false;  // b_f(x) == b_g(x - rank H) * b_h(x)
};

// Splits F along a normal submodule lattice and verifies the initial
// form and Bernstein-polynomial product identities.
ExactSequenceReport exact_sequence_check(const AbModule& f, const Lattice& g);

struct JHSequence {
  std::vector<Rational> lambda;           // quotient exponents, in order
  std::vector<ModuleElement> generators;  // stage generators, in F coords
  bool principal = false;                 // lambda_j + j nondecreasing
  bool strictly_decreasing_exists = false;
};

// The filtration 0 = F_0 < F_1 < ... < F_k = F with rank-1 quotients
// E_{lambda_j} and lambda_j + j nondecreasing, computed by repeatedly
// extracting the unique rank-1 normal submodule at the required
// exponent. generators[j] generates F_{j+1} over F_j.
JHSequence principal_jh(const AbModule& f);

// True iff the module embeds into a finite direct sum of rank-1 modules,
// decided by realizing it with log-free asymptotic expansions and
// cross-checked against the existence of a Jordan-Hoelder ordering with
// lambda_j + j strictly decreasing.
bool is_semisimple(const AbModule& f);

}  // namespace abm
