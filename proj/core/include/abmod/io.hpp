#pragma once

#include <string>

#include "abmod/fresco.hpp"
#include "abmod/theme.hpp"
#include "abmod/xi.hpp"

namespace abm {

// JSON text forms of the library values. Writers emit deterministic
// JSON; readers accept any structurally equivalent document and throw
// errc::syntax_error on malformed input. "precision" fields are omitted
// for exact values and restored as exact when absent.
//
// Series        {"terms": [[exponent, "coeff"], ...], "precision"?}
// Polynomial    {"coeffs": ["c0", "c1", ...]}
// Skew element  {"terms": [[m, d, "coeff"], ...], "precision"?}
//               for the normal form sum c * b^m * a^d
// Module        {"rank": k, "matrix": [[series, ...], ...], "precision"?}
//               with matrix[i][j] = coefficient of e_i in a.e_j
// Presentation  {"factors": [{"lambda": "3/2"}, {"inv": series}, ...]}
//               alternating linear factors and inverted units
// Expansion     {"terms": [{"lambda": "p/q", "m": int, "j": int,
//               "coeff": ["c", ...]}, ...], "precision"?}; a bare array
//               of term objects is accepted as an exact element
// Fundamental   {"lambda1": "p/q", "p": [ints]}
// Canonical     {"lambda1": "p/q", "p": [ints], "s": [series, ...]}
//
// Scalars are strings in the format Scalar::str emits ("p/q", or a
// rational function in tau); bare JSON integers are accepted.

std::string series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const std::string& text);

std::string polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const std::string& text);

std::string ab_element_to_json(const AbElement& x);
AbElement ab_element_from_json(const std::string& text);

std::string module_to_json(const AbModule& e);
AbModule module_from_json(const std::string& text);

std::string presentation_to_json(const FrescoPresentation& pi);
FrescoPresentation presentation_from_json(const std::string& text);

std::string expansion_to_json(const XiElement& x);
XiElement expansion_from_json(const std::string& text);

std::string fundamental_data_to_json(const FundamentalData& d);
FundamentalData fundamental_data_from_json(const std::string& text);

std::string canonical_form_to_json(const CanonicalForm& cf);
CanonicalForm canonical_form_from_json(const std::string& text);

}  // namespace abm
