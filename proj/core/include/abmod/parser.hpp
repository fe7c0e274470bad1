#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "abmod/ab_element.hpp"

namespace abm {

// Expression text over the tokens a, b, tau, rationals, + - * ^,
// parentheses and inv(S) for unit series S. Exact input stays exact;
// only inv(...) introduces truncation, at the supplied precision.
// Throws errc::syntax_error with a character position on bad input and
// errc::not_a_unit for inv of a non-unit.
AbElement parse_ab_element(std::string_view text, int prec);

// A series in one variable (b by default; z accepted as an alias, handy
// for change-of-variable arguments). Rejects input containing a.
TruncatedSeries parse_series(std::string_view text, int prec);

// A single scalar: rational arithmetic with optional tau, including /.
// Accepts everything Scalar::str() produces.
Scalar parse_scalar(std::string_view text);

// One multiplicand of a top-level product, tagged with whether it was
// written as inv(...). Used to recognize presentation-shaped input.
struct ParsedFactor {
  AbElement value;
  bool is_inverse = false;
  TruncatedSeries inv_argument;  // the S inside inv(S), when is_inverse
};

// Splits text into its top-level product factors. Returns nothing when
// the top level is a sum (callers then treat the input as one element).
std::optional<std::vector<ParsedFactor>> parse_factors(std::string_view text,
                                                       int prec);

}  // namespace abm
