#pragma once

#include <stdexcept>
#include <string>

namespace abm {

// Every failure mode the library reports deliberately. Anything else
// escaping a public entry point is a bug.
enum class errc {
  not_a_unit,            // series inversion needs a nonzero constant term
  divisor_not_monic,     // right division wants a - T(b) with unit leading part
  not_fully_split,       // polynomial has irrational (or non-scalar) roots
  syntax_error,          // presentation / series parser rejected the input
  precision_exhausted,   // not enough known b-digits to decide the question
  not_regular,           // operation requires a regular (a,b)-module
  not_geometric,         // operation requires a geometric (a,b)-module
  invalid_theta,         // change of variable needs theta(0)=0, theta'(0)!=0
  not_a_fresco,          // module admits no single generator of the right kind
  not_normal,            // submodule is not saturated inside its ambient module
  selection_ambiguous,   // requested canonical choice is not unique
  rank_not_stabilized,   // iterative rank computation still moving at cutoff
  field_too_small,       // scalar value does not live in the rationals
  not_minimal_embedding, // realization uses more expansion classes than needed
  canonicalization_failed, // canonical form search did not converge
  not_primitive,         // theme operation requires a primitive theme
  degree_bound_exceeded, // a-degree guard tripped (runaway computation)
  cross_check_failed,    // two independent computation paths disagree
};

const char* errc_name(errc code);

class ab_error : public std::runtime_error {
public:
  ab_error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw ab_error(code, what);
}

}  // namespace abm
