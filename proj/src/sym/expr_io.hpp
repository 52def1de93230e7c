#pragma once

#include <string>

#include "sym/expr.hpp"

namespace qhl::sym {

/// Canonical text form. Deterministic: terms in descending monomial order,
/// factors grouped unknowns/parameters/coordinates/generators. Examples:
/// "C*z^2 - 1/4*D^2", "(z)/(z + 1)".
std::string to_string(const Poly& p);
std::string to_string(const Expr& e);

/// Parses +,-,*,/,^ with integer literals and registry symbols. Round-trips
/// canonical forms: parse(to_string(e)) == e.
Expr parse_expr(const VarSetPtr& vs, const std::string& text);

}  // namespace qhl::sym
