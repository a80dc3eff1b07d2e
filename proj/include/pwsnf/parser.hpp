#pragma once

#include <map>
#include <string>
#include <string_view>

#include "pwsnf/poly.hpp"

namespace pwsnf {

// Grammar:
//   expr    := ['-'] term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := ['-'] primary ['^' (INT | '(' expr ')')]
//   primary := INT | INT '/' INT | IDENT | '(' expr ')'
// A parenthesised exponent must evaluate to a non-negative integer constant.
// Identifiers in `bound` are replaced by their values; all others must be symbols of `ring`.
Poly parse_poly(std::string_view text, const Ring& ring, const std::map<std::string, Poly>& bound = {});

}  // namespace pwsnf
