#pragma once

#include <string_view>

#include "toreq/lpoly.hpp"

namespace toreq {

/// Parses a polynomial expression in x1..xn.
///
///   expr     := [sign] term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := rational | var | '(' expr ')'
///   var      := 'x' index ('^' signed-integer)?
///   rational := signed-integer ('/' positive-integer)?
///
/// Whitespace (including newlines) is insignificant. When nvars == 1 a bare
/// 'x' is accepted as x1. Throws SyntaxError with 1-based line and column.
LPoly parse_poly(std::string_view text, std::size_t nvars);

/// Largest variable index mentioned in the text (at least 1).
std::size_t infer_nvars(std::string_view text);

}  // namespace toreq
