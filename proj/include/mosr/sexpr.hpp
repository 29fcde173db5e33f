#pragma once

#include <string>
#include <string_view>

#include "tree.hpp"

namespace mosr {

// "(+ (* 7 (square x0)) (* 3 x0) 5)". Constants use the shortest decimal that reads back
// to the same double.
auto to_sexpr(const Tree& tree) -> std::string;

// Inverse of to_sexpr. Throws ParseError (with a character offset) on unknown symbols,
// wrong arities, malformed numbers, and unbalanced parentheses.
auto parse_sexpr(std::string_view text) -> Tree;

} // namespace mosr
