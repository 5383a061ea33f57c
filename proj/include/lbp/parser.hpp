#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "lbp/registry.hpp"
#include "lbp/term.hpp"
#include "lbp/types.hpp"

namespace lbp {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_), col(col_) {}
};

/// Concrete syntax:
///   term := '\' id [':' type] '.' term | 'lin' id '.' term
///         | 'let' id '=' term 'in' term | 'let' '(' id ',' id ')' '=' term 'in' term
///         | sum
///   sum := prod ('+' prod)*        prod := app ('*' app)*      app := atom+
///   atom := number | id | id '(' args ')' (tight, registered symbol)
///         | '(' term ')' | '(' term ',' term ')'
/// Compound arguments of f(...) desugar to explicit substitutions.
TermPtr parse(std::string_view text, const Registry& reg);

TypePtr parse_type(std::string_view text);

}  // namespace lbp
