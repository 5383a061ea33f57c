#pragma once

#include <string>

#include "lbp/term.hpp"

namespace lbp {

/// Concrete syntax; parse(pretty(t)) is alpha-equal to t for terms whose
/// names are grammar-parseable (use display_names first otherwise).
std::string pretty(const TermPtr& t);

/// Shortest round-tripping decimal form of a numeral.
std::string show_num(double v);

}  // namespace lbp
