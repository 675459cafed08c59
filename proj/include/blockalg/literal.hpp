#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blockalg/core.hpp"

namespace blockalg {

// Element literal grammar:
//   element := term (('+'|'-') term)* | '0'
//   term    := [coeff ['*']] 'x[' rat ',' rat ';' int ',' int ']'
// e.g. "3/2 x[1,-1/2;2,0] - x[0,1;0,0]"

/// Parses without validation against any algebra. Throws Error(Parse).
std::vector<std::pair<BasisIdx, Rat>> parse_terms(std::string_view text);
/// Parses and reduces into the given algebra (see reduce()).
Element parse_element(const SpecPtr& spec, std::string_view text);

/// Canonical literal: terms in storage order, unit coefficients omitted, "0" for zero.
std::string to_literal(const Element& e);

}  // namespace blockalg
