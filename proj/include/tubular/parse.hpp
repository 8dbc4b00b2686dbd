#pragma once

#include <string>
#include <string_view>

#include "tubular/laurent.hpp"

namespace tubular {

// Element grammar (whitespace-insensitive; U+2212 is accepted as '-'):
//
//   element := ['+'|'-'] term (('+'|'-') term)* ['+' 'O(' t ['^' int] ')']
//            | 'O(' t ['^' int] ')'
//   term    := factor ('*' factor)*
//   factor  := int ['/' int] | var ['^' ['-'] int]
//
// GF(p) coefficients are integers reduced mod p. Without an O(t^N) marker
// the element is exact.
TLaurent parse_element(std::string_view text, const SpacePtr& space);

// Canonical rendering: ascending t-degree, descending grlex within a degree,
// t before the y's, unit coefficients and exponents 1 omitted.
std::string render(const TLaurent& a);

}  // namespace tubular
