#pragma once

#include <string>
#include <string_view>

#include "gft/algebra.hpp"

namespace gft {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_number(double value);

/// Parses a complete decimal token; throws ParseError on trailing junk.
double parse_number(std::string_view text);

/// "e12" style label (digit form when n <= 9, "e(1,10)" otherwise);
/// the scalar blade is "1".
std::string blade_label(BladeIndex blade, Signature sig);

/// Sum-of-terms text such as "0.5 - 2*e12 + e3". Zero prints as "0".
std::string format_multivector(const Multivector& a);

/// Inverse of format_multivector. Accepts terms "c", "c*eIJK", "eIJK",
/// "c*e(1,10)" joined by '+' or '-'. Basis labels must list strictly
/// increasing indices that exist in sig.
Multivector parse_multivector(std::string_view text, Signature sig);

}  // namespace gft
