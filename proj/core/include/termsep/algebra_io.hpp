#pragma once

#include <string>
#include <string_view>

#include "termsep/algebra.hpp"

namespace termsep {

/// Text form of an algebra:
///
///   indices: 0,1,2
///   f[0] := x_2[2]
///   f[2] := x_3[1] + 1
///   g[1] := 1
///
/// Lines naming the same component are XOR-summed. Operations that are not
/// mentioned are zero. Output is ordered by (operation, component, source).
std::string format_algebra(const FiniteAlgebra& algebra);

/// Inverse of `format_algebra`; `#` starts a comment. Throws ParseError.
FiniteAlgebra parse_algebra(std::string_view text, const Signature& sig);

}  // namespace termsep
