#pragma once

#include <cstdint>
#include <vector>

namespace momtech {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Nonzero diagonal entries of the Smith normal form, positive and each
/// dividing the next. Throws Internal on int64 overflow.
std::vector<std::int64_t> invariant_factors(IntMatrix m);

/// Rank over the rationals.
int matrix_rank(const IntMatrix& m);

}  // namespace momtech
