#pragma once

#include <utility>
#include <vector>

#include "twistmatch/polymodp.hpp"

namespace twistmatch {

// Full factorization over F_p (p odd): squarefree split, then
// distinct-degree, then randomized Cantor-Zassenhaus equal-degree
// splitting. Deterministic for a fixed seed. Factors are monic,
// sorted by (degree, coefficients); the leading unit is dropped.
std::vector<std::pair<PolyModP, int>> factor_mod_p(const PolyModP& f, u64 seed = 0x5eed);

bool poly_irreducible(const PolyModP& f, u64 seed = 0x5eed);

}  // namespace twistmatch
