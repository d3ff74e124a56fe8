#pragma once

#include "hgm/matrix.hpp"

#include <vector>

namespace hgm {

// Row-style Hermite normal form H = U*A with U unimodular. Pivots positive,
// entries above each pivot reduced into [0, pivot).
IntMatrix hermite_form(const IntMatrix &a, IntMatrix *u = nullptr);

// Invariant factors d_1 | d_2 | ... (nonzero ones only)
std::vector<Int> smith_invariants(const IntMatrix &a);

// Saturated basis (rows, in Hermite form) of {x in Z^l : x . v = 0}
IntMatrix integer_kernel(const std::vector<Int> &v);

// Unimodular matrix whose first row is the primitive vector c
IntMatrix complete_to_basis(const std::vector<Int> &c);

} // namespace hgm
