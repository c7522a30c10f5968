#pragma once

#include <vector>

#include "lkq/rational.hpp"

namespace lkq {

// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix (Smith normal form).
std::vector<BigInt> smith_invariants(std::vector<std::vector<BigInt>> M);

}  // namespace lkq
