#pragma once

#include <utility>
#include <vector>

#include "preper/p1.hpp"

namespace preper {

// The ascending Farey sequence of order H: every reduced fraction h/k in
// [0, 1] with k <= H, as (h, k) pairs from (0, 1) to (1, 1).
std::vector<std::pair<long, long>> farey_sequence(long H);

// Every point of P^1(Q) of height at most H, sorted (finite points
// ascending, then the point at infinity).
std::vector<P1Point> p1_points_up_to_height(long H);

}  // namespace preper
