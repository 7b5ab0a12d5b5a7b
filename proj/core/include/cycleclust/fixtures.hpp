#pragma once

#include <cstdint>

#include "cycleclust/markov.hpp"

namespace cycleclust {

/// Nine bins: a weak cycle 0→1→2→0 (forward 0.15/9, backward 0.05/9 per
/// pair) and two reversible satellites per cycle bin (0.2/9 each way), with
/// the remaining mass on the diagonal. Every row and column sums to 1/9.
FlowMatrix triangle_fixture();

/// Random dense transition matrix with entries u² + 1e−3 for u ~ U(0,1),
/// rows normalized.
TransitionMatrix random_transition_matrix(int n, std::uint64_t seed);

/// diag(π)P for `random_transition_matrix(n, seed)`.
FlowMatrix random_flow_matrix(int n, std::uint64_t seed);

}  // namespace cycleclust
