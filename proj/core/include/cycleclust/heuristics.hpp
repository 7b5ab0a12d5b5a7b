#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cycleclust/clustering.hpp"
#include "cycleclust/mip.hpp"
#include "cycleclust/simplex.hpp"

namespace cycleclust {

/// Bin 0 opens cluster 0; the rest follow in order of decreasing stationary
/// mass, each into the cluster that maximizes the partial objective. Empty
/// clusters are then filled by the cheapest single-bin moves.
CycleClustering greedy_heuristic(const FlowMatrix& w, int m, double alpha);

/// Assigns every bin to the argmax of its relaxed x row (ties to the smallest
/// cluster) and repairs empty clusters. Returns nullopt when the result
/// contradicts a bound override (for example a bin forced out of its argmax).
std::optional<CycleClustering> rounding_heuristic(const MipInstance& mip, const LpResult& lp, const FlowMatrix& w,
                                                  std::span<const BoundOverride> overrides = {});

/// Steepest-ascent single-bin relocation until no move gains more than 1e−12.
/// When `trace` is given it receives the objective after every accepted move,
/// starting with the input objective.
CycleClustering exchange_improvement(const FlowMatrix& w, const CycleClustering& c, double alpha,
                                     std::vector<double>* trace = nullptr);

struct BruteForceResult {
  CycleClustering clustering;
  ObjectiveValue value;
  long evaluated = 0;  ///< surjective assignments visited
};

/// Exhaustive search over assignments with bin 0 in cluster 0. Ties go to the
/// lexicographically smallest assignment. Throws TooLarge when m^(n−1) > 1e7.
BruteForceResult brute_force(const FlowMatrix& w, int m, double alpha);

}  // namespace cycleclust
