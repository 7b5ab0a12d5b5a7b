#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cycleclust/markov.hpp"

namespace cycleclust {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Undirected graph with terminals s_0..s_{m−1}; vertices are 0-based.
struct MultiwayCutInstance {
  int vertices = 0;
  std::vector<int> terminals;
  std::vector<WeightedEdge> edges;

  friend bool operator==(const MultiwayCutInstance&, const MultiwayCutInstance&) = default;
};

/// Text format: `n m`, then the m terminal indices, then `u v weight` lines.
/// Indices in the file are 1-based.
MultiwayCutInstance parse_multiway_cut(const std::string& text);
std::string write_multiway_cut(const MultiwayCutInstance& mc);

/// Removes terminal–terminal edges; they add the same weight to every cut.
/// Returns the removed weight.
double drop_terminal_edges(MultiwayCutInstance& mc);

/// Total weight of edges whose endpoints carry different labels.
double induced_cut_weight(const MultiwayCutInstance& mc, const std::vector<int>& labels);

struct CycleReduction {
  TransitionMatrix transition;
  StationaryDistribution stationary;
  Matrix arc_weights;  ///< Q before normalization
  double big_m = 0.0;
};

/// Digraph construction: each edge becomes a forward and a backward arc of
/// weight c/2, consecutive terminals s_i → s_{i+1} get weight M = α·Σc + 1,
/// then P = row-normalized Q and π_u = ‖Q_u‖₁ / Σ‖Q‖₁.
/// Throws InvalidTerminalCount (m < 3), IsolatedNonTerminal, or
/// InvalidArgument for terminal–terminal edges.
CycleReduction multiway_cut_to_instance(const MultiwayCutInstance& mc, double alpha);

/// Random instance: terminals are vertices 0..m−1, each non-terminal pair or
/// terminal/non-terminal pair gets an edge with probability `density` and an
/// integer weight in [1, 9]. Isolated non-terminals are linked to a random
/// vertex so the reduction applies.
MultiwayCutInstance random_multiway_cut(int vertices, int terminals, double density, std::uint64_t seed);

}  // namespace cycleclust
