#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cycleclust/markov.hpp"

namespace cycleclust {

inline constexpr double kDefaultAlpha = 0.001;

/// Surjective assignment of n bins to m clusters C_0 → C_1 → … → C_{m−1} → C_0.
/// Cluster indices are 0-based; file formats use 1-based labels.
class CycleClustering {
 public:
  /// Throws InvalidClustering if any label is out of range or a cluster is empty.
  CycleClustering(int clusters, std::vector<int> assignment);

  int bins() const noexcept { return static_cast<int>(assignment_.size()); }
  int clusters() const noexcept { return clusters_; }
  int cluster_of(int bin) const { return assignment_[bin]; }
  const std::vector<int>& assignment() const noexcept { return assignment_; }

  /// Successor φ(k) in the cyclic order.
  int successor(int k) const noexcept { return k + 1 == clusters_ ? 0 : k + 1; }
  int predecessor(int k) const noexcept { return k == 0 ? clusters_ - 1 : k - 1; }

  BinSet members(int k) const;
  std::vector<BinSet> partition() const;

  friend bool operator==(const CycleClustering&, const CycleClustering&) = default;

 private:
  int clusters_;
  std::vector<int> assignment_;
};

/// Weighted objective split into its two parts.
struct ObjectiveValue {
  double total = 0.0;
  double flow_part = 0.0;       ///< Σ_k f(C_k, C_φ(k))
  double coherence_part = 0.0;  ///< Σ_k g(C_k)
  double alpha = kDefaultAlpha;
};

/// Σ_k f(C_k, C_φ(k)) + α Σ_k g(C_k). For m ≤ 2 the flow part is zero.
ObjectiveValue objective(const FlowMatrix& w, const CycleClustering& c, double alpha);

/// Rotates cluster labels so that bin 0 lies in cluster 0; cyclic order kept.
CycleClustering canonicalize(const CycleClustering& c);

/// Reverses the cyclic order (label k ↦ −k mod m). Negates the flow part.
CycleClustering reflect(const CycleClustering& c);

/// Contribution of the unordered pair {i, j} to the objective when i sits in
/// cluster `ci` and j in `cj`. Shared by heuristics and the enumerator.
double pair_contribution(const Matrix& q, int i, int j, int ci, int cj, int m, double alpha);

/// "cc-v1" clustering document.
struct ClusteringDocument {
  CycleClustering clustering;
  ObjectiveValue objective;
};

std::string write_clustering_json(const CycleClustering& c, const ObjectiveValue& value);
ClusteringDocument read_clustering_json(const std::string& text);

}  // namespace cycleclust
