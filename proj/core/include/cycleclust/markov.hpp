#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cycleclust {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Tolerance on |row sum - 1| accepted by `validate_stochastic`.
inline constexpr double kRowSumTolerance = 1e-9;

/// Row-stochastic matrix of conditional transition probabilities p_ij.
/// Only constructible through `validate_stochastic` (or generators that
/// guarantee the invariants), so holding one means the rows sum to one.
class TransitionMatrix {
 public:
  int size() const noexcept { return static_cast<int>(p_.rows()); }
  const Matrix& entries() const noexcept { return p_; }
  double operator()(int i, int j) const { return p_(i, j); }

 private:
  explicit TransitionMatrix(Matrix p) : p_(std::move(p)) {}
  friend TransitionMatrix validate_stochastic(Matrix raw);

  Matrix p_;
};

/// Stationary distribution pi of a transition matrix (sums to one).
class StationaryDistribution {
 public:
  StationaryDistribution() = default;
  /// Wraps a probability vector; rejects negative entries or a sum away from 1.
  explicit StationaryDistribution(Vector pi);

  int size() const noexcept { return static_cast<int>(pi_.size()); }
  const Vector& values() const noexcept { return pi_; }
  double operator[](int i) const { return pi_(i); }

 private:
  Vector pi_;
};

/// Unconditional transition probabilities q_ij = pi_i p_ij. This is the only
/// numeric input the clustering model needs; any non-negative square matrix
/// is accepted when built directly with `from_entries`.
class FlowMatrix {
 public:
  FlowMatrix() = default;

  /// Validates squareness, finiteness and non-negativity. Does not rescale.
  static FlowMatrix from_entries(Matrix w);

  int size() const noexcept { return static_cast<int>(w_.rows()); }
  const Matrix& entries() const noexcept { return w_; }
  double operator()(int i, int j) const { return w_(i, j); }

  double total() const { return w_.sum(); }
  /// Row sums; equal to pi when built from (P, pi).
  Vector row_sums() const { return w_.rowwise().sum(); }
  Vector column_sums() const { return w_.colwise().sum().transpose(); }

 private:
  explicit FlowMatrix(Matrix w) : w_(std::move(w)) {}
  friend FlowMatrix flow_matrix(const TransitionMatrix&, const StationaryDistribution&);

  Matrix w_;
};

/// m x m aggregation Xᵀ W X of a flow matrix under a clustering.
struct ProjectedMatrix {
  Matrix entries;

  int size() const noexcept { return static_cast<int>(entries.rows()); }
  /// Δ = W̄ − W̄ᵀ.
  Matrix delta() const { return entries - entries.transpose(); }
};

/// Bin indices are 0-based throughout the library.
using BinSet = std::vector<int>;

TransitionMatrix validate_stochastic(Matrix raw);

struct StationaryOptions {
  double tol = 1e-10;
  int max_iter = 100000;
  /// Seed for the second (random) starting vector used to detect non-uniqueness.
  std::uint64_t seed = 0x5eedULL;
};

/// Power iteration on the left action πᵀ ← πᵀP from the uniform vector,
/// reporting the Cesàro average of the last two iterates (so period-2 chains
/// converge). A second run from a seeded random start must reach the same
/// fixed point, otherwise the chain has no unique stationary distribution.
/// The converged vector is refined by one direct linear solve.
StationaryDistribution stationary_distribution(const TransitionMatrix& p,
                                               const StationaryOptions& options = {});

FlowMatrix flow_matrix(const TransitionMatrix& p, const StationaryDistribution& pi);

/// f(A,B) = Σ_{i∈A, j∈B} (q_ij − q_ji). A and B must be disjoint.
double net_flow(const FlowMatrix& w, std::span<const int> a, std::span<const int> b);

/// g(A) = Σ_{i,j∈A} q_ij.
double coherence(const FlowMatrix& w, std::span<const int> a);

class CycleClustering;

ProjectedMatrix project(const FlowMatrix& w, const CycleClustering& clustering);

/// Largest deviation of an m = 3 Δ from ε·[[0,1,−1],[−1,0,1],[1,−1,0]], where
/// ε is taken as Δ(0,1). Zero for an exact 3-cycle structure.
double epsilon_structure_residual(const Matrix& delta);

}  // namespace cycleclust
