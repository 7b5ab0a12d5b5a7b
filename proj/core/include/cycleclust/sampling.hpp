#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cycleclust/markov.hpp"

namespace cycleclust {

using Point2 = Eigen::Vector2d;

enum class PotentialKind { Omega3, Omega4, Omega6, Flat };

std::string_view to_string(PotentialKind kind);
/// Accepts "omega3", "omega4", "omega6", "flat".
PotentialKind parse_potential_kind(std::string_view name);

/// Two-dimensional energy landscape: a central bump surrounded by Gaussian
/// wells. `minima()` lists the well centers in the order they are written in
/// the landscape's formula.
class Potential {
 public:
  explicit Potential(PotentialKind kind);

  PotentialKind kind() const noexcept { return kind_; }
  double operator()(const Point2& p) const;
  const std::vector<Point2>& minima() const noexcept { return minima_; }

 private:
  PotentialKind kind_;
  double bump_;
  std::vector<Point2> minima_;
};

/// Drift toward a cyclic sequence of targets. The target advances once the
/// walker is within `radius` of it.
struct DriftState {
  std::vector<Point2> targets;
  int target = 0;
  double magnitude = 0.0;
  double radius = 0.5;
  Point2 drift = Point2::Zero();
};

DriftState update_drift(DriftState state, const Point2& position);

struct HmcParams {
  double beta = 0.5;
  int steps = 10000;
  double drift = 0.1;
  double noise_std = 0.15;
  double target_radius = 0.5;
  std::uint64_t seed = 42;
  /// Defaults to the first minimum of the potential.
  std::optional<Point2> start;
  /// Defaults to the potential's minima in listed order.
  std::vector<Point2> targets;
};

/// Sampled path, one point per row.
struct Trajectory {
  Matrix points;
  std::uint64_t seed = 0;
  double beta = 0.0;
  double drift = 0.0;
  long proposals = 0;
  long accepted = 0;
  long accepted_uphill = 0;  ///< accepted moves with Ω(new) > Ω(old)

  int size() const noexcept { return static_cast<int>(points.rows()); }
  int dim() const noexcept { return static_cast<int>(points.cols()); }
};

/// Metropolis random walk with a cyclic drift: propose x + r + d with Gaussian
/// r, accept when u ≤ exp(−β(Ω(new) − Ω(old))), and re-aim d after every
/// accepted move.
Trajectory hmc_with_drift(const Potential& potential, const HmcParams& params);

/// CSV with header `step,<names...>`; default names are x,y for 2D and
/// x1..xd otherwise.
std::string trajectory_csv(const Matrix& points, const std::vector<std::string>& names = {});

/// Greedy farthest-point selection starting at row 0. Returns row indices.
/// Throws TooFewPoints when fewer than n distinct points exist.
std::vector<int> select_bin_centers(const Matrix& points, int n);

/// max over points of the distance to the nearest center.
double fill_distance(const Matrix& points, const Matrix& centers);

/// Normalized Gaussian memberships exp(−‖x − c_i‖²) / Σ_k exp(−‖x − c_k‖²).
Vector rbf_membership(const Vector& x, const Matrix& centers);

/// p_ij = Σ_k Φ_i(x_k) Φ_j(x_{k+lag}) / Σ_k Φ_i(x_k) over k = 0..N−1−lag.
/// Throws DegenerateRow when a denominator underflows.
TransitionMatrix hmc_transition_matrix(const Matrix& points, const Matrix& centers, int lag = 1);

/// Rows of `points` picked by `rows`.
Matrix gather_rows(const Matrix& points, const std::vector<int>& rows);

}  // namespace cycleclust
