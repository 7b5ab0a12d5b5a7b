#pragma once

#include <functional>

#include "cycleclust/markov.hpp"

namespace cycleclust {

/// State order (m_A, p_A, m_B, p_B, m_C, p_C).
using State6 = Eigen::Matrix<double, 6, 1>;

struct RepressilatorParams {
  double v = 298.2;
  double beta = 0.2;
  double v0 = 0.03;
  double hill = 2.0;
};

/// dm_A/dt = −m_A + v/(1 + p_C^h) + v0, dp_A/dt = −β(p_A − m_A), and the same
/// with A←C, B←A, C←B.
State6 repressilator_rhs(const State6& s, const RepressilatorParams& params = {});

using OdeRhs = std::function<Vector(const Vector&)>;

/// Classical fixed-step RK4 from 0 to T; the last step is shortened to land on
/// T. Throws NonFiniteState if the state blows up.
Vector integrate_rk4(const OdeRhs& rhs, Vector start, double t_end, double dt);

/// First `count` points of the Halton sequence on the first `dim` primes
/// (index starting at 1), scaled to [lo, hi]^dim. One point per row.
Matrix low_discrepancy_points(int count, int dim, double lo, double hi);

/// p_ij = exp(−s‖start_i − end_j‖) / Σ_k exp(−s‖start_i − end_k‖).
TransitionMatrix kernel_transition_matrix(const Matrix& starts, const Matrix& ends, double scale = 0.2);

struct RepressilatorOptions {
  int count = 200;
  double lo = 0.0;
  double hi = 20.0;
  double t_end = 1.5;
  double dt = 1e-3;
  double kernel_scale = 0.2;
  RepressilatorParams params;
};

struct RepressilatorData {
  Matrix starts;
  Matrix ends;
  TransitionMatrix transition;
};

RepressilatorData repressilator_pipeline(const RepressilatorOptions& options = {});

}  // namespace cycleclust
