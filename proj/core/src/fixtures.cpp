#include "cycleclust/fixtures.hpp"

#include <random>

#include "cycleclust/error.hpp"

namespace cycleclust {

FlowMatrix triangle_fixture() {
  // integer masses over 180 (= 9 · 20)
  Matrix q = Matrix::Zero(9, 9);
  for (int c = 0; c < 3; ++c) {
    const int next = (c + 1) % 3;
    q(c, next) = 3.0;
    q(next, c) = 1.0;
    for (int s : {3 + 2 * c, 4 + 2 * c}) {
      q(c, s) = 4.0;
      q(s, c) = 4.0;
      q(s, s) = 16.0;
    }
    q(c, c) = 8.0;
  }
  return FlowMatrix::from_entries(q / 180.0);
}

TransitionMatrix random_transition_matrix(int n, std::uint64_t seed) {
  if (n < 1) throw Error(Errc::InvalidArgument, "need n >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Matrix p(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double u = uniform(rng);
      p(i, j) = u * u + 1e-3;
    }
    p.row(i) /= p.row(i).sum();
  }
  return validate_stochastic(std::move(p));
}

FlowMatrix random_flow_matrix(int n, std::uint64_t seed) {
  const TransitionMatrix p = random_transition_matrix(n, seed);
  return flow_matrix(p, stationary_distribution(p));
}

}  // namespace cycleclust
