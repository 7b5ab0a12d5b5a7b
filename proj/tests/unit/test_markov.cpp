#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "cycleclust/clustering.hpp"
#include "cycleclust/error.hpp"
#include "cycleclust/fixtures.hpp"
#include "cycleclust/markov.hpp"

using namespace cycleclust;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return Errc::InvalidArgument;
}

CycleClustering random_clustering(int n, int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, m - 1);
  for (;;) {
    std::vector<int> a(n);
    for (auto& v : a) v = pick(rng);
    std::vector<int> seen(m, 0);
    for (int v : a) seen[v] = 1;
    if (std::count(seen.begin(), seen.end(), 1) == m) return CycleClustering(m, a);
  }
}

}  // namespace

TEST(Stationary, TwoStateChain) {
  Matrix p(2, 2);
  p << 0.9, 0.1, 0.2, 0.8;
  const auto pi = stationary_distribution(validate_stochastic(p));
  EXPECT_NEAR(pi[0], 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(pi[1], 1.0 / 3.0, 1e-9);
}

TEST(Stationary, PeriodTwoChainConverges) {
  Matrix p(2, 2);
  p << 0.0, 1.0, 1.0, 0.0;
  const auto pi = stationary_distribution(validate_stochastic(p));
  EXPECT_NEAR(pi[0], 0.5, 1e-9);
  EXPECT_NEAR(pi[1], 0.5, 1e-9);
}

TEST(Stationary, ReducibleChainIsNonUnique) {
  const Matrix p = Matrix::Identity(3, 3);
  EXPECT_EQ(code_of([&] { stationary_distribution(validate_stochastic(p)); }), Errc::NonUnique);
}

TEST(Stationary, FixedPointOnRandomChains) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto p = random_transition_matrix(12, seed);
    const auto pi = stationary_distribution(p);
    const Vector residual = pi.values().transpose() * p.entries() - pi.values().transpose();
    EXPECT_LT(residual.lpNorm<Eigen::Infinity>(), 1e-10);
    EXPECT_NEAR(pi.values().sum(), 1.0, 1e-12);
  }
}

TEST(Validate, RejectsBadMatrices) {
  Matrix neg(2, 2);
  neg << 1.1, -0.1, 0.5, 0.5;
  EXPECT_EQ(code_of([&] { validate_stochastic(neg); }), Errc::NegativeEntry);
  Matrix rows(2, 2);
  rows << 0.5, 0.4, 0.5, 0.5;
  EXPECT_EQ(code_of([&] { validate_stochastic(rows); }), Errc::RowSumViolation);
  EXPECT_EQ(code_of([&] { validate_stochastic(Matrix::Zero(2, 3)); }), Errc::DimensionMismatch);
  Matrix nan = Matrix::Constant(2, 2, 0.5);
  nan(0, 0) = std::nan("");
  EXPECT_EQ(code_of([&] { validate_stochastic(nan); }), Errc::NonFinite);
}

TEST(Validate, AcceptsRowSumWithinTolerance) {
  Matrix p(2, 2);
  p << 0.5, 0.5 + 0.5e-9, 0.25, 0.75;
  EXPECT_NO_THROW(validate_stochastic(p));
}

TEST(FlowMatrix, RowsBalanceColumns) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto w = random_flow_matrix(10, seed);
    EXPECT_LT((w.row_sums() - w.column_sums()).lpNorm<Eigen::Infinity>(), 1e-8);
    EXPECT_NEAR(w.total(), 1.0, 1e-12);
  }
}

TEST(FlowMatrix, RowSumsArePi) {
  const auto p = random_transition_matrix(7, 3);
  const auto pi = stationary_distribution(p);
  const auto w = flow_matrix(p, pi);
  EXPECT_LT((w.row_sums() - pi.values()).lpNorm<Eigen::Infinity>(), 1e-15);
}

TEST(NetFlow, Antisymmetric) {
  const auto w = random_flow_matrix(9, 11);
  const std::vector<int> a{0, 3, 5}, b{1, 2, 8};
  EXPECT_LE(std::abs(net_flow(w, a, b) + net_flow(w, b, a)), 1e-12);
}

TEST(NetFlow, OverlapRejected) {
  const auto w = random_flow_matrix(4, 1);
  const std::vector<int> a{0, 1}, b{1, 2};
  EXPECT_EQ(code_of([&] { net_flow(w, a, b); }), Errc::OverlappingSets);
}

TEST(Coherence, UnionIdentity) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto w = random_flow_matrix(10, seed);
    std::vector<int> perm(10);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::vector<int> a(perm.begin(), perm.begin() + 4), b(perm.begin() + 4, perm.begin() + 7);
    std::vector<int> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    double cross = 0.0;
    for (int i : a) {
      for (int j : b) cross += w(i, j) + w(j, i);
    }
    EXPECT_LE(std::abs(coherence(w, ab) - (coherence(w, a) + coherence(w, b) + cross)), 1e-12);
  }
}

TEST(Projection, SingletonClusteringIsIdentity) {
  const auto w = random_flow_matrix(5, 2);
  std::vector<int> a{0, 1, 2, 3, 4};
  const auto proj = project(w, CycleClustering(5, a));
  EXPECT_EQ(proj.entries, w.entries());
}

TEST(Projection, MatchesExplicitIndicatorProduct) {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto w = random_flow_matrix(8, seed);
    const auto c = random_clustering(8, 4, rng);
    Matrix x = Matrix::Zero(8, 4);
    for (int i = 0; i < 8; ++i) x(i, c.cluster_of(i)) = 1.0;
    const Matrix expected = x.transpose() * w.entries() * x;
    EXPECT_LT((project(w, c).entries - expected).lpNorm<Eigen::Infinity>(), 1e-15);
  }
}

TEST(Delta, ZeroSumsAndEpsilonStructure) {
  std::mt19937_64 rng(23);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto w = random_flow_matrix(9, seed);
    for (int m : {3, 4, 5}) {
      const Matrix d = project(w, random_clustering(9, m, rng)).delta();
      EXPECT_LT(d.diagonal().cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_LT(d.rowwise().sum().cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_LT(d.colwise().sum().cwiseAbs().maxCoeff(), 1e-8);
      if (m == 3) {
        EXPECT_LT(epsilon_structure_residual(d), 1e-10);
        EXPECT_NEAR(std::abs(d(0, 1)), std::abs(d(1, 2)), 1e-10);
        EXPECT_NEAR(std::abs(d(1, 2)), std::abs(d(2, 0)), 1e-10);
      }
    }
  }
}

TEST(Delta, TriangleEpsilon) {
  const auto w = triangle_fixture();
  const CycleClustering c(3, {0, 1, 2, 0, 0, 1, 1, 2, 2});
  const Matrix d = project(w, c).delta();
  EXPECT_NEAR(d(0, 1), 0.1 / 9.0, 1e-15);
  EXPECT_LT(epsilon_structure_residual(d), 1e-15);
}
