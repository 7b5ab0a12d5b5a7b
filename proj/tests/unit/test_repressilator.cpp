#include <gtest/gtest.h>

#include <cmath>

#include "cycleclust/error.hpp"
#include "cycleclust/repressilator.hpp"

using namespace cycleclust;

namespace {

double decay_error(double dt) {
  const OdeRhs rhs = [](const Vector& y) -> Vector { return -y; };
  const Vector y = integrate_rk4(rhs, Vector::Ones(1), 1.0, dt);
  return std::abs(y[0] - std::exp(-1.0));
}

}  // namespace

TEST(Rk4, FourthOrderOnDecay) {
  const double e1 = decay_error(0.1);
  const double e2 = decay_error(0.05);
  const double e3 = decay_error(0.025);
  const double order1 = std::log2(e1 / e2);
  const double order2 = std::log2(e2 / e3);
  EXPECT_GE(order1, 3.5);
  EXPECT_LE(order1, 4.5);
  EXPECT_GE(order2, 3.5);
  EXPECT_LE(order2, 4.5);
}

TEST(Rk4, LandsExactlyOnEndTime) {
  const OdeRhs one = [](const Vector& y) -> Vector { return Vector::Ones(y.size()); };
  EXPECT_NEAR(integrate_rk4(one, Vector::Zero(1), 1.05, 0.1)[0], 1.05, 1e-14);
  EXPECT_NEAR(integrate_rk4(one, Vector::Zero(1), 1.5, 1e-3)[0], 1.5, 1e-12);
  EXPECT_EQ(integrate_rk4(one, Vector::Zero(1), 0.0, 0.1)[0], 0.0);
}

TEST(Rk4, RejectsBadInput) {
  const OdeRhs rhs = [](const Vector& y) -> Vector { return y; };
  EXPECT_THROW(integrate_rk4(rhs, Vector::Ones(1), 1.0, 0.0), Error);
  EXPECT_THROW(integrate_rk4(rhs, Vector::Ones(1), -1.0, 0.1), Error);
  const OdeRhs blow = [](const Vector& y) -> Vector { return y.array().square() * 1e300; };
  try {
    integrate_rk4(blow, Vector::Constant(1, 10.0), 1.0, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonFiniteState);
  }
}

TEST(Repressilator, RightHandSide) {
  State6 s;
  s << 1, 2, 3, 4, 5, 6;
  const RepressilatorParams p;
  const State6 d = repressilator_rhs(s, p);
  EXPECT_NEAR(d[0], -1 + 298.2 / (1 + 36) + 0.03, 1e-12);
  EXPECT_NEAR(d[1], -0.2 * (2 - 1), 1e-15);
  EXPECT_NEAR(d[2], -3 + 298.2 / (1 + 4) + 0.03, 1e-12);
  EXPECT_NEAR(d[4], -5 + 298.2 / (1 + 16) + 0.03, 1e-12);
  EXPECT_NEAR(d[5], -0.2 * (6 - 5), 1e-15);
}

TEST(Halton, FirstPoints) {
  const Matrix h = low_discrepancy_points(4, 3, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(h(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(h(1, 0), 0.25);
  EXPECT_DOUBLE_EQ(h(2, 0), 0.75);
  EXPECT_DOUBLE_EQ(h(0, 1), 1.0 / 3);
  EXPECT_DOUBLE_EQ(h(1, 1), 2.0 / 3);
  EXPECT_DOUBLE_EQ(h(2, 1), 1.0 / 9);
  EXPECT_DOUBLE_EQ(h(0, 2), 0.2);
  EXPECT_DOUBLE_EQ(h(3, 2), 0.8);
  const Matrix s = low_discrepancy_points(200, 6, 0.0, 20.0);
  EXPECT_GE(s.minCoeff(), 0.0);
  EXPECT_LT(s.maxCoeff(), 20.0);
  EXPECT_DOUBLE_EQ(s(0, 5), 20.0 / 13);
  EXPECT_THROW(low_discrepancy_points(3, 2, 1.0, 1.0), Error);
}

TEST(KernelMatrix, RowsAreSoftmaxOfDistances) {
  Matrix a(3, 2), b(3, 2);
  a << 0, 0, 1, 0, 0, 1;
  b << 0, 0, 3, 4, 1, 1;
  const auto p = kernel_transition_matrix(a, b, 0.2);
  const double w0 = 1.0, w1 = std::exp(-0.2 * 5), w2 = std::exp(-0.2 * std::sqrt(2.0));
  EXPECT_NEAR(p(0, 1), w1 / (w0 + w1 + w2), 1e-15);
  EXPECT_LT((p.entries().rowwise().sum().array() - 1).abs().maxCoeff(), 1e-15);
}

TEST(RepressilatorPipeline, SmallRunIsStochastic) {
  RepressilatorOptions o;
  o.count = 30;
  const auto d = repressilator_pipeline(o);
  EXPECT_EQ(d.starts.rows(), 30);
  EXPECT_EQ(d.ends.cols(), 6);
  EXPECT_EQ(d.transition.size(), 30);
  EXPECT_TRUE(d.ends.allFinite());
  const OdeRhs rhs = [](const Vector& y) -> Vector { return repressilator_rhs(y); };
  const Vector end = integrate_rk4(rhs, d.starts.row(7).transpose(), 1.5, 1e-3);
  EXPECT_LT((end - d.ends.row(7).transpose()).norm(), 1e-12);
}
