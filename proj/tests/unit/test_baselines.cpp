#include <gtest/gtest.h>

#include <cmath>

#include "szoht/baselines.hpp"
#include "szoht/problems.hpp"

using namespace szoht;

namespace {

Problem<double> shifted_quadratic(const VectorXd& c) {
  Problem<double> p;
  p.name = "shifted_quadratic";
  p.dimension = c.size();
  p.value = [c](const VectorXd& x, Noise) { return 0.5 * (x - c).squaredNorm(); };
  p.gradient = [c](const VectorXd& x) -> VectorXd { return x - c; };
  return p;
}

}  // namespace

TEST(SoftThreshold, ComponentwiseShrinkage) {
  const VectorXd v = (VectorXd(2) << 3.0, -0.5).finished();
  EXPECT_EQ(soft_threshold(v, 1.0), (VectorXd(2) << 2.0, 0.0).finished());
  EXPECT_EQ(soft_threshold((VectorXd(3) << -4.0, 1.0, 0.2).finished(), 0.5),
            (VectorXd(3) << -3.5, 0.5, 0.0).finished());
  EXPECT_EQ(soft_threshold(v, 0.0), v);
}

TEST(L1BallVertex, OpposesLargestGradientEntry) {
  const VectorXd g = (VectorXd(3) << 0.1, -2.0, 0.3).finished();
  EXPECT_EQ(l1_ball_vertex(g, 1.0), (VectorXd(3) << 0.0, 1.0, 0.0).finished());
  EXPECT_EQ(l1_ball_vertex((VectorXd(3) << 1.0, -1.0, 0.5).finished(), 2.0),
            (VectorXd(3) << -2.0, 0.0, 0.0).finished());
  EXPECT_EQ(l1_ball_vertex(VectorXd::Zero(3), 2.0), VectorXd::Zero(3));
}

// With lambda = 0 the prox is the identity: RSPGF is ZO gradient descent, which
// is also SZOHT with k = d on the same random stream.
TEST(Rspgf, ZeroPenaltyIsPlainGradientDescent) {
  const Problem<double> p = sparse_recovery(40, 3);
  BaselineConfig b;
  b.estimator = {40, 12, 1e-6};
  b.step_size = 0.05;
  b.l1_penalty = 0.0;
  b.iterations = 30;
  b.seed = 9;
  SolverConfig s;
  s.sparsity = 40;
  s.estimator = b.estimator;
  s.step_size = b.step_size;
  s.iterations = b.iterations;
  s.seed = b.seed;
  const RunRecord r1 = rspgf_run(p, b);
  const RunRecord r2 = szoht_run(p, s);
  EXPECT_EQ(r1.final_iterate, r2.final_iterate);
  EXPECT_EQ(r1.trace.back().queries, r2.trace.back().queries);
}

TEST(Rspgf, LargePenaltyPinsIterateAtZero) {
  const Problem<double> p = sparse_recovery(60, 5);
  BaselineConfig b;
  b.estimator = {7, 20, 1e-6};
  b.step_size = 0.1;
  b.l1_penalty = 1e6;
  b.iterations = 50;
  const RunRecord r = rspgf_run(p, b);
  EXPECT_EQ(r.final_iterate, VectorXd::Zero(60));
  for (const auto& [k, v] : r.config) {
    if (k == "s2") EXPECT_EQ(v, "60");
  }
  EXPECT_EQ(r.trace.back().queries, 50u * 21u);
}

// x = soft(c, lambda) minimizes 1/2||x - c||^2 + lambda||x||_1; one exact
// proximal gradient step maps it to itself.
TEST(Rspgf, ExactProxStepFixedPoint) {
  const VectorXd c = (VectorXd(5) << 2.0, -0.3, 0.0, 1.1, -4.0).finished();
  const double lambda = 0.5;
  const Problem<double> p = shifted_quadratic(c);
  const VectorXd x = soft_threshold(c, lambda);
  for (double eta : {0.1, 0.5, 1.0}) {
    const VectorXd next = soft_threshold(VectorXd(x - eta * p.gradient(x)), eta * lambda);
    EXPECT_LT((next - x).norm(), 1e-15);
  }
}

TEST(Zscg, StaysInsideTheBall) {
  const Problem<double> p = sparse_recovery(50, 5);
  for (double radius : {0.5, 1.0, 3.0}) {
    BaselineConfig b;
    b.estimator = {50, 10, 1e-6};
    b.l1_radius = radius;
    b.iterations = 1;
    for (Index t = 1; t <= 60; t += 7) {
      b.iterations = t;
      ASSERT_LE(zscg_run(p, b).final_iterate.lpNorm<1>(), radius + 1e-9);
    }
  }
}

// Minimizer strictly inside the ball: f(x_t) decays at least like 1/t.
TEST(Zscg, SublinearRateOnQuadratic) {
  const VectorXd c = (VectorXd(2) << 0.2, -0.1).finished();
  BaselineConfig b;
  b.estimator = {2, 200, 1e-7};
  b.l1_radius = 1.0;
  b.iterations = 2000;
  const RunRecord r = zscg_run(shifted_quadratic(c), b);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
  for (Index t = 20; t <= 2000; t = t * 5 / 4) {
    const double x = std::log(static_cast<double>(t));
    const double y = std::log(r.trace[t].value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  EXPECT_LT(slope, -0.9);
}

TEST(Baselines, RequireMatchingHyperparameter) {
  const Problem<double> p = sparse_recovery(10, 2);
  BaselineConfig b;
  b.estimator = {10, 2, 1e-4};
  EXPECT_THROW(rspgf_run(p, b), std::invalid_argument);
  EXPECT_THROW(zscg_run(p, b), std::invalid_argument);
  b.l1_penalty = 0.1;
  b.l1_radius = 1.0;
  EXPECT_THROW(rspgf_run(p, b), std::invalid_argument);
  EXPECT_THROW(zscg_run(p, b), std::invalid_argument);
  b.l1_penalty.reset();
  b.x0 = VectorXd::Ones(10);
  EXPECT_THROW(zscg_run(p, b), std::invalid_argument);
}
