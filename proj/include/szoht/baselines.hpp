#pragma once

#include "szoht/solver.hpp"

namespace szoht {

/// Settings shared by the l1 baselines. The estimator always runs with
/// s2 = d; support_size is overwritten.
struct BaselineConfig {
  EstimatorConfig estimator;
  double step_size = 1e-2;          // eta (RSPGF only)
  std::optional<double> l1_penalty;  // lambda, RSPGF
  std::optional<double> l1_radius;   // R, ZSCG
  Index iterations = 100;
  std::uint64_t seed = 0;
  std::optional<VectorXd> x0;
  std::optional<double> target_value;
};

/// sign(v) * max(|v| - tau, 0), componentwise.
template <typename Derived>
Vector<typename Derived::Scalar> soft_threshold(const Eigen::MatrixBase<Derived>& v,
                                                typename Derived::Scalar tau) {
  using Scalar = typename Derived::Scalar;
  return v.unaryExpr([tau](Scalar e) {
    const Scalar m = std::abs(e) - tau;
    return m > Scalar(0) ? (e > Scalar(0) ? m : -m) : Scalar(0);
  });
}

/// -R sign(g_i) e_i at i = argmax |g_i| (lowest index on ties; zero if g = 0).
template <typename Derived>
Vector<typename Derived::Scalar> l1_ball_vertex(const Eigen::MatrixBase<Derived>& g,
                                                typename Derived::Scalar radius) {
  using Scalar = typename Derived::Scalar;
  Vector<Scalar> v = Vector<Scalar>::Zero(g.size());
  Index best = 0;
  for (Index i = 1; i < g.size(); ++i) {
    if (std::abs(g[i]) > std::abs(g[best])) best = i;
  }
  if (g[best] > Scalar(0)) v[best] = -radius;
  if (g[best] < Scalar(0)) v[best] = radius;
  return v;
}

namespace detail {

inline LoopSettings baseline_settings(const char* name, Index d, const BaselineConfig& cfg,
                                      double step) {
  LoopSettings s;
  s.solver = name;
  s.estimator = cfg.estimator;
  s.estimator.support_size = d;
  s.iterations = cfg.iterations;
  s.seed = cfg.seed;
  s.x0 = start_point(cfg.x0, d);
  s.target_value = cfg.target_value;
  s.step_size = step;
  return s;
}

}  // namespace detail

/// Proximal ZO gradient with an l1 penalty:
///   x^t = soft_threshold(x^{t-1} - eta g, eta lambda).
template <typename Scalar>
RunRecord rspgf_run(const Problem<Scalar>& problem, const BaselineConfig& cfg) {
  if (!cfg.l1_penalty || cfg.l1_radius) {
    throw std::invalid_argument("rspgf_run: set the l1 penalty and not the radius");
  }
  if (!(*cfg.l1_penalty >= 0.0)) throw std::invalid_argument("rspgf_run: need lambda >= 0");
  if (!(cfg.step_size > 0.0)) throw std::invalid_argument("rspgf_run: need eta > 0");
  const auto s = detail::baseline_settings("rspgf", problem.dimension, cfg, cfg.step_size);
  const Scalar eta = static_cast<Scalar>(cfg.step_size);
  const Scalar tau = static_cast<Scalar>(cfg.step_size * *cfg.l1_penalty);
  RunRecord rec = detail::run_loop(problem, s, [&](const Vector<Scalar>& x,
                                                   const Vector<Scalar>& g, Index) {
    return soft_threshold(x - eta * g, tau);
  });
  rec.config.emplace_back("lambda", fmt::format("{}", *cfg.l1_penalty));
  return rec;
}

/// Frank-Wolfe over the l1 ball of radius R with alpha_t = 2 / (t + 2).
/// The step size is unused. x0 must lie in the ball.
template <typename Scalar>
RunRecord zscg_run(const Problem<Scalar>& problem, const BaselineConfig& cfg) {
  if (!cfg.l1_radius || cfg.l1_penalty) {
    throw std::invalid_argument("zscg_run: set the l1 radius and not the penalty");
  }
  if (!(*cfg.l1_radius > 0.0)) throw std::invalid_argument("zscg_run: need R > 0");
  auto s = detail::baseline_settings("zscg", problem.dimension, cfg, 0.0);
  if (s.x0.template lpNorm<1>() > *cfg.l1_radius * (1.0 + 1e-12)) {
    throw std::invalid_argument("zscg_run: x0 lies outside the l1 ball");
  }
  const Scalar radius = static_cast<Scalar>(*cfg.l1_radius);
  RunRecord rec = detail::run_loop(problem, s, [&](const Vector<Scalar>& x,
                                                   const Vector<Scalar>& g, Index t) {
    const Scalar alpha = Scalar(2) / static_cast<Scalar>(t + 2);
    return ((Scalar(1) - alpha) * x + alpha * l1_ball_vertex(g, radius)).eval();
  });
  rec.config.emplace_back("R", fmt::format("{}", *cfg.l1_radius));
  return rec;
}

}  // namespace szoht
