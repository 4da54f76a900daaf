#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "szoht/rng.hpp"
#include "szoht/sampling.hpp"
#include "szoht/types.hpp"

namespace szoht {

/// Random-support sphere estimator settings.
struct EstimatorConfig {
  Index support_size = 1;    // s2: coordinates per random direction
  Index num_directions = 1;  // q
  double smoothing = 1e-4;   // mu

  void validate(Index dimension) const {
    if (support_size < 1 || support_size > dimension) {
      throw std::invalid_argument("EstimatorConfig: need 1 <= s2 <= d (s2=" +
                                  std::to_string(support_size) +
                                  ", d=" + std::to_string(dimension) + ")");
    }
    if (num_directions < 1) throw std::invalid_argument("EstimatorConfig: need q >= 1");
    if (!(smoothing > 0.0) || !std::isfinite(smoothing)) {
      throw std::invalid_argument("EstimatorConfig: need finite mu > 0");
    }
  }

  /// Value-oracle calls per estimate, f(x) shared across directions.
  std::uint64_t queries_per_estimate() const {
    return static_cast<std::uint64_t>(num_directions) + 1;
  }
  /// Calls per estimate when every direction re-evaluates f(x).
  std::uint64_t two_point_queries_per_estimate() const {
    return 2 * static_cast<std::uint64_t>(num_directions);
  }
};

/// Error-bound coefficients of the estimator restricted to a support F of
/// size s. All four are nonnegative and eps_Fc <= eps_F.
struct EstimatorConstants {
  double eps_F = 0.0;
  double eps_Fc = 0.0;
  double eps_abs = 0.0;
  double eps_mu = 0.0;
};

/// Closed-form constants for (d, s, s2, q) under an (L, s2)-RSS oracle.
/// Throws std::invalid_argument for d < 2 or out-of-range arguments.
EstimatorConstants estimator_constants(Index dimension, Index s, Index support_size,
                                       Index num_directions, double smoothness);

namespace detail {

template <typename Oracle, typename Scalar>
Scalar checked_eval(Oracle& f, const Vector<Scalar>& point) {
  const Scalar value = f(point);
  if (!std::isfinite(static_cast<double>(value))) {
    std::ostringstream msg;
    msg << "value oracle returned " << static_cast<double>(value) << " at a probe point";
    throw NumericError(msg.str(), point.template cast<double>());
  }
  return value;
}

}  // namespace detail

/// One forward-difference term (d / mu) (f(x + mu u) - f(x)) u.
/// Consumes exactly two oracle calls; the result is supported on supp(u).
template <typename Oracle, typename DerivedX, typename DerivedU>
Vector<typename DerivedX::Scalar> directional_estimate(Oracle&& f,
                                                       const Eigen::MatrixBase<DerivedX>& x,
                                                       const Eigen::MatrixBase<DerivedU>& u,
                                                       double smoothing, Index dimension) {
  using Scalar = typename DerivedX::Scalar;
  if (!(smoothing > 0.0)) throw std::invalid_argument("directional_estimate: need mu > 0");
  if (x.size() != u.size()) throw std::invalid_argument("directional_estimate: size mismatch");
  const Vector<Scalar> base = x;
  const Vector<Scalar> probe = base + static_cast<Scalar>(smoothing) * u;
  const Scalar fx = detail::checked_eval(f, base);
  const Scalar fp = detail::checked_eval(f, probe);
  const Scalar scale = static_cast<Scalar>(static_cast<double>(dimension) / smoothing);
  return (scale * (fp - fx)) * u;
}

/// Averaged random-support estimator
///   (d / (q mu)) sum_i (f(x + mu u_i) - f(x)) u_i
/// with a fresh support of size s2 and a fresh direction per term.
///
/// f(x) is evaluated once and shared, so exactly q + 1 oracle calls are made.
/// Direction i draws from `rng.fork().split(i)`, which makes the result
/// independent of evaluation order.
template <typename Oracle, typename Derived>
Vector<typename Derived::Scalar> estimate_gradient(Oracle&& f, const Eigen::MatrixBase<Derived>& x,
                                                   const EstimatorConfig& cfg, RngStream& rng) {
  using Scalar = typename Derived::Scalar;
  const Index d = x.size();
  cfg.validate(d);

  const Vector<Scalar> base = x;
  const Scalar fx = detail::checked_eval(f, base);

  Vector<Scalar> probe = base;
  Vector<Scalar> sum = Vector<Scalar>::Zero(d);
  const Scalar mu = static_cast<Scalar>(cfg.smoothing);
  const Index s2 = cfg.support_size;
  const bool full = (s2 == d);
  Vector<Scalar> values(s2);

  RngStream directions = rng.fork();
  for (Index i = 0; i < cfg.num_directions; ++i) {
    RngStream stream = directions.split(static_cast<std::uint64_t>(i));
    if (full) {
      detail::fill_unit_direction(d, stream, values.data());
      probe.noalias() = base + mu * values;
      const Scalar diff = detail::checked_eval(f, probe) - fx;
      sum.noalias() += diff * values;
    } else {
      const SupportSet support = sample_support(d, s2, stream);
      detail::fill_unit_direction(s2, stream, values.data());
      const auto& idx = support.indices();
      for (Index j = 0; j < s2; ++j) probe[idx[j]] = base[idx[j]] + mu * values[j];
      const Scalar diff = detail::checked_eval(f, probe) - fx;
      for (Index j = 0; j < s2; ++j) {
        sum[idx[j]] += diff * values[j];
        probe[idx[j]] = base[idx[j]];
      }
    }
  }
  const double scale = static_cast<double>(d) /
                       (static_cast<double>(cfg.num_directions) * cfg.smoothing);
  return static_cast<Scalar>(scale) * sum;
}

/// Monte-Carlo mean with its standard error.
struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Empirical error of the estimator projected on a support F.
struct ProjectedErrorStats {
  Index trials = 0;
  VectorXd mean_on_support;      // empirical E[est_F]
  VectorXd mean_standard_error;  // per coordinate
  double bias_norm = 0.0;        // ||E[est_F] - grad_F||
  double bias_standard_error = 0.0;
  MonteCarloEstimate second_moment_support;     // E||est_F||^2
  MonteCarloEstimate second_moment_complement;  // E||est_Fc||^2
  MonteCarloEstimate squared_deviation_support;  // E||est_F - grad_F||^2
};

namespace detail {

class RunningMoments {
 public:
  void add(double v) {
    ++n_;
    const double delta = v - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (v - mean_);
  }
  MonteCarloEstimate estimate() const {
    if (n_ < 2) return {mean_, 0.0};
    const double var = m2_ / static_cast<double>(n_ - 1);
    return {mean_, std::sqrt(var / static_cast<double>(n_))};
  }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace detail

/// Repeats estimate_gradient `trials` times at a fixed x and measures its
/// projection on F against the known true gradient.
template <typename Oracle, typename Derived>
ProjectedErrorStats projected_error_stats(Oracle&& f, const VectorXd& true_gradient,
                                          const Eigen::MatrixBase<Derived>& x,
                                          const SupportSet& support, const EstimatorConfig& cfg,
                                          Index trials, RngStream& rng) {
  if (trials < 1) throw std::invalid_argument("projected_error_stats: need trials >= 1");
  if (true_gradient.size() != x.size() || support.dimension() != x.size()) {
    throw std::invalid_argument("projected_error_stats: dimension mismatch");
  }
  const Index d = x.size();
  const auto& idx = support.indices();
  const Index s = support.size();

  VectorXd mean = VectorXd::Zero(s);
  VectorXd m2 = VectorXd::Zero(s);
  detail::RunningMoments on_support, off_support, deviation;

  for (Index t = 0; t < trials; ++t) {
    const VectorXd est = estimate_gradient(f, x, cfg, rng).template cast<double>();
    double in_sq = 0.0;
    double dev_sq = 0.0;
    for (Index j = 0; j < s; ++j) {
      const double v = est[idx[j]];
      in_sq += v * v;
      const double e = v - true_gradient[idx[j]];
      dev_sq += e * e;
      const double delta = v - mean[j];
      mean[j] += delta / static_cast<double>(t + 1);
      m2[j] += delta * (v - mean[j]);
    }
    on_support.add(in_sq);
    off_support.add(est.squaredNorm() - in_sq);
    deviation.add(dev_sq);
  }

  ProjectedErrorStats out;
  out.trials = trials;
  out.mean_on_support = VectorXd::Zero(d);
  out.mean_standard_error = VectorXd::Zero(d);
  double bias_sq = 0.0;
  double se_sq = 0.0;
  for (Index j = 0; j < s; ++j) {
    const double var = trials > 1 ? m2[j] / static_cast<double>(trials - 1) : 0.0;
    const double se = std::sqrt(var / static_cast<double>(trials));
    out.mean_on_support[idx[j]] = mean[j];
    out.mean_standard_error[idx[j]] = se;
    const double b = mean[j] - true_gradient[idx[j]];
    bias_sq += b * b;
    se_sq += se * se;
  }
  out.bias_norm = std::sqrt(bias_sq);
  out.bias_standard_error = std::sqrt(se_sq);
  out.second_moment_support = on_support.estimate();
  out.second_moment_complement = off_support.estimate();
  out.squared_deviation_support = deviation.estimate();
  return out;
}

}  // namespace szoht
