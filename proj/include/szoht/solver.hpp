#pragma once

#include <fmt/format.h>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "szoht/estimator.hpp"
#include "szoht/problem.hpp"
#include "szoht/rng.hpp"
#include "szoht/theory.hpp"
#include "szoht/thresholding.hpp"

namespace szoht {

struct SolverConfig {
  Index sparsity = 1;  // k
  EstimatorConfig estimator;
  std::optional<double> step_size;  // derived from ProblemConstants when empty
  Index iterations = 100;           // T
  std::uint64_t seed = 0;
  std::optional<VectorXd> x0;            // zero when empty
  std::optional<double> target_value;    // stop once f(x^t) <= target
  bool allow_dense_start = false;        // accept ||x0||_0 > k; iterates t >= 1 stay k-sparse
};

enum class RunStatus { completed, reached_target, diverged, non_finite };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::reached_target: return "reached_target";
    case RunStatus::diverged: return "diverged";
    case RunStatus::non_finite: return "non_finite";
  }
  return "unknown";
}

struct TracePoint {
  Index iteration = 0;
  std::uint64_t queries = 0;        // cumulative oracle calls
  double value = 0.0;               // f(x^t), noise-free
  std::optional<double> distance;   // ||x^t - x*|| when x* is known
};

struct RunRecord {
  std::string solver;
  std::string problem;
  std::uint64_t seed = 0;
  RunStatus status = RunStatus::completed;
  std::string diagnostic;  // set when the run aborted
  std::vector<TracePoint> trace;  // t = 0 first
  VectorXd final_iterate;
  bool has_distance = false;
  double step_size = 0.0;
  std::uint64_t queries_per_iteration = 0;            // q + 1, shared f(x)
  std::uint64_t two_point_queries_per_iteration = 0;  // 2q
  std::vector<std::pair<std::string, std::string>> config;
  double wall_seconds = 0.0;

  bool ok() const { return status == RunStatus::completed || status == RunStatus::reached_target; }
};

namespace detail {

struct LoopSettings {
  std::string solver;
  EstimatorConfig estimator;
  Index iterations = 1;
  std::uint64_t seed = 0;
  VectorXd x0;
  std::optional<double> target_value;
  double step_size = 0.0;
};

/// Shared driver: per iteration, draws xi and the estimate from
/// RngStream(seed).split(t), then x = step(x, estimate, t). Counts every
/// oracle call and logs f(x^t) and ||x^t - x*|| after each step.
template <typename Scalar, typename Step>
RunRecord run_loop(const Problem<Scalar>& problem, const LoopSettings& s, Step&& step) {
  const auto start = std::chrono::steady_clock::now();
  const Index d = problem.dimension;
  if (s.x0.size() != d) throw std::invalid_argument(s.solver + ": x0 has the wrong dimension");
  if (s.iterations < 1) throw std::invalid_argument(s.solver + ": need T >= 1");
  s.estimator.validate(d);

  RunRecord rec;
  rec.solver = s.solver;
  rec.problem = problem.name;
  rec.seed = s.seed;
  rec.step_size = s.step_size;
  rec.queries_per_iteration = s.estimator.queries_per_estimate();
  rec.two_point_queries_per_iteration = s.estimator.two_point_queries_per_estimate();
  rec.has_distance = problem.optimum.has_value();

  Vector<Scalar> x = s.x0.template cast<Scalar>();
  const double guard = 1e12 * (1.0 + s.x0.norm());
  std::uint64_t queries = 0;

  auto log = [&](Index t) {
    TracePoint p;
    p.iteration = t;
    p.queries = queries;
    p.value = static_cast<double>(problem.objective(x));
    if (rec.has_distance) {
      p.distance = (x.template cast<double>() - problem.optimum->template cast<double>()).norm();
    }
    rec.trace.push_back(p);
    return p.value;
  };

  log(0);
  const RngStream root(s.seed);
  for (Index t = 1; t <= s.iterations; ++t) {
    RngStream rng = root.split(static_cast<std::uint64_t>(t));
    const Noise xi = problem.draw_noise(rng);
    auto oracle = [&](const Vector<Scalar>& point) {
      ++queries;
      return problem.value(point, xi);
    };
    Vector<Scalar> next;
    try {
      const Vector<Scalar> g = estimate_gradient(oracle, x, s.estimator, rng);
      next = step(x, g, t);
    } catch (const NumericError& e) {
      rec.status = RunStatus::non_finite;
      rec.diagnostic = fmt::format("iteration {}: {}", t, e.what());
      break;
    }
    if (!next.allFinite()) {
      Index bad = 0;
      while (bad < next.size() && std::isfinite(static_cast<double>(next[bad]))) ++bad;
      rec.status = RunStatus::non_finite;
      rec.diagnostic = fmt::format("iteration {}: iterate entry {} is {}", t, bad,
                                   static_cast<double>(next[bad]));
      break;
    }
    x = std::move(next);
    const double fx = log(t);
    const double norm = static_cast<double>(x.norm());
    if (norm > guard) {
      rec.status = RunStatus::diverged;
      rec.diagnostic = fmt::format("iteration {}: ||x|| = {} exceeds {}", t, norm, guard);
      break;
    }
    if (s.target_value && fx <= *s.target_value) {
      rec.status = RunStatus::reached_target;
      break;
    }
  }

  rec.final_iterate = x.template cast<double>();
  rec.config = {
      {"solver", s.solver},
      {"problem", problem.name},
      {"d", fmt::format("{}", d)},
      {"s2", fmt::format("{}", s.estimator.support_size)},
      {"q", fmt::format("{}", s.estimator.num_directions)},
      {"mu", fmt::format("{}", s.estimator.smoothing)},
      {"eta", fmt::format("{}", s.step_size)},
      {"T", fmt::format("{}", s.iterations)},
      {"seed", fmt::format("{}", s.seed)},
  };
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

inline VectorXd start_point(const std::optional<VectorXd>& x0, Index d) {
  return x0 ? *x0 : VectorXd::Zero(d);
}

}  // namespace detail

/// Stochastic zeroth-order hard-thresholding:
///   x^t = H_k(x^{t-1} - eta * estimate(x^{t-1})).
/// When cfg.step_size is empty, eta = nu / ((4 eps_F + 1) L^2) from `constants`.
template <typename Scalar>
RunRecord szoht_run(const Problem<Scalar>& problem, const SolverConfig& cfg,
                    const std::optional<ProblemConstants>& constants = std::nullopt) {
  const Index d = problem.dimension;
  if (cfg.sparsity < 1 || cfg.sparsity > d) {
    throw std::invalid_argument("szoht_run: need 1 <= k <= d");
  }
  double eta = 0.0;
  if (cfg.step_size) {
    eta = *cfg.step_size;
  } else {
    const auto& c = constants ? constants : problem.constants;
    if (!c) throw std::invalid_argument("szoht_run: no step size and no problem constants");
    eta = derive_theory(d, cfg.sparsity, cfg.estimator, *c).step_size;
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("szoht_run: need eta > 0");

  detail::LoopSettings s;
  s.solver = "szoht";
  s.estimator = cfg.estimator;
  s.iterations = cfg.iterations;
  s.seed = cfg.seed;
  s.x0 = detail::start_point(cfg.x0, d);
  s.target_value = cfg.target_value;
  s.step_size = eta;
  if (s.x0.size() == d && !cfg.allow_dense_start && l0_norm(s.x0) > cfg.sparsity) {
    throw std::invalid_argument("szoht_run: ||x0||_0 exceeds k");
  }

  const Scalar step = static_cast<Scalar>(eta);
  const Index k = cfg.sparsity;
  RunRecord rec = detail::run_loop(problem, s, [&](const Vector<Scalar>& x,
                                                   const Vector<Scalar>& g, Index) {
    return hard_threshold(x - step * g, k).vector;
  });
  rec.config.emplace_back("k", fmt::format("{}", k));
  return rec;
}

}  // namespace szoht
