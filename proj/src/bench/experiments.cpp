#include "szoht/bench/experiments.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "szoht/baselines.hpp"
#include "szoht/bench/worker_pool.hpp"
#include "szoht/problems.hpp"

#ifndef SZOHT_BUNDLED_DATA_DIR
#define SZOHT_BUNDLED_DATA_DIR "data"
#endif

namespace szoht::bench {

namespace {

std::string num(double v) { return format_number(v); }
std::string num(Index v) { return fmt::format("{}", v); }
std::string flag(bool b) { return b ? "true" : "false"; }

std::string file_name(const std::string& stem, Format f) { return stem + extension(f); }

void collect_failures(ExperimentResult& out, const std::vector<RunRecord>& runs,
                      const std::string& label) {
  for (const auto& r : runs) {
    if (!r.ok()) {
      out.failures.push_back(fmt::format("{} {} seed={}: {} ({})", label, r.solver, r.seed,
                                         to_string(r.status), r.diagnostic));
    }
  }
}

/// Runs `make(seed)` for every seed, in seed order.
std::vector<RunRecord> run_seeds(const CommonOptions& opt,
                                 const std::function<RunRecord(std::uint64_t)>& make) {
  std::vector<std::function<RunRecord()>> tasks;
  for (auto seed : opt.seeds) tasks.emplace_back([&make, seed] { return make(seed); });
  return run_pool(tasks, opt.threads);
}

void append(std::vector<RunRecord>& all, const std::vector<RunRecord>& more) {
  all.insert(all.end(), more.begin(), more.end());
}

void require_seeds(const CommonOptions& opt) {
  if (opt.seeds.empty()) throw std::invalid_argument("seed list must not be empty");
}

}  // namespace

const OutputFile* ExperimentResult::find(const std::string& name) const {
  for (const auto& f : files) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
  for (const auto& f : result.files) {
    const auto path = dir / f.name;
    std::ofstream out(path, std::ios::binary);
    out << f.content;
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  }
}

ExperimentResult run_sensitivity(const SensitivityParams& p, const CommonOptions& opt) {
  require_seeds(opt);
  const Problem<double> problem = sparse_quadric(p.dimension, p.sparsity, p.target_sparsity);
  ExperimentResult out;
  Table theory{{"q", "eps_F", "eta", "rho", "gamma", "rho_gamma", "converges", "k_lower",
                "k_upper", "q_sufficient"},
               {}};

  for (Index q : p.directions) {
    SolverConfig cfg;
    cfg.sparsity = p.sparsity;
    cfg.estimator = {p.dimension, q, p.smoothing};
    cfg.iterations = p.iterations;
    const TheoryReport th = derive_theory(p.dimension, p.sparsity, cfg.estimator, *problem.constants);
    cfg.step_size = th.step_size;  // 1 / (4 eps_F + 1) since L = nu = 1

    const auto runs = run_seeds(opt, [&](std::uint64_t seed) {
      SolverConfig c = cfg;
      c.seed = seed;
      return szoht_run(problem, c);
    });
    out.files.push_back({file_name(fmt::format("sensitivity_q{}", q), opt.format),
                         render_traces(runs, opt.format)});
    collect_failures(out, runs, fmt::format("sensitivity q={}", q));
    append(out.runs, runs);
    theory.add_row({num(q), num(th.constants.eps_F), num(th.step_size), num(th.rho),
                    num(th.gamma), num(th.contraction), flag(th.converges),
                    num(th.k_lower_theorem), num(th.k_upper),
                    num(*th.q_sufficient_smooth)});
  }
  out.files.push_back({file_name("sensitivity_theory", opt.format), theory.render(opt.format)});
  return out;
}

ExperimentResult run_dim_independence(const DimIndependenceParams& p, const CommonOptions& opt) {
  require_seeds(opt);
  ExperimentResult out;
  Table summary{{"regime", "d", "s2", "q", "eta", "seed", "iterations", "queries_to_threshold",
                 "reached"},
                {}};
  for (const auto& regime : p.regimes) {
    for (Index d : p.dimensions) {
      const Problem<double> problem = sparse_recovery(d, p.target_sparsity);
      const Index s = 2 * p.sparsity + p.target_sparsity;
      Index s2 = 0;
      Index q = 0;
      if (regime == "full") {
        s2 = d;
        q = q_sufficient(d, s, s2, true);
      } else if (regime == "d_over_k") {
        s2 = std::max<Index>(1, d / p.sparsity);
        q = q_sufficient(d, s, s2, false);
      } else if (regime == "fixed") {
        s2 = std::min(p.fixed_support, d);
        q = q_sufficient(d, s, s2, false);
      } else {
        throw std::invalid_argument("unknown regime '" + regime +
                                    "' (expected full, d_over_k or fixed)");
      }
      SolverConfig cfg;
      cfg.sparsity = p.sparsity;
      cfg.estimator = {s2, q, p.smoothing};
      cfg.iterations = p.max_iterations;
      cfg.x0 = problem.suggested_start;
      cfg.allow_dense_start = true;
      cfg.target_value = p.threshold;
      const TheoryReport th = derive_theory(d, p.sparsity, cfg.estimator, *problem.constants);
      cfg.step_size = th.step_size;

      const auto runs = run_seeds(opt, [&](std::uint64_t seed) {
        SolverConfig c = cfg;
        c.seed = seed;
        return szoht_run(problem, c);
      });
      const std::string stem = fmt::format("dim_{}_d{}", regime, d);
      out.files.push_back({file_name(stem, opt.format), render_traces(runs, opt.format)});
      collect_failures(out, runs, stem);
      for (const auto& r : runs) {
        std::string queries;
        for (const auto& pt : r.trace) {
          if (pt.value <= p.threshold) {
            queries = fmt::format("{}", pt.queries);
            break;
          }
        }
        summary.add_row({regime, num(d), num(s2), num(q), num(th.step_size),
                         fmt::format("{}", r.seed), num(r.trace.back().iteration), queries,
                         flag(!queries.empty())});
      }
      append(out.runs, runs);
    }
  }
  out.files.push_back({file_name("dim_summary", opt.format), summary.render(opt.format)});
  return out;
}

ExperimentResult run_rho_gamma(const RhoGammaParams& p, const CommonOptions& opt) {
  ExperimentResult out;
  Table sweep{{"q", "k_star", "k", "rho", "gamma", "rho_gamma", "k_lower"}, {}};
  Table summary{{"q", "k_star", "min_rho_gamma", "argmin_k", "any_converges"}, {}};
  for (Index q : p.directions) {
    for (Index ks : p.target_sparsities) {
      const Index k_max = (p.dimension - ks) / 2;
      const Index k_min = std::max<Index>(1, ks);
      if (k_max < k_min) continue;
      std::vector<Index> ks_grid;
      const double ratio = static_cast<double>(k_max) / static_cast<double>(k_min);
      for (Index i = 0; i < p.k_points; ++i) {
        const double t = p.k_points > 1 ? static_cast<double>(i) / (p.k_points - 1) : 0.0;
        const Index k = static_cast<Index>(std::llround(static_cast<double>(k_min) * std::pow(ratio, t)));
        if (ks_grid.empty() || k != ks_grid.back()) ks_grid.push_back(k);
      }
      double best = std::numeric_limits<double>::infinity();
      Index best_k = 0;
      for (Index k : ks_grid) {
        const Contraction c = contraction_at(p.dimension, k, ks, p.dimension, q, p.kappa);
        sweep.add_row({num(q), num(ks), num(k), num(c.rho), num(c.gamma), num(c.product),
                       num(c.k_lower)});
        if (c.product < best) {
          best = c.product;
          best_k = k;
        }
      }
      summary.add_row({num(q), num(ks), num(best), num(best_k), flag(best < 1.0)});
    }
  }
  (void)opt;
  out.files.push_back({file_name("rho_gamma", opt.format), sweep.render(opt.format)});
  out.files.push_back({file_name("rho_gamma_summary", opt.format), summary.render(opt.format)});
  return out;
}

std::filesystem::path bundled_data_dir() { return SZOHT_BUNDLED_DATA_DIR; }

namespace {

struct DatasetDefaults {
  double min_return;
  double penalty;
  Index sparsity;
};

DatasetDefaults dataset_defaults(const std::string& name) {
  if (name == "fixture") return {0.006, 10.0, 2};
  if (name == "port5") return {1e-3, 1e-3, 10};
  return {0.1, 10.0, 10};
}

std::filesystem::path dataset_path(const std::string& name, const std::filesystem::path& dir) {
  if (name == "fixture") return bundled_data_dir() / "port_fixture.txt";
  return dir / (name + ".txt");
}

struct GridPoint {
  std::string solver;
  std::string label;
  std::vector<RunRecord> runs;
  double score = std::numeric_limits<double>::infinity();  // mean final f over seeds
};

double mean_final(const std::vector<RunRecord>& runs) {
  double sum = 0.0;
  for (const auto& r : runs) {
    if (!r.ok()) return std::numeric_limits<double>::infinity();
    sum += r.trace.back().value;
  }
  return sum / static_cast<double>(runs.size());
}

}  // namespace

ExperimentResult run_portfolio(const PortfolioParams& p, const CommonOptions& opt) {
  require_seeds(opt);
  std::filesystem::path dir = p.data_dir;
  if (dir.empty()) {
    const char* env = std::getenv("SZOHT_DATA_DIR");
    dir = env ? std::filesystem::path(env) : bundled_data_dir();
  }
  ExperimentResult out;
  for (const auto& name : p.datasets) {
    const auto path = dataset_path(name, dir);
    if (!std::filesystem::exists(path)) {
      throw std::runtime_error(fmt::format(
          "dataset '{}': expected the OR-Library file '{}' (set SZOHT_DATA_DIR or --data-dir)",
          name, path.string()));
    }
    const DatasetDefaults def = dataset_defaults(name);
    const PortfolioData data =
        load_port_file(path, p.min_return.value_or(def.min_return), p.penalty.value_or(def.penalty));
    const Problem<double> problem = portfolio_objective(data);
    const Index d = problem.dimension;
    const Index k = std::min(p.sparsity.value_or(def.sparsity), d);
    const EstimatorConfig est{std::min(p.support_size, d), p.directions, p.smoothing};
    const VectorXd uniform = VectorXd::Constant(d, 1.0 / static_cast<double>(d));

    std::vector<GridPoint> grid;
    for (double eta : p.eta_grid) {
      GridPoint g{"szoht", fmt::format("eta={}", num(eta)), {}};
      g.runs = run_seeds(opt, [&](std::uint64_t seed) {
        SolverConfig c;
        c.sparsity = k;
        c.estimator = est;
        c.step_size = eta;
        c.iterations = p.iterations;
        c.seed = seed;
        c.x0 = hard_threshold(uniform, k).vector;
        return szoht_run(problem, c);
      });
      grid.push_back(std::move(g));
    }
    for (double eta : p.eta_grid) {
      for (double lambda : p.lambda_grid) {
        GridPoint g{"rspgf", fmt::format("eta={};lambda={}", num(eta), num(lambda)), {}};
        g.runs = run_seeds(opt, [&](std::uint64_t seed) {
          BaselineConfig c;
          c.estimator = est;
          c.step_size = eta;
          c.l1_penalty = lambda;
          c.iterations = p.iterations;
          c.seed = seed;
          c.x0 = uniform;
          return rspgf_run(problem, c);
        });
        grid.push_back(std::move(g));
      }
    }
    for (double radius : p.radius_grid) {
      GridPoint g{"zscg", fmt::format("R={}", num(radius)), {}};
      g.runs = run_seeds(opt, [&](std::uint64_t seed) {
        BaselineConfig c;
        c.estimator = est;
        c.l1_radius = radius;
        c.iterations = p.iterations;
        c.seed = seed;
        c.x0 = uniform;
        return zscg_run(problem, c);
      });
      grid.push_back(std::move(g));
    }

    Table grid_table{{"solver", "params", "mean_final_f", "completed"}, {}};
    std::map<std::string, const GridPoint*> best;
    for (auto& g : grid) {
      g.score = mean_final(g.runs);
      bool completed = true;
      for (const auto& r : g.runs) completed = completed && r.ok();
      grid_table.add_row({g.solver, g.label, num(g.score), flag(completed)});
      collect_failures(out, g.runs, fmt::format("portfolio {} {}", name, g.label));
      auto it = best.find(g.solver);
      if (it == best.end() || g.score < it->second->score) best[g.solver] = &g;
      append(out.runs, g.runs);
    }

    Table comparison{{"solver", "params", "mean_final_f", "queries", "max_l0"}, {}};
    for (const char* solver : {"szoht", "rspgf", "zscg"}) {
      const auto it = best.find(solver);
      if (it == best.end()) continue;
      const GridPoint& g = *it->second;
      Index max_l0 = 0;
      for (const auto& r : g.runs) max_l0 = std::max(max_l0, l0_norm(r.final_iterate));
      comparison.add_row({g.solver, g.label, num(g.score),
                          fmt::format("{}", g.runs.front().trace.back().queries), num(max_l0)});
      out.files.push_back({file_name(fmt::format("portfolio_{}_{}", name, solver), opt.format),
                           render_traces(g.runs, opt.format)});
    }
    out.files.push_back({file_name(fmt::format("portfolio_{}_grid", name), opt.format),
                         grid_table.render(opt.format)});
    out.files.push_back({file_name(fmt::format("portfolio_{}_comparison", name), opt.format),
                         comparison.render(opt.format)});
  }
  return out;
}

ExperimentResult run_recovery(const RecoveryParams& p, const CommonOptions& opt) {
  require_seeds(opt);
  const Problem<double> problem = sparse_recovery(p.dimension, p.target_sparsity);
  const Index d = p.dimension;
  const Index s = 2 * p.sparsity + p.target_sparsity;
  const Index s2 = p.support_size > 0 ? p.support_size : d;
  const Index q = p.directions > 0 ? p.directions : q_sufficient(d, s, s2, s2 == d);

  SolverConfig cfg;
  cfg.sparsity = p.sparsity;
  cfg.estimator = {s2, q, p.smoothing};
  cfg.iterations = p.iterations;
  cfg.x0 = problem.suggested_start;
  cfg.allow_dense_start = true;
  const TheoryReport th = derive_theory(d, p.sparsity, cfg.estimator, *problem.constants);
  cfg.step_size = th.step_size;

  ExperimentResult out;
  out.runs = run_seeds(opt, [&](std::uint64_t seed) {
    SolverConfig c = cfg;
    c.seed = seed;
    return szoht_run(problem, c);
  });
  collect_failures(out, out.runs, "recovery");
  out.files.push_back({file_name("recovery", opt.format), render_traces(out.runs, opt.format)});

  Table theory{{"d", "k", "k_star", "s2", "q", "eta", "rho", "gamma", "rho_gamma", "converges",
                "smoothing_floor"},
               {}};
  theory.add_row({num(d), num(p.sparsity), num(p.target_sparsity), num(s2), num(q),
                  num(th.step_size), num(th.rho), num(th.gamma), num(th.contraction),
                  flag(th.converges), th.smoothing_floor ? num(*th.smoothing_floor) : ""});
  out.files.push_back({file_name("recovery_theory", opt.format), theory.render(opt.format)});
  return out;
}

ExperimentResult run_projection(const ProjectionParams& p, const CommonOptions& opt) {
  require_seeds(opt);
  const Index d = p.gradient.size();
  const SupportSet support(d, p.support);
  const VectorXd g = p.gradient;
  auto f = [&g](const VectorXd& x) { return g.dot(x) + 0.5 * x.squaredNorm(); };
  const EstimatorConfig est{d, 1, p.smoothing};
  const VectorXd origin = VectorXd::Zero(d);
  const double half = 0.5 * static_cast<double>(d);

  std::vector<std::string> columns{"kind"};
  for (Index i = 0; i < d; ++i) columns.push_back(fmt::format("v{}", i));
  for (std::size_t j = 0; j < p.support.size(); ++j) columns.push_back(fmt::format("p{}", j));
  columns.push_back("radius_ratio");
  Table table{columns, {}};

  auto row = [&](const char* kind, const VectorXd& v, double ratio) {
    std::vector<std::string> r{kind};
    for (Index i = 0; i < d; ++i) r.push_back(num(v[i]));
    for (Index i : support) r.push_back(num(v[i]));
    r.push_back(num(ratio));
    table.add_row(std::move(r));
  };
  row("gradient", g, 1.0);
  const RngStream root(opt.seeds.front());
  for (Index n = 0; n < p.num_estimates; ++n) {
    RngStream rng = root.split(static_cast<std::uint64_t>(n));
    const VectorXd v = estimate_gradient(f, origin, est, rng);
    row("estimate", v, (v - half * g).norm() / (half * g.norm()));
  }
  ExperimentResult out;
  out.files.push_back({file_name("projection", opt.format), table.render(opt.format)});
  return out;
}

std::vector<QminRow> QminParams::default_grid() {
  std::vector<QminRow> grid;
  for (Index d : {Index{10000}, Index{100000}}) {
    for (Index s2 : {Index{1}, Index{2}, Index{10}, Index{100}, Index{0}}) {
      for (Index ks : {Index{1}, Index{5}}) {
        for (double kappa : {1.0, 1.5, 2.0}) {
          if (d == 10000 && kappa > 1.5) continue;
          grid.push_back({d, s2, ks, kappa});
        }
      }
    }
  }
  return grid;
}

ExperimentResult run_qmin(const QminParams& p, const CommonOptions& opt) {
  ExperimentResult out;
  Table table{{"d", "s2", "k_star", "kappa", "q_min", "q_below", "feasible_below", "q_above",
               "feasible_above", "consistent"},
              {}};
  Table slopes{{"d", "s2", "k_star", "kappa_from", "kappa_to", "loglog_slope"}, {}};
  std::map<std::tuple<Index, Index, Index>, bool> slope_done;
  for (const auto& row : p.grid) {
    const Index s2 = row.support_size > 0 ? row.support_size : row.dimension;
    const double qm = q_min(row.dimension, s2, row.target_sparsity, row.kappa);
    const double lo = p.below * qm;
    const double hi = p.above * qm;
    const bool below = find_feasible_k(row.dimension, s2, row.target_sparsity, row.kappa, lo).has_value();
    const bool above = find_feasible_k(row.dimension, s2, row.target_sparsity, row.kappa, hi).has_value();
    table.add_row({num(row.dimension), num(s2), num(row.target_sparsity), num(row.kappa), num(qm),
                   num(lo), flag(below), num(hi), flag(above), flag(!below && above)});

    const auto key = std::make_tuple(row.dimension, s2, row.target_sparsity);
    if (s2 > 1 && p.slope_kappas.size() >= 2 && !slope_done[key]) {
      slope_done[key] = true;
      const double k0 = p.slope_kappas.front();
      const double k1 = p.slope_kappas.back();
      // Least-squares slope of log q_min against log kappa.
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      const double n = static_cast<double>(p.slope_kappas.size());
      for (double kappa : p.slope_kappas) {
        const double x = std::log(kappa);
        const double y = std::log(q_min(row.dimension, s2, row.target_sparsity, kappa));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      slopes.add_row({num(row.dimension), num(s2), num(row.target_sparsity), num(k0), num(k1),
                      num(slope)});
    }
  }
  out.files.push_back({file_name("qmin", opt.format), table.render(opt.format)});
  out.files.push_back({file_name("qmin_slope", opt.format), slopes.render(opt.format)});
  return out;
}

}  // namespace szoht::bench
