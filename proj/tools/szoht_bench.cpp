// Command-line driver for the reproduction recipes. Each subcommand writes
// plot-ready traces and tables under --out.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>

#include "szoht/bench/experiments.hpp"

using namespace szoht;
using namespace szoht::bench;

int main(int argc, char** argv) {
  CLI::App app{"Sparse zeroth-order hard-thresholding experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key = value file ([subcommand] sections)");

  std::vector<std::uint64_t> seeds{0};
  std::string out_dir = "out";
  std::string format = "csv";
  unsigned threads = 0;
  app.add_option("--seed-list", seeds, "Comma-separated seeds")->delimiter(',');
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--format", format, "Trace format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", threads, "Worker threads (0: all cores)");

  std::function<ExperimentResult(const CommonOptions&)> recipe;

  SensitivityParams sens;
  auto* sub = app.add_subcommand("sensitivity", "Effect of q on convergence (sparse quadric)");
  sub->add_option("--d", sens.dimension);
  sub->add_option("--k", sens.sparsity);
  sub->add_option("--k-star", sens.target_sparsity);
  sub->add_option("--mu", sens.smoothing);
  sub->add_option("--iterations", sens.iterations);
  sub->add_option("--q-list", sens.directions)->delimiter(',');
  sub->callback([&] { recipe = [&](const CommonOptions& o) { return run_sensitivity(sens, o); }; });

  DimIndependenceParams dim;
  sub = app.add_subcommand("dim-independence", "Queries to a target value across dimensions");
  sub->add_option("--d-list", dim.dimensions)->delimiter(',');
  sub->add_option("--k", dim.sparsity);
  sub->add_option("--k-star", dim.target_sparsity);
  sub->add_option("--mu", dim.smoothing);
  sub->add_option("--threshold", dim.threshold);
  sub->add_option("--max-iterations", dim.max_iterations);
  sub->add_option("--regimes", dim.regimes, "full, d_over_k, fixed")->delimiter(',');
  sub->add_option("--fixed-s2", dim.fixed_support);
  sub->callback([&] { recipe = [&](const CommonOptions& o) { return run_dim_independence(dim, o); }; });

  RhoGammaParams rg;
  sub = app.add_subcommand("rho-gamma", "Contraction factor as a function of k");
  sub->add_option("--d", rg.dimension);
  sub->add_option("--q-list", rg.directions)->delimiter(',');
  sub->add_option("--k-star-list", rg.target_sparsities)->delimiter(',');
  sub->add_option("--k-points", rg.k_points);
  sub->add_option("--kappa", rg.kappa);
  sub->callback([&] { recipe = [&](const CommonOptions& o) { return run_rho_gamma(rg, o); }; });

  PortfolioParams port;
  std::string data_dir;
  std::optional<double> min_return, penalty;
  std::optional<Index> port_k;
  sub = app.add_subcommand("portfolio", "Sparse portfolio risk versus l1 baselines");
  sub->add_option("--datasets", port.datasets, "fixture or OR-Library names (port3, ...)")
      ->delimiter(',');
  sub->add_option("--data-dir", data_dir, "Directory with <name>.txt (default $SZOHT_DATA_DIR)");
  sub->add_option("--r", min_return);
  sub->add_option("--lambda", penalty);
  sub->add_option("--k", port_k);
  sub->add_option("--s2", port.support_size);
  sub->add_option("--q", port.directions);
  sub->add_option("--mu", port.smoothing);
  sub->add_option("--iterations", port.iterations);
  sub->add_option("--eta-grid", port.eta_grid)->delimiter(',');
  sub->add_option("--l1-grid", port.lambda_grid)->delimiter(',');
  sub->add_option("--radius-grid", port.radius_grid)->delimiter(',');
  sub->callback([&] {
    port.data_dir = data_dir;
    port.min_return = min_return;
    port.penalty = penalty;
    port.sparsity = port_k;
    recipe = [&](const CommonOptions& o) { return run_portfolio(port, o); };
  });

  RecoveryParams rec;
  sub = app.add_subcommand("recovery", "Sparse recovery trace with its theory report");
  sub->add_option("--d", rec.dimension);
  sub->add_option("--k", rec.sparsity);
  sub->add_option("--k-star", rec.target_sparsity);
  sub->add_option("--s2", rec.support_size, "0: d");
  sub->add_option("--q", rec.directions, "0: sufficient count");
  sub->add_option("--mu", rec.smoothing);
  sub->add_option("--iterations", rec.iterations);
  sub->callback([&] { recipe = [&](const CommonOptions& o) { return run_recovery(rec, o); }; });

  ProjectionParams proj;
  std::vector<double> grad{1.0, -2.0, 0.5};
  sub = app.add_subcommand("projection", "Point cloud of single-direction estimates");
  sub->add_option("--gradient", grad)->delimiter(',');
  sub->add_option("--support", proj.support)->delimiter(',');
  sub->add_option("--mu", proj.smoothing);
  sub->add_option("--n-dir", proj.num_estimates);
  sub->callback([&] {
    proj.gradient = Eigen::Map<const VectorXd>(grad.data(), static_cast<Index>(grad.size()));
    recipe = [&](const CommonOptions& o) { return run_projection(proj, o); };
  });

  QminParams qm;
  std::vector<Index> qd, qs2, qks;
  std::vector<double> qkappa;
  sub = app.add_subcommand("qmin", "Necessary q with brute-force feasibility verdicts");
  sub->add_option("--d-list", qd)->delimiter(',');
  sub->add_option("--s2-list", qs2, "0: d")->delimiter(',');
  sub->add_option("--k-star-list", qks)->delimiter(',');
  sub->add_option("--kappa-list", qkappa)->delimiter(',');
  sub->add_option("--below", qm.below);
  sub->add_option("--above", qm.above);
  sub->callback([&] {
    if (!qd.empty() || !qs2.empty() || !qks.empty() || !qkappa.empty()) {
      if (qd.empty() || qs2.empty() || qks.empty() || qkappa.empty()) {
        throw CLI::ValidationError("qmin", "give all four of --d-list, --s2-list, --k-star-list, --kappa-list");
      }
      qm.grid.clear();
      for (Index d : qd)
        for (Index s2 : qs2)
          for (Index ks : qks)
            for (double kappa : qkappa) qm.grid.push_back({d, s2, ks, kappa});
    }
    recipe = [&](const CommonOptions& o) { return run_qmin(qm, o); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0
  }

  try {
    CommonOptions opt;
    opt.seeds = seeds;
    opt.format = parse_format(format);
    opt.threads = threads;
    const ExperimentResult result = recipe(opt);
    write_outputs(result, out_dir);
    for (const auto& f : result.files) fmt::print("wrote {}/{}\n", out_dir, f.name);
    if (!result.ok()) {
      fmt::print(stderr, "{} run(s) failed:\n", result.failures.size());
      for (const auto& line : result.failures) fmt::print(stderr, "  {}\n", line);
      return 1;
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  return 0;
}
