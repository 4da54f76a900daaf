#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "szoht/bench/trace_io.hpp"
#include "szoht/solver.hpp"

namespace szoht::bench {

struct CommonOptions {
  std::vector<std::uint64_t> seeds{0};
  Format format = Format::csv;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct OutputFile {
  std::string name;  // relative to the output directory
  std::string content;
};

struct ExperimentResult {
  std::vector<RunRecord> runs;
  std::vector<OutputFile> files;
  std::vector<std::string> failures;  // one line per aborted run

  bool ok() const { return failures.empty(); }
  const OutputFile* find(const std::string& name) const;
};

/// Writes every file under `dir`, creating it; throws std::runtime_error
/// naming the path on I/O failure.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

struct SensitivityParams {
  Index dimension = 5000;
  Index target_sparsity = 5;
  Index sparsity = 370;
  double smoothing = 1e-4;
  Index iterations = 500;
  // Only 1 and 20 come from the reference experiment; the rest is a x3 ladder.
  std::vector<Index> directions{1, 20, 60, 180, 540, 1620};
};
ExperimentResult run_sensitivity(const SensitivityParams& p, const CommonOptions& opt);

struct DimIndependenceParams {
  std::vector<Index> dimensions{3000, 10000, 30000};
  Index sparsity = 500;
  Index target_sparsity = 5;
  double smoothing = 1e-8;
  double threshold = 1e-6;
  Index max_iterations = 2000;
  // "full": s2 = d, q = 2(s + 2); "d_over_k": s2 = floor(d / k);
  // "fixed": s2 = fixed_support. The last two use q = ceil(2s + 6d / s2).
  std::vector<std::string> regimes{"full", "d_over_k", "fixed"};
  Index fixed_support = 50;
};
ExperimentResult run_dim_independence(const DimIndependenceParams& p, const CommonOptions& opt);

struct RhoGammaParams {
  Index dimension = 30000;
  std::vector<Index> directions{200, 5000, 30000};
  std::vector<Index> target_sparsities{1, 5, 20};
  Index k_points = 200;  // log-spaced k in [k*, (d - k*) / 2]
  double kappa = 1.0;
};
ExperimentResult run_rho_gamma(const RhoGammaParams& p, const CommonOptions& opt);

struct PortfolioParams {
  // "fixture" or OR-Library names such as "port3" (read from data_dir/<name>.txt).
  std::vector<std::string> datasets{"fixture"};
  std::filesystem::path data_dir;  // default: $SZOHT_DATA_DIR, else the bundled fixture dir
  std::optional<double> min_return;  // override the per-dataset r
  std::optional<double> penalty;     // override the per-dataset lambda
  std::optional<Index> sparsity;     // default 10 (2 on the fixture)
  Index support_size = 10;           // clipped to d
  Index directions = 10;
  double smoothing = 1e-4;
  Index iterations = 1000;
  std::vector<double> eta_grid{0.1, 1.0, 3.0, 10.0, 30.0, 100.0, 300.0};
  std::vector<double> lambda_grid{0.0, 1e-5, 1e-4};
  std::vector<double> radius_grid{1.0, 2.0, 5.0, 10.0};
};
ExperimentResult run_portfolio(const PortfolioParams& p, const CommonOptions& opt);

/// Directory holding the bundled fixture, baked in at build time.
std::filesystem::path bundled_data_dir();

struct RecoveryParams {
  Index dimension = 3000;
  Index sparsity = 500;
  Index target_sparsity = 5;
  Index support_size = 0;  // 0: d
  Index directions = 0;    // 0: the sufficient count for the regime
  double smoothing = 1e-8;
  Index iterations = 60;
};
ExperimentResult run_recovery(const RecoveryParams& p, const CommonOptions& opt);

struct ProjectionParams {
  VectorXd gradient = (VectorXd(3) << 1.0, -2.0, 0.5).finished();  // f(x) = g'x + |x|^2 / 2
  std::vector<Index> support{0, 1};
  double smoothing = 1e-10;
  Index num_estimates = 1000;
};
ExperimentResult run_projection(const ProjectionParams& p, const CommonOptions& opt);

struct QminRow {
  Index dimension;
  Index support_size;  // 0: d
  Index target_sparsity;
  double kappa;
};
struct QminParams {
  std::vector<QminRow> grid = default_grid();
  double below = 0.99;
  double above = 10.0;
  std::vector<double> slope_kappas{10.0, 20.0, 40.0, 80.0};

  static std::vector<QminRow> default_grid();
};
ExperimentResult run_qmin(const QminParams& p, const CommonOptions& opt);

}  // namespace szoht::bench
