#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "szoht/problem.hpp"

namespace szoht {

/// f(x) = 1/2 ||a * (x - b)||^2 with 0-based indices:
///   a_i = 1 for i >= d - s (s = 2k + k*), else 0;
///   b_i = i / (100 d) for i < d - zero_band, else 0.
/// The two bands overlap, so b is nonzero on part of the active band.
/// x* is the best k*-sparse point: b kept on the k* active coordinates with
/// the largest b_i. L = nu = 1 on the active band.
Problem<double> sparse_quadric(Index dimension, Index sparsity, Index target_sparsity,
                               Index zero_band);
inline Problem<double> sparse_quadric(Index dimension, Index sparsity, Index target_sparsity) {
  return sparse_quadric(dimension, sparsity, target_sparsity, 70 * target_sparsity);
}

/// f(x) = 1/2 ||x - y||^2 with y zero except its last k* entries, which are
/// 1/k*, 2/k*, ..., 1. x* = y, sigma = 0, L = nu = 1. The suggested start
/// is 1/d on the first d - k* coordinates (dense).
Problem<double> sparse_recovery(Index dimension, Index target_sparsity);

struct PortfolioData {
  VectorXd mean_return;  // m
  MatrixXd covariance;   // C, symmetric PSD
  double min_return = 0.0;  // r
  double penalty = 0.0;     // lambda

  Index dimension() const { return mean_return.size(); }
  /// Throws std::invalid_argument unless C is square, symmetric and (for
  /// d <= 1000) has smallest eigenvalue >= -1e-8.
  void validate() const;
};

/// Returned when sum x = 0 or the evaluation is not finite.
inline constexpr double kPortfolioFallback = 1e12;

/// f(x) = x'Cx / (2 (sum x)^2) + lambda min(m'x / sum x - r, 0)^2.
/// No known optimum or constants.
Problem<double> portfolio_objective(PortfolioData data);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads an OR-Library "port" file: N, then N lines "mean stddev", then
/// "i j correlation" lines (1-indexed). Missing pairs get correlation 0 off
/// the diagonal and 1 on it; one warning summarizes them. Warnings go to
/// `warnings` when given, else to stderr.
PortfolioData load_port_file(const std::filesystem::path& path, double min_return,
                             double penalty, std::vector<std::string>* warnings = nullptr);

}  // namespace szoht
