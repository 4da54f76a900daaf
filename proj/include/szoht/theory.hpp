#pragma once

#include <optional>

#include "szoht/estimator.hpp"
#include "szoht/types.hpp"

namespace szoht {

/// Restricted smoothness / convexity metadata of a problem.
struct ProblemConstants {
  double smoothness = 1.0;        // L (RSS constant at sparsity max(s2, s))
  double strong_convexity = 1.0;  // nu (RSC constant at sparsity s)
  std::optional<double> gradient_noise;  // sigma at x*; empty when x* is unknown
  Index target_sparsity = 0;             // k* = ||x*||_0

  double condition_number() const { return smoothness / strong_convexity; }
  void validate() const;
};

/// Which contraction factor to report. `theorem` uses
/// rho^2 = 1 - nu^2 / ((4 eps_F + 1) L^2); `doubled` uses the variant with
/// 2 nu^2 in the numerator, which reproduces rho = sqrt(1 - 2 / (13 kappa^2))
/// at eps_F = 3.
enum class RhoVariant { theorem, doubled };

struct TheoryReport {
  Index dimension = 0;
  Index sparsity = 0;             // k
  Index target_sparsity = 0;      // k*
  Index restricted_sparsity = 0;  // s = 2k + k*
  EstimatorConfig estimator;
  RhoVariant variant = RhoVariant::theorem;

  EstimatorConstants constants;
  double step_size = 0.0;    // eta = nu / ((4 eps_F + 1) L^2)
  double rho = 0.0;          // contraction of the gradient step
  double gamma = 1.0;        // expansivity of hard thresholding
  double contraction = 0.0;  // rho * gamma
  double a = 0.0;            // sigma coefficient of the one-step bound
  double b = 0.0;            // mu coefficient of the one-step bound
  bool converges = false;    // rho * gamma < 1

  // Sparsity windows. All three lower bounds are reported side by side.
  double k_lower_theorem = 0.0;    // rho^2 k* / (1 - rho^2)^2
  double k_lower_corollary = 0.0;  // (86 kappa^4 - 12 kappa^2) k*
  double k_order_scale = 0.0;      // kappa^4 k*, the O(.) scale of the initialization rule
  double k_upper = 0.0;            // (d - k*) / 2
  bool in_window = false;          // k_lower_theorem <= k <= k_upper

  double q_min = 0.0;                      // necessary direction count (0 when k* = 0)
  Index q_sufficient = 0;                  // 2s + 6d/s2, rounded up
  std::optional<Index> q_sufficient_smooth;  // 2(s + 2), only when s2 = d

  // Asymptotic error floor gamma/(1 - rho gamma) * (a sigma + b mu); set when
  // converges (and sigma is known, for the first term).
  std::optional<double> noise_floor;
  std::optional<double> smoothing_floor;
};

/// Every convergence constant for running SZOHT with kept sparsity k.
/// Throws std::invalid_argument if s = 2k + k* exceeds d or k* > k.
TheoryReport derive_theory(Index dimension, Index sparsity, const EstimatorConfig& estimator,
                           const ProblemConstants& constants,
                           RhoVariant variant = RhoVariant::theorem);

/// rho, gamma and their product at (k, q) for a problem with condition
/// number kappa (nu = 1, L = kappa).
struct Contraction {
  double rho;
  double gamma;
  double product;
  double k_lower;  // rho^2 k* / (1 - rho^2)^2
};
Contraction contraction_at(Index dimension, Index sparsity, Index target_sparsity,
                           Index support_size, Index num_directions, double kappa,
                           RhoVariant variant = RhoVariant::theorem);

/// Necessary number of directions for some k to satisfy the sparsity window.
double q_min(Index dimension, Index support_size, Index target_sparsity, double kappa);

/// Sufficient number of directions: ceil(2s + 6d/s2) for RSS oracles, or
/// 2(s + 2) for smooth oracles, which requires s2 = d.
Index q_sufficient(Index dimension, Index s, Index support_size, bool smooth);

/// Brute-force sweep over integer k in [1, (d - k*)/2] for the first k with
/// k >= rho^2 k* / (1 - rho^2)^2. Real-valued q is accepted.
std::optional<Index> find_feasible_k(Index dimension, Index support_size, Index target_sparsity,
                                     double kappa, double num_directions);

}  // namespace szoht
