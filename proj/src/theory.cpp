#include "szoht/theory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "szoht/thresholding.hpp"

namespace szoht {

void ProblemConstants::validate() const {
  if (!(strong_convexity > 0.0)) throw std::invalid_argument("ProblemConstants: need nu > 0");
  if (!(smoothness >= strong_convexity)) throw std::invalid_argument("ProblemConstants: need L >= nu");
  if (gradient_noise && !(*gradient_noise >= 0.0)) {
    throw std::invalid_argument("ProblemConstants: need sigma >= 0");
  }
  if (target_sparsity < 0) throw std::invalid_argument("ProblemConstants: need k* >= 0");
}

namespace {

// eps_F with a real-valued q; the sweep in find_feasible_k probes q = 0.99 q_min.
double eps_f(double d, double s, double s2, double q) {
  return 2.0 * d / (q * (s2 + 2.0)) * ((s - 1.0) * (s2 - 1.0) / (d - 1.0) + 3.0) + 2.0;
}

double rho_squared(double eps_F, double kappa, RhoVariant variant) {
  const double numerator = variant == RhoVariant::doubled ? 2.0 : 1.0;
  return 1.0 - numerator / ((4.0 * eps_F + 1.0) * kappa * kappa);
}

double window_lower(double rho2, double k_star) {
  const double gap = 1.0 - rho2;
  return rho2 * k_star / (gap * gap);
}

}  // namespace

TheoryReport derive_theory(Index dimension, Index sparsity, const EstimatorConfig& estimator,
                           const ProblemConstants& constants, RhoVariant variant) {
  constants.validate();
  estimator.validate(dimension);
  const Index k_star = constants.target_sparsity;
  if (sparsity < 1) throw std::invalid_argument("derive_theory: need k >= 1");
  if (k_star > sparsity) throw std::invalid_argument("derive_theory: need k* <= k");
  const Index s = 2 * sparsity + k_star;
  if (s > dimension) {
    throw std::invalid_argument("derive_theory: s = 2k + k* = " + std::to_string(s) +
                                " exceeds d = " + std::to_string(dimension));
  }

  const double L = constants.smoothness;
  const double nu = constants.strong_convexity;
  const double kappa = constants.condition_number();
  const double d = static_cast<double>(dimension);

  TheoryReport r;
  r.dimension = dimension;
  r.sparsity = sparsity;
  r.target_sparsity = k_star;
  r.restricted_sparsity = s;
  r.estimator = estimator;
  r.variant = variant;
  r.constants = estimator_constants(dimension, s, estimator.support_size,
                                    estimator.num_directions, L);
  const auto& c = r.constants;

  r.step_size = nu / ((4.0 * c.eps_F + 1.0) * L * L);
  const double rho2 = 1.0 - (variant == RhoVariant::doubled ? 2.0 : 1.0) * nu * nu /
                                ((4.0 * c.eps_F + 1.0) * L * L);
  r.rho = std::sqrt(rho2);
  r.gamma = expansivity_gamma(sparsity, k_star);
  r.contraction = r.rho * r.gamma;
  r.converges = r.contraction < 1.0;

  const double sd = static_cast<double>(s);
  r.a = r.step_size * (std::sqrt((4.0 * c.eps_F * sd + 2.0) +
                                 c.eps_Fc * static_cast<double>(dimension - sparsity)) +
                       std::sqrt(sd));
  r.b = std::sqrt(c.eps_mu) / L + r.step_size * std::sqrt(2.0 * c.eps_abs);

  const double ks = static_cast<double>(k_star);
  r.k_lower_theorem = window_lower(rho2, ks);
  r.k_lower_corollary = (86.0 * std::pow(kappa, 4) - 12.0 * kappa * kappa) * ks;
  r.k_order_scale = std::pow(kappa, 4) * ks;
  r.k_upper = (d - ks) / 2.0;
  const double kd = static_cast<double>(sparsity);
  r.in_window = r.k_lower_theorem <= kd && kd <= r.k_upper;

  r.q_min = k_star >= 1 && dimension >= 2
                ? q_min(dimension, estimator.support_size, k_star, kappa)
                : 0.0;
  r.q_sufficient = q_sufficient(dimension, s, estimator.support_size, false);
  if (estimator.support_size == dimension) {
    r.q_sufficient_smooth = q_sufficient(dimension, s, estimator.support_size, true);
  }

  if (r.converges) {
    const double amplification = r.gamma / (1.0 - r.contraction);
    if (constants.gradient_noise) r.noise_floor = amplification * r.a * *constants.gradient_noise;
    r.smoothing_floor = amplification * r.b * estimator.smoothing;
  }
  return r;
}

Contraction contraction_at(Index dimension, Index sparsity, Index target_sparsity,
                           Index support_size, Index num_directions, double kappa,
                           RhoVariant variant) {
  const Index s = 2 * sparsity + target_sparsity;
  const double eF = eps_f(static_cast<double>(dimension), static_cast<double>(s),
                          static_cast<double>(support_size), static_cast<double>(num_directions));
  const double rho2 = rho_squared(eF, kappa, variant);
  const double rho = std::sqrt(rho2);
  const double gamma = expansivity_gamma(sparsity, target_sparsity);
  return {rho, gamma, rho * gamma, window_lower(rho2, static_cast<double>(target_sparsity))};
}

double q_min(Index dimension, Index support_size, Index target_sparsity, double kappa) {
  if (dimension < 2) throw std::invalid_argument("q_min: need d >= 2");
  if (target_sparsity < 1) throw std::invalid_argument("q_min: need k* >= 1");
  if (!(kappa >= 1.0)) throw std::invalid_argument("q_min: need kappa >= 1");
  if (support_size < 1 || support_size > dimension) {
    throw std::invalid_argument("q_min: need 1 <= s2 <= d");
  }
  const double d = static_cast<double>(dimension);
  const double s2 = static_cast<double>(support_size);
  const double ks = static_cast<double>(target_sparsity);
  const double k2 = kappa * kappa;

  if (support_size == 1) return 8.0 * k2 * d / (std::sqrt(d / ks) + 1.0);

  const double lead = 16.0 * d * (s2 - 1.0) * ks * k2 / ((s2 + 2.0) * (d - 1.0));
  const double inner = 9.0 * k2 * (9.0 * k2 - 1.0) + 0.5 - 1.0 / (2.0 * ks) +
                       1.5 * (d - 1.0) / (ks * (s2 - 1.0));
  return lead * (18.0 * k2 - 1.0 + 2.0 * std::sqrt(inner));
}

Index q_sufficient(Index dimension, Index s, Index support_size, bool smooth) {
  if (s < 1 || s > dimension) throw std::invalid_argument("q_sufficient: need 1 <= s <= d");
  if (support_size < 1 || support_size > dimension) {
    throw std::invalid_argument("q_sufficient: need 1 <= s2 <= d");
  }
  if (smooth) {
    if (support_size != dimension) {
      throw std::invalid_argument("q_sufficient: the smooth rule requires s2 = d");
    }
    return 2 * (s + 2);
  }
  // ceil(2s + 6d/s2) == 2s + ceil(6d/s2) since 2s is an integer.
  return 2 * s + (6 * dimension + support_size - 1) / support_size;
}

std::optional<Index> find_feasible_k(Index dimension, Index support_size, Index target_sparsity,
                                     double kappa, double num_directions) {
  if (!(num_directions > 0.0)) return std::nullopt;
  const double d = static_cast<double>(dimension);
  const double s2 = static_cast<double>(support_size);
  const Index k_max = (dimension - target_sparsity) / 2;
  for (Index k = std::max<Index>(1, target_sparsity); k <= k_max; ++k) {
    const double s = static_cast<double>(2 * k + target_sparsity);
    const double rho2 = rho_squared(eps_f(d, s, s2, num_directions), kappa, RhoVariant::theorem);
    if (static_cast<double>(k) >= window_lower(rho2, static_cast<double>(target_sparsity))) {
      return k;
    }
  }
  return std::nullopt;
}

}  // namespace szoht
