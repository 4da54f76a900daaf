#include "szoht/thresholding.hpp"

namespace szoht {

namespace {

double gamma_from_ratio(double beta) {
  return std::sqrt(1.0 + (beta + std::sqrt((4.0 + beta) * beta)) / 2.0);
}

}  // namespace

double expansivity_gamma(Index k, Index k_bar) {
  if (k < 1) throw std::invalid_argument("expansivity_gamma: need k >= 1");
  if (k_bar < 0 || k_bar > k) {
    throw std::invalid_argument("expansivity_gamma: need 0 <= k_bar <= k (k=" + std::to_string(k) +
                                ", k_bar=" + std::to_string(k_bar) + ")");
  }
  return gamma_from_ratio(static_cast<double>(k_bar) / static_cast<double>(k));
}

double expansivity_gamma_sharp(Index dimension, Index k, Index k_bar) {
  if (k < 1 || k > dimension) throw std::invalid_argument("expansivity_gamma_sharp: need 1 <= k <= d");
  if (k_bar < 0 || k_bar > k) throw std::invalid_argument("expansivity_gamma_sharp: need 0 <= k_bar <= k");
  const Index m = std::min(k_bar, dimension - k);
  if (m == 0) return 1.0;
  const double beta = static_cast<double>(m) / static_cast<double>(k - k_bar + m);
  return gamma_from_ratio(beta);
}

}  // namespace szoht
