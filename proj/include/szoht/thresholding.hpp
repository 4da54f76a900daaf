#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "szoht/types.hpp"

namespace szoht {

template <typename Scalar>
struct ThresholdResult {
  Vector<Scalar> vector;  // at most k nonzeros
  SupportSet kept;        // the k surviving coordinates (may hold exact zeros)
};

/// Indices of the k largest |v_i|; equal magnitudes go to the lower index.
/// Average O(d) via nth_element. Entries must be finite.
template <typename Derived>
std::vector<Index> top_k_indices(const Eigen::MatrixBase<Derived>& v, Index k) {
  const Index d = v.size();
  if (k < 1 || k > d) {
    throw std::invalid_argument("hard_threshold: need 1 <= k <= d (k=" + std::to_string(k) +
                                ", d=" + std::to_string(d) + ")");
  }
  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  auto before = [&v](Index a, Index b) {
    const auto ma = std::abs(v[a]);
    const auto mb = std::abs(v[b]);
    return ma > mb || (ma == mb && a < b);
  };
  if (k < d) {
    std::nth_element(order.begin(), order.begin() + k, order.end(), before);
    order.resize(static_cast<std::size_t>(k));
  }
  std::sort(order.begin(), order.end());
  return order;
}

/// Best k-sparse l2 approximation of v: keeps the k largest magnitudes.
template <typename Derived>
ThresholdResult<typename Derived::Scalar> hard_threshold(const Eigen::MatrixBase<Derived>& v,
                                                         Index k) {
  using Scalar = typename Derived::Scalar;
  std::vector<Index> keep = top_k_indices(v, k);
  Vector<Scalar> out = Vector<Scalar>::Zero(v.size());
  for (Index i : keep) out[i] = v[i];
  return {std::move(out), SupportSet(v.size(), std::move(keep))};
}

/// Upper bound on ||b_k - a|| / ||b - a|| for any k_bar-sparse a, k_bar <= k:
///   sqrt(1 + (r + sqrt((4 + r) r)) / 2),  r = k_bar / k.
double expansivity_gamma(Index k, Index k_bar);

/// Sharper, dimension-aware version of the same bound:
///   sqrt(1 + (beta + sqrt((4 + beta) beta)) / 2),
///   beta = min(k_bar, d - k) / (k - k_bar + min(k_bar, d - k)).
double expansivity_gamma_sharp(Index dimension, Index k, Index k_bar);

}  // namespace szoht
