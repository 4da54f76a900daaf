#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "szoht/rng.hpp"
#include "szoht/types.hpp"

namespace szoht {

/// Uniform size-s2 subset of [0, d), drawn by a partial Fisher-Yates shuffle.
/// Every index is included with probability s2 / d. A full support consumes
/// no randomness.
SupportSet sample_support(Index dimension, Index support_size, RngStream& rng);

namespace detail {

/// Writes a uniform unit vector of the support's subspace into out[0..|S|),
/// one entry per support index in increasing order.
template <typename Scalar>
void fill_unit_direction(Index count, RngStream& rng, Scalar* out) {
  double squared = 0.0;
  for (Index i = 0; i < count; ++i) {
    const double z = rng.normal();
    out[i] = static_cast<Scalar>(z);
    squared += z * z;
  }
  // The all-zero draw has probability zero; redraw rather than divide by it.
  if (!(squared > 0.0)) return fill_unit_direction(count, rng, out);
  const Scalar inv = static_cast<Scalar>(1.0 / std::sqrt(squared));
  for (Index i = 0; i < count; ++i) out[i] *= inv;
}

}  // namespace detail

/// Uniform unit vector on the sphere of the subspace spanned by `support`,
/// obtained by normalizing i.i.d. standard Gaussians. Zero off the support.
template <typename Scalar = double>
Vector<Scalar> sample_direction(const SupportSet& support, RngStream& rng) {
  if (support.is_empty()) throw std::invalid_argument("sample_direction: empty support");
  Vector<Scalar> values(support.size());
  detail::fill_unit_direction(support.size(), rng, values.data());
  Vector<Scalar> u = Vector<Scalar>::Zero(support.dimension());
  for (Index i = 0; i < support.size(); ++i) u[support[static_cast<std::size_t>(i)]] = values[i];
  return u;
}

/// First two raw moments of |S ∩ F| for |F| = s and S uniform of size s2:
/// the hypergeometric law H(d, s, s2).
struct OverlapMoments {
  double mean;
  double second;
};

inline OverlapMoments support_overlap_moments(Index dimension, Index s, Index support_size) {
  if (dimension < 2) throw std::invalid_argument("support_overlap_moments: need d >= 2");
  const double d = static_cast<double>(dimension);
  const double sd = static_cast<double>(s);
  const double s2 = static_cast<double>(support_size);
  const double mean = sd * s2 / d;
  return {mean, mean * ((sd - 1.0) * (s2 - 1.0) / (d - 1.0) + 1.0)};
}

/// E||u_F||^2 and E||u_F||^4 for u uniform on the unit sphere of R^d, |F| = s.
struct SphereMoments {
  double second;
  double fourth;
};

inline SphereMoments restricted_sphere_moments(Index dimension, Index s) {
  const double d = static_cast<double>(dimension);
  const double sd = static_cast<double>(s);
  return {sd / d, (sd + 2.0) * sd / ((d + 2.0) * d)};
}

}  // namespace szoht
