#include <stdexcept>
#include <string>

#include "szoht/estimator.hpp"

namespace szoht {

EstimatorConstants estimator_constants(Index dimension, Index s, Index support_size,
                                       Index num_directions, double smoothness) {
  if (dimension < 2) {
    throw std::invalid_argument("estimator_constants: need d >= 2 (formulas divide by d - 1)");
  }
  if (s < 1 || s > dimension) throw std::invalid_argument("estimator_constants: need 1 <= s <= d");
  if (support_size < 1 || support_size > dimension) {
    throw std::invalid_argument("estimator_constants: need 1 <= s2 <= d");
  }
  if (num_directions < 1) throw std::invalid_argument("estimator_constants: need q >= 1");
  if (!(smoothness > 0.0)) throw std::invalid_argument("estimator_constants: need L > 0");

  const double d = static_cast<double>(dimension);
  const double sd = static_cast<double>(s);
  const double s2 = static_cast<double>(support_size);
  const double q = static_cast<double>(num_directions);
  const double l2 = smoothness * smoothness;

  const double lead = 2.0 * d / (q * (s2 + 2.0));
  const double overlap = (sd - 1.0) * (s2 - 1.0) / (d - 1.0);

  EstimatorConstants c;
  c.eps_F = lead * (overlap + 3.0) + 2.0;
  c.eps_Fc = lead * (sd * (s2 - 1.0) / (d - 1.0));
  c.eps_mu = l2 * sd * d;
  c.eps_abs = (2.0 * d * l2 * sd * s2 / q) * (overlap + 1.0) + c.eps_mu;
  return c;
}

}  // namespace szoht
