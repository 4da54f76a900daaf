#pragma once

#include <functional>
#include <optional>
#include <string>

#include "szoht/rng.hpp"
#include "szoht/theory.hpp"
#include "szoht/types.hpp"

namespace szoht {

/// Black-box objective f(x) = E_xi f(x, xi) with optional metadata.
///
/// `value` must be deterministic given (x, xi) and safe to call concurrently.
/// `gradient` exists for test oracles only; solvers never call it.
template <typename Scalar>
struct Problem {
  using ValueFn = std::function<Scalar(const Vector<Scalar>&, Noise)>;
  using NoiseFn = std::function<Noise(RngStream&)>;
  using GradientFn = std::function<Vector<Scalar>(const Vector<Scalar>&)>;

  std::string name;
  Index dimension = 0;
  ValueFn value;
  NoiseFn sample_noise;  // empty: xi is degenerate and always 0
  GradientFn gradient;   // empty when no closed form is known
  std::optional<Vector<Scalar>> optimum;        // constrained minimizer x*
  std::optional<ProblemConstants> constants;    // when analytically known
  std::optional<Vector<Scalar>> suggested_start;

  /// Noise-free objective used for monitoring; not counted as a query.
  Scalar objective(const Vector<Scalar>& x) const { return value(x, Noise{0}); }

  Noise draw_noise(RngStream& rng) const { return sample_noise ? sample_noise(rng) : Noise{0}; }
};

}  // namespace szoht
