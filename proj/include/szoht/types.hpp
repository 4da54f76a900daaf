#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace szoht {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;

/// Realization of the stochastic noise xi (e.g. a finite-sum sample index).
using Noise = std::uint64_t;

/// Raised when an oracle or an iterate produces NaN/Inf. Carries the point
/// that triggered it.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, VectorXd point)
      : std::runtime_error(what), point_(std::move(point)) {}

  const VectorXd& point() const { return point_; }

 private:
  VectorXd point_;
};

/// Ordered set of distinct coordinates in [0, d).
class SupportSet {
 public:
  SupportSet() = default;

  /// Takes any list of distinct in-range indices; stores them sorted.
  SupportSet(Index dimension, std::vector<Index> indices);
  SupportSet(Index dimension, std::initializer_list<Index> indices)
      : SupportSet(dimension, std::vector<Index>(indices)) {}

  static SupportSet full(Index dimension);
  static SupportSet empty(Index dimension) { return SupportSet(dimension, std::vector<Index>{}); }

  Index dimension() const { return dimension_; }
  Index size() const { return static_cast<Index>(indices_.size()); }
  bool is_empty() const { return indices_.empty(); }
  bool contains(Index i) const;

  const std::vector<Index>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  Index operator[](std::size_t i) const { return indices_[i]; }

  /// Number of shared coordinates.
  Index intersection_size(const SupportSet& other) const;
  SupportSet complement() const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  struct Trusted {};
  SupportSet(Trusted, Index dimension, std::vector<Index> sorted)
      : dimension_(dimension), indices_(std::move(sorted)) {}

  Index dimension_ = 0;
  std::vector<Index> indices_;
};

/// Zeroes every coordinate of v outside the support (v_F in the usual notation).
template <typename Derived>
Vector<typename Derived::Scalar> restrict_to(const Eigen::MatrixBase<Derived>& v,
                                             const SupportSet& support) {
  Vector<typename Derived::Scalar> out = Vector<typename Derived::Scalar>::Zero(v.size());
  for (Index i : support) out[i] = v[i];
  return out;
}

/// Number of nonzero entries.
template <typename Derived>
Index l0_norm(const Eigen::MatrixBase<Derived>& v) {
  Index n = 0;
  for (Index i = 0; i < v.size(); ++i) n += (v[i] != 0);
  return n;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
  return v.allFinite();
}

}  // namespace szoht
