#include <algorithm>
#include <numeric>
#include <string>

#include "szoht/types.hpp"

namespace szoht {

SupportSet::SupportSet(Index dimension, std::vector<Index> indices) : dimension_(dimension) {
  if (dimension < 0) throw std::invalid_argument("SupportSet: negative dimension");
  std::sort(indices.begin(), indices.end());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= dimension) {
      throw std::invalid_argument("SupportSet: index " + std::to_string(indices[i]) +
                                  " outside [0, " + std::to_string(dimension) + ")");
    }
    if (i > 0 && indices[i] == indices[i - 1]) {
      throw std::invalid_argument("SupportSet: duplicate index " + std::to_string(indices[i]));
    }
  }
  indices_ = std::move(indices);
}

SupportSet SupportSet::full(Index dimension) {
  std::vector<Index> all(static_cast<std::size_t>(dimension));
  std::iota(all.begin(), all.end(), Index{0});
  return SupportSet(Trusted{}, dimension, std::move(all));
}

bool SupportSet::contains(Index i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

Index SupportSet::intersection_size(const SupportSet& other) const {
  Index n = 0;
  auto a = indices_.begin();
  auto b = other.indices_.begin();
  while (a != indices_.end() && b != other.indices_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++n;
      ++a;
      ++b;
    }
  }
  return n;
}

SupportSet SupportSet::complement() const {
  std::vector<Index> rest;
  rest.reserve(static_cast<std::size_t>(dimension_ - size()));
  auto it = indices_.begin();
  for (Index i = 0; i < dimension_; ++i) {
    if (it != indices_.end() && *it == i) {
      ++it;
    } else {
      rest.push_back(i);
    }
  }
  return SupportSet(Trusted{}, dimension_, std::move(rest));
}

}  // namespace szoht
