#include "szoht/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace szoht {

SupportSet sample_support(Index dimension, Index support_size, RngStream& rng) {
  if (support_size < 1 || support_size > dimension) {
    throw std::invalid_argument("sample_support: need 1 <= s2 <= d, got s2=" +
                                std::to_string(support_size) + ", d=" + std::to_string(dimension));
  }
  if (support_size == dimension) return SupportSet::full(dimension);

  std::vector<Index> chosen(static_cast<std::size_t>(support_size));
  // Both branches run the same swap sequence and return the same subset for
  // a given stream; the dense one just avoids hashing when s2 is large.
  if (2 * support_size >= dimension) {
    std::vector<Index> pool(static_cast<std::size_t>(dimension));
    std::iota(pool.begin(), pool.end(), Index{0});
    for (Index i = 0; i < support_size; ++i) {
      const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(dimension - i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
      chosen[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(i)];
    }
  } else {
    std::unordered_map<Index, Index> swapped;
    swapped.reserve(static_cast<std::size_t>(2 * support_size));
    auto at = [&](Index i) {
      auto it = swapped.find(i);
      return it == swapped.end() ? i : it->second;
    };
    for (Index i = 0; i < support_size; ++i) {
      const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(dimension - i)));
      const Index vi = at(i);
      const Index vj = at(j);
      swapped[j] = vi;
      chosen[static_cast<std::size_t>(i)] = vj;
    }
  }
  return SupportSet(dimension, std::move(chosen));
}

}  // namespace szoht
