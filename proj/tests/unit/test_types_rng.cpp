#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "szoht/rng.hpp"
#include "szoht/types.hpp"

using namespace szoht;

TEST(SupportSet, StoresSortedDistinctIndices) {
  const SupportSet s(10, {7, 2, 5});
  EXPECT_EQ(s.indices(), (std::vector<Index>{2, 5, 7}));
  EXPECT_EQ(s.size(), 3);
  EXPECT_TRUE(s.contains(5));
  EXPECT_FALSE(s.contains(4));
}

TEST(SupportSet, RejectsDuplicatesAndOutOfRange) {
  EXPECT_THROW(SupportSet(5, {1, 1}), std::invalid_argument);
  EXPECT_THROW(SupportSet(5, {5}), std::invalid_argument);
  EXPECT_THROW(SupportSet(5, {-1}), std::invalid_argument);
}

TEST(SupportSet, ComplementAndIntersection) {
  const SupportSet s(6, {0, 3, 4});
  EXPECT_EQ(s.complement().indices(), (std::vector<Index>{1, 2, 5}));
  EXPECT_EQ(s.intersection_size(SupportSet(6, {3, 4, 5})), 2);
  EXPECT_EQ(SupportSet::full(4).size(), 4);
  EXPECT_TRUE(SupportSet::empty(4).is_empty());
  EXPECT_EQ(SupportSet::full(4).complement(), SupportSet::empty(4));
}

TEST(VectorHelpers, RestrictAndCount) {
  const VectorXd v = (VectorXd(4) << 1.0, -2.0, 0.0, 3.0).finished();
  const VectorXd r = restrict_to(v, SupportSet(4, {1, 2}));
  EXPECT_EQ(r, (VectorXd(4) << 0.0, -2.0, 0.0, 0.0).finished());
  EXPECT_EQ(l0_norm(v), 3);
  EXPECT_TRUE(all_finite(v));
  VectorXd bad = v;
  bad[2] = std::nan("");
  EXPECT_FALSE(all_finite(bad));
}

// Expected values from tests/oracles/rng_reference.py.
TEST(RngStream, MatchesReferenceOutputs) {
  RngStream rng(42);
  EXPECT_EQ(rng.next_u64(), 0x735743764450b1b3ULL);
  EXPECT_EQ(rng.next_u64(), 0x8ca10b1dbe91ee23ULL);
  EXPECT_EQ(rng.next_u64(), 0xe72aac3121269f60ULL);
  RngStream child = RngStream(42).split(7);
  EXPECT_EQ(child.next_u64(), 0x58951da209bcff52ULL);
  EXPECT_EQ(child.next_u64(), 0xa3d0944404983a35ULL);
  EXPECT_DOUBLE_EQ(RngStream(42).uniform(), 0.4505502856957857);
}

TEST(RngStream, SplitLeavesParentUntouched) {
  RngStream a(3);
  const RngStream b(3);
  (void)a.split(0);
  (void)a.split(1);
  EXPECT_EQ(a.counter(), 0u);
  EXPECT_EQ(a.key(), b.key());
  EXPECT_NE(a.split(0).key(), a.split(1).key());
}

TEST(RngStream, ForkConsumesOneDraw) {
  RngStream a(9);
  RngStream f1 = a.fork();
  EXPECT_EQ(a.counter(), 1u);
  RngStream f2 = a.fork();
  EXPECT_NE(f1.key(), f2.key());
}

TEST(RngStream, IdenticalSeedsGiveIdenticalNormals) {
  RngStream a(11), b(11);
  for (int i = 0; i < 1001; ++i) ASSERT_EQ(a.normal(), b.normal());
}

TEST(RngStream, UniformAndBelowRanges) {
  RngStream rng(5);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const auto j = rng.below(7);
    ASSERT_LT(j, 7u);
    ++counts[j];
  }
  // Chi-square with 6 degrees of freedom; 22.46 is the 0.999 quantile.
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
  EXPECT_LT(chi2, 22.46);
}

TEST(RngStream, NormalMoments) {
  RngStream rng(17);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(sq / n, 1.0, 4.0 * std::sqrt(2.0 / n));
}
