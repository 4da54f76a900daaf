#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "szoht/sampling.hpp"

using namespace szoht;

TEST(SampleSupport, FullSupportIsForced) {
  RngStream rng(1);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(sample_support(5, 5, rng), SupportSet::full(5));
  }
}

TEST(SampleSupport, CardinalityContract) {
  RngStream rng(2);
  for (int i = 0; i < 100; ++i) {
    const SupportSet s = sample_support(1000, 10, rng);
    ASSERT_EQ(s.size(), 10);
    for (std::size_t j = 0; j < 10; ++j) {
      ASSERT_LT(s[j], 1000);
      if (j > 0) ASSERT_LT(s[j - 1], s[j]);
    }
  }
}

TEST(SampleSupport, RejectsBadSizes) {
  RngStream rng(3);
  EXPECT_THROW(sample_support(5, 0, rng), std::invalid_argument);
  EXPECT_THROW(sample_support(5, 6, rng), std::invalid_argument);
}

// Inclusion is Bernoulli(s2/d); 0.25 +- 0.01 is > 7 binomial standard errors.
TEST(SampleSupport, InclusionFrequency) {
  RngStream rng(4);
  const int draws = 100000;
  std::vector<int> hits(20, 0);
  for (int i = 0; i < draws; ++i) {
    for (Index j : sample_support(20, 5, rng)) ++hits[j];
  }
  for (int h : hits) EXPECT_NEAR(static_cast<double>(h) / draws, 0.25, 0.01);
}

// All C(6,3) = 20 (resp. C(7,2) = 21) supports equally likely. 45.31 is the
// 0.999 chi-square quantile at 20 dof. Covers the dense and sparse swap paths.
TEST(SampleSupport, ExchangeableChiSquare) {
  for (Index d : {Index{6}, Index{7}}) {
    const Index s2 = d == 6 ? 3 : 2;  // 2 * s2 >= d and 2 * s2 < d
    RngStream rng(5 + d);
    std::map<std::vector<Index>, int> counts;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) ++counts[sample_support(d, s2, rng).indices()];
    const double cells = d == 6 ? 20.0 : 21.0;
    ASSERT_EQ(counts.size(), static_cast<std::size_t>(cells));
    double chi2 = 0.0;
    for (const auto& [_, c] : counts) chi2 += std::pow(c - draws / cells, 2) / (draws / cells);
    EXPECT_LT(chi2, 45.31) << "d=" << d;
  }
}

TEST(SampleSupport, DeterministicForSeed) {
  RngStream a(8), b(8);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sample_support(100, 7, a), sample_support(100, 7, b));
}

TEST(SampleDirection, SingletonSupportIsSignedBasisVector) {
  RngStream rng(9);
  const SupportSet s(5, {3});
  int plus = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const VectorXd u = sample_direction(s, rng);
    ASSERT_NEAR(std::abs(u[3]), 1.0, 1e-15);
    ASSERT_EQ(l0_norm(u), 1);
    plus += u[3] > 0;
  }
  EXPECT_NEAR(static_cast<double>(plus) / n, 0.5, 4.0 * 0.5 / std::sqrt(n));
}

TEST(SampleDirection, UnitNormAndConfined) {
  RngStream rng(10);
  for (int i = 0; i < 1000; ++i) {
    const SupportSet s = sample_support(30, 7, rng);
    const VectorXd u = sample_direction(s, rng);
    ASSERT_NEAR(u.norm(), 1.0, 1e-12);
    for (Index j = 0; j < 30; ++j) {
      if (!s.contains(j)) ASSERT_EQ(u[j], 0.0);
    }
  }
}

TEST(SampleDirection, EmptySupportThrows) {
  RngStream rng(11);
  EXPECT_THROW(sample_direction(SupportSet::empty(3), rng), std::invalid_argument);
}

TEST(SampleDirection, FloatScalar) {
  RngStream rng(12);
  const Vector<float> u = sample_direction<float>(SupportSet::full(8), rng);
  EXPECT_NEAR(u.norm(), 1.0f, 1e-6f);
}

// E[u u'] = I/d over the full sphere; a smaller Monte Carlo than the
// acceptance run, with a proportionally looser tolerance.
TEST(SampleDirection, IsotropicSecondMoment) {
  RngStream rng(13);
  const Index d = 6;
  const int n = 100000;
  MatrixXd acc = MatrixXd::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    const VectorXd u = sample_direction(SupportSet::full(d), rng);
    acc.noalias() += u * u.transpose();
  }
  acc /= n;
  EXPECT_LT((acc - MatrixXd::Identity(d, d) / d).cwiseAbs().maxCoeff(), 0.01);
}

TEST(Moments, SphereClosedForms) {
  const SphereMoments m = restricted_sphere_moments(10, 3);
  EXPECT_DOUBLE_EQ(m.second, 0.3);
  EXPECT_DOUBLE_EQ(m.fourth, 15.0 / 120.0);
  EXPECT_DOUBLE_EQ(restricted_sphere_moments(7, 7).second, 1.0);
  EXPECT_DOUBLE_EQ(restricted_sphere_moments(7, 7).fourth, 1.0);
}

// Exact enumeration of every s2-subset against the hypergeometric closed form.
TEST(Moments, HypergeometricByEnumeration) {
  for (Index d = 2; d <= 8; ++d) {
    for (Index s = 0; s <= d; ++s) {
      for (Index s2 = 1; s2 <= d; ++s2) {
        double count = 0, sum = 0, sum_sq = 0;
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
          if (__builtin_popcount(mask) != s2) continue;
          const int k = __builtin_popcount(mask & ((1u << s) - 1));
          count += 1;
          sum += k;
          sum_sq += k * k;
        }
        const OverlapMoments m = support_overlap_moments(d, s, s2);
        ASSERT_NEAR(m.mean, sum / count, 1e-12);
        ASSERT_NEAR(m.second, sum_sq / count, 1e-12);
      }
    }
  }
}

TEST(Moments, EmpiricalOverlapMatchesHypergeometric) {
  RngStream rng(14);
  const Index d = 40, s = 9, s2 = 12;
  const SupportSet F(d, {0, 3, 5, 8, 13, 21, 22, 30, 39});
  const int n = 100000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(sample_support(d, s2, rng).intersection_size(F));
    sum += k;
    sq += k * k;
  }
  const OverlapMoments m = support_overlap_moments(d, s, s2);
  const double var = m.second - m.mean * m.mean;
  EXPECT_NEAR(sum / n, m.mean, 4.0 * std::sqrt(var / n));
  EXPECT_NEAR(sq / n, m.second, 0.05 * m.second);
}
