#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "sinrg/pointprocess.hpp"
#include "sinrg/random.hpp"

using namespace sinrg;

TEST(Random, SameKeySameStream) {
  RandomStream a(StreamSeed{9, 4}, Purpose::Position, 2);
  RandomStream b(StreamSeed{9, 4}, Purpose::Position, 2);
  for (int k = 0; k < 1000; ++k) ASSERT_EQ(a.next(), b.next());
}

TEST(Random, DistinctReplicatesPurposesAndIndicesDiffer) {
  std::set<std::uint64_t> first;
  for (std::uint64_t r = 0; r < 50; ++r) {
    for (int p = 1; p <= 9; ++p) {
      for (std::uint64_t i = 0; i < 5; ++i) {
        RandomStream s(StreamSeed{1, r}, static_cast<Purpose>(p), i);
        first.insert(s.next());
      }
    }
  }
  EXPECT_EQ(first.size(), 50u * 9u * 5u);
}

TEST(Random, UniformIsOpenInterval) {
  RandomStream s(StreamSeed{2, 0}, Purpose::Auxiliary);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double u = s.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / n, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Random, ExponentialMean) {
  RandomStream s(StreamSeed{3, 0}, Purpose::Mark);
  const int n = 200000;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += s.exponential(2.0);
  EXPECT_NEAR(sum / n, 0.5, 3.0 * 0.5 / std::sqrt(n));
}

TEST(Random, PoissonZeroMean) {
  RandomStream s(StreamSeed{4, 0}, Purpose::Count);
  EXPECT_EQ(s.poisson(0.0), 0u);
}

class PoissonMoments : public ::testing::TestWithParam<double> {};

TEST_P(PoissonMoments, MeanAndVariance) {
  const double mean = GetParam();
  RandomStream s(StreamSeed{5, 0}, Purpose::Count);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = static_cast<double>(s.poisson(mean));
    sum += x;
    sq += x * x;
  }
  const double m = sum / n;
  const double var = sq / n - m * m;
  EXPECT_NEAR(m, mean, 3.0 * std::sqrt(mean / n));
  EXPECT_NEAR(var, mean, 0.05 * mean);
}

INSTANTIATE_TEST_SUITE_P(Means, PoissonMoments, ::testing::Values(0.5, 7.0, 29.5, 30.5, 100.0, 1e4));

TEST(Random, PoissonCountAtHundred) {
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int r = 0; r < n; ++r) {
    RandomStream s(StreamSeed{6, static_cast<std::uint64_t>(r)}, Purpose::Count);
    const double x = static_cast<double>(sample_count(100.0, s));
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 100.0, 3.0 * std::sqrt(100.0 / n));
  EXPECT_NEAR(sq / n - (sum / n) * (sum / n), 100.0, 5.0);
}
