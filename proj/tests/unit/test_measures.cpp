#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "sinrg/error.hpp"
#include "sinrg/measures.hpp"

using namespace sinrg;

namespace {

const DeviceDomain kBox = DeviceDomain::box(2, 1.0);

PartitionPtr grid(int n = 4, int m = 3) { return make_partition(kBox, n, m, MarkLaw(1.0)); }

std::vector<double> random_probability(std::mt19937_64& gen, std::size_t n, double zero_fraction = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& x : w) {
    x = u(gen) < zero_fraction ? 0.0 : u(gen);
    s += x;
  }
  if (s == 0.0) {
    w[0] = 1.0;
    s = 1.0;
  }
  for (auto& x : w) x /= s;
  return w;
}

}  // namespace

TEST(Partition, SingleBinHasUnitMass) {
  const BinnedMeasure r = reference_measure(make_partition(kBox, 1, 0, MarkLaw(1.0)));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], 1.0, 1e-15);
}

TEST(Partition, HalfCellsAreSymmetric) {
  const BinnedMeasure r = reference_measure(make_partition(DeviceDomain::box(1, 1.0), 2, 0, MarkLaw(1.0)));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 0.5, 1e-15);
  EXPECT_NEAR(r[1], 0.5, 1e-15);
}

TEST(Partition, ExponentialIntervalMasses) {
  const auto p = make_partition(kBox, 4, 1, MarkLaw(1.0), std::log(4.0));
  const BinnedMeasure r = reference_measure(p);
  ASSERT_EQ(r.size(), 32u);
  for (std::size_t c = 0; c < 16; ++c) {
    EXPECT_NEAR(r[p->bin_of(c, 0)], 0.75 / 16.0, 1e-15);
    EXPECT_NEAR(r[p->bin_of(c, 1)], 0.25 / 16.0, 1e-15);
  }
}

TEST(Partition, DiskCellsHaveEqualArea) {
  const auto p = make_partition(DeviceDomain::unit_area_disk(), 3, 2, MarkLaw(2.0));
  double total = 0.0;
  for (std::size_t c = 0; c < p->spatial_cell_count(); ++c) {
    EXPECT_NEAR(p->cell_fraction(c), 1.0 / 9.0, 1e-14);
    total += p->cell_fraction(c);
  }
  EXPECT_NEAR(total, 1.0, 1e-14);
  EXPECT_NEAR(reference_measure(p).total(), 1.0, 1e-14);
}

TEST(Partition, CellPointsClassifyBack) {
  for (const auto& p : {grid(), make_partition(DeviceDomain::disk(2.0), 4, 2, MarkLaw(1.0))}) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (std::size_t c = 0; c < p->spatial_cell_count(); ++c) {
      for (int k = 0; k < 20; ++k) {
        const double local[2] = {u(gen), u(gen)};
        double x[2];
        p->cell_point(c, local, x);
        EXPECT_EQ(p->spatial_cell(x), c);
      }
    }
  }
}

TEST(EmpiricalMeasure, EmptyConfiguration) {
  const MarkedConfiguration c(kBox, 10.0);
  EXPECT_EQ(empirical_mark_measure(c, grid()).total(), 0.0);
  EXPECT_EQ(empirical_pair_measure(c, SinrGraph{}, grid()).total(), 0.0);
}

TEST(EmpiricalMeasure, OnePointPerUnitIntensity) {
  const auto c = sample_configuration(kBox, 200.0, MarkLaw(1.0), StreamSeed{1, 0});
  MarkedConfiguration same(kBox, static_cast<double>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) same.add_point(std::vector<double>(c.position(i), c.position(i) + 2), c.mark(i));
  EXPECT_NEAR(empirical_mark_measure(same, grid()).total(), 1.0, 1e-14);
}

TEST(EmpiricalMeasure, MatchesBruteForceClassifier) {
  const auto c = sample_configuration(kBox, 300.0, MarkLaw(1.0), StreamSeed{2, 0});
  const auto p = grid();
  std::vector<double> mass(p->bin_count(), 0.0);
  const double cut = std::log(4.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int a = std::min(3, static_cast<int>((c.position(i)[0] + 0.5) * 4.0));
    const int b = std::min(3, static_cast<int>((c.position(i)[1] + 0.5) * 4.0));
    const double m = c.mark(i);
    int k = 3;
    for (int j = 0; j < 3; ++j) {
      if (m <= -std::log(1.0 - (j + 1) * 0.25)) {
        k = j;
        break;
      }
    }
    if (m > cut) k = 3;
    mass[static_cast<std::size_t>((b * 4 + a) * 4 + k)] += 1.0 / 300.0;
  }
  const BinnedMeasure l1 = empirical_mark_measure(c, p);
  for (std::size_t b = 0; b < mass.size(); ++b) EXPECT_NEAR(l1[b], mass[b], 1e-12);
}

TEST(PairMeasure, SingleEdge) {
  const auto c = sample_configuration(kBox, 50.0, MarkLaw(1.0), StreamSeed{3, 0});
  ASSERT_GE(c.size(), 2u);
  SinrGraph g;
  g.vertex_count = c.size();
  g.edges = {{0, 1}};
  const auto pm = empirical_pair_measure(c, g, grid());
  EXPECT_NEAR(pm.total(), 2.0 / (50.0 * 50.0), 1e-16);
}

TEST(PairMeasure, MatchesOrderedPairTally) {
  const auto c = sample_configuration(kBox, 40.0, MarkLaw(1.0), StreamSeed{4, 0});
  const auto p = grid();
  std::mt19937_64 gen(8);
  SinrGraph g;
  g.vertex_count = c.size();
  for (std::uint32_t i = 0; i < c.size(); ++i) {
    for (std::uint32_t j = i + 1; j < c.size(); ++j) {
      if (gen() % 3 == 0) g.edges.push_back({i, j});
    }
  }
  const auto pm = empirical_pair_measure(c, g, p);
  std::vector<double> tally(p->bin_count() * p->bin_count(), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (i == j) continue;
      const Edge e{static_cast<std::uint32_t>(std::min(i, j)), static_cast<std::uint32_t>(std::max(i, j))};
      if (!std::binary_search(g.edges.begin(), g.edges.end(), e)) continue;
      tally[p->bin(c.position(i), c.mark(i)) * p->bin_count() + p->bin(c.position(j), c.mark(j))] += 1.0 / 1600.0;
    }
  }
  for (std::size_t k = 0; k < tally.size(); ++k) EXPECT_NEAR(pm.masses()[k], tally[k], 1e-15);
}

TEST(RelativeEntropy, Cases) {
  const BinnedMeasure w("two", {0.5, 0.5}), r("two", {0.25, 0.75});
  EXPECT_NEAR(relative_entropy(w, r), 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0), 1e-15);
  EXPECT_NEAR(relative_entropy(w, r), 0.143841036225890, 1e-12);
  EXPECT_EQ(relative_entropy(r, r), 0.0);
  EXPECT_TRUE(std::isinf(relative_entropy(w, BinnedMeasure("two", {1.0, 0.0}))));
  EXPECT_THROW(relative_entropy(w, BinnedMeasure("other", {0.5, 0.5})), UsageError);
}

TEST(RelativeEntropy, GibbsInequality) {
  std::mt19937_64 gen(42);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + gen() % 30;
    const BinnedMeasure w("x", random_probability(gen, n, 0.2)), r("x", random_probability(gen, n));
    EXPECT_GE(relative_entropy(w, r), 0.0);
  }
}

TEST(Coarsen, Cases) {
  std::mt19937_64 gen(7);
  const BinnedMeasure m("x", random_probability(gen, 12));
  std::vector<std::size_t> identity(12);
  std::iota(identity.begin(), identity.end(), 0);
  EXPECT_EQ(coarsen(m, identity).masses(), m.masses());
  const auto one = coarsen(m, std::vector<std::size_t>(12, 0));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(one[0], m.total(), 1e-15);
  std::vector<std::size_t> groups(12);
  for (std::size_t k = 0; k < 12; ++k) groups[k] = k % 5;
  EXPECT_NEAR(coarsen(m, groups).total(), m.total(), 1e-15);
  EXPECT_THROW(coarsen(m, std::vector<std::size_t>(12, 1)), UsageError);
}

TEST(Coarsen, DataProcessingInequality) {
  std::mt19937_64 gen(99);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 4 + gen() % 20;
    const BinnedMeasure w("x", random_probability(gen, n)), r("x", random_probability(gen, n));
    std::vector<std::size_t> groups(n);
    const std::size_t g = 1 + gen() % (n - 1);
    for (std::size_t k = 0; k < n; ++k) groups[k] = k < g ? k : gen() % g;
    EXPECT_LE(relative_entropy(coarsen(w, groups), coarsen(r, groups)), relative_entropy(w, r) + 1e-12);
  }
}

TEST(SupDeviation, Cases) {
  const BinnedMeasure a("x", {0.1, 0.2, 0.3}), b("x", {0.1, 0.5, 0.3});
  EXPECT_EQ(sup_deviation(a, a), 0.0);
  EXPECT_NEAR(sup_deviation(a, b), 0.3, 1e-15);
  std::mt19937_64 gen(3);
  const auto u = random_probability(gen, 40), v = random_probability(gen, 40);
  double oracle = 0.0, l1 = 0.0;
  for (std::size_t k = 0; k < 40; ++k) {
    oracle = std::max(oracle, std::fabs(u[k] - v[k]));
    l1 += std::fabs(u[k] - v[k]);
  }
  EXPECT_EQ(sup_deviation(BinnedMeasure("y", u), BinnedMeasure("y", v)), oracle);
  EXPECT_NEAR(l1_distance(BinnedMeasure("y", u), BinnedMeasure("y", v)), l1, 1e-15);
}
