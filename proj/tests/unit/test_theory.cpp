#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <random>

#include "sinrg/error.hpp"
#include "sinrg/theory.hpp"

using namespace sinrg;

namespace {

const DeviceDomain kTorus = DeviceDomain::box(2, 1.0, Boundary::Periodic);

KernelParams torus_params(double lambda, const BaseBeta& beta0 = BaseBeta::constant(1.0)) {
  return make_kernel_params(kTorus, 1.0, MarkLaw(1.0), beta0, lambda);
}

PartitionPtr small_partition() { return make_partition(kTorus, 3, 2, MarkLaw(1.0)); }

double graph_probability_sum(const MarkedConfiguration& c, const PairExponent& x) {
  const std::size_t n = c.size();
  std::vector<Edge> pairs;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
  }
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (mask >> k & 1) edges.push_back(pairs[k]);
    }
    total += std::exp(conditional_graph_log_likelihood(n, edges, x));
  }
  return total;
}

std::vector<double> random_probability(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& v : w) s += (v = u(gen));
  for (auto& v : w) v /= s;
  return w;
}

}  // namespace

TEST(BinaryEntropy, Values) {
  EXPECT_NEAR(binary_entropy(0.5), std::log(2.0), 1e-15);
  EXPECT_NEAR(binary_entropy_from_exponent(std::log(2.0)), std::log(2.0), 1e-15);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy_from_exponent(0.0), 0.0);
  for (double p : {1e-12, 0.01, 0.3, 0.77, 0.999}) {
    EXPECT_NEAR(binary_entropy(p), -p * std::log(p) - (1 - p) * std::log1p(-p), 1e-14);
    EXPECT_NEAR(binary_entropy_from_exponent(-std::log(p)), binary_entropy(p), 1e-12);
  }
}

TEST(Entropy, ZeroThresholdGivesZero) {
  EXPECT_EQ(shannon_entropy_quadrature(torus_params(10.0, BaseBeta::constant(0.0))).value, 0.0);
}

TEST(Entropy, QuadratureAgreesWithMonteCarlo) {
  const KernelParams p = torus_params(100.0);
  const EntropyEstimate q = shannon_entropy_quadrature(p);
  const EntropyEstimate m = shannon_entropy_monte_carlo(p, 10'000'000, 3, 0);
  EXPECT_NEAR(q.value, 0.5457732619, 1e-8);
  EXPECT_LT(std::fabs(q.value - m.value) / q.value, 0.01);
  EXPECT_NEAR(q.value, m.value, 4.0 * m.error_estimate);
}

TEST(Entropy, OpenBoxWithMarkLevels) {
  const KernelParams p = make_kernel_params(DeviceDomain::box(2, 1.0), 1.0, MarkLaw(1.0), BaseBeta::parse("1|1:2"), 10);
  const EntropyEstimate q = shannon_entropy_quadrature(p);
  const EntropyEstimate m = shannon_entropy_monte_carlo(p, 2'000'000, 4, 0);
  EXPECT_NEAR(q.value, m.value, 4.0 * m.error_estimate);
}

TEST(Likelihood, NormalizesOverAllGraphs) {
  for (std::size_t n : {2u, 3u, 4u}) {
    MarkedConfiguration c(kTorus, 5.0);
    std::mt19937_64 gen(n);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (std::size_t k = 0; k < n; ++k) c.add_point(std::vector<double>{u(gen), u(gen)}, 0.3 + static_cast<double>(k));
    const ConnectionKernel kernel(torus_params(5.0, BaseBeta::parse("1|1:2")));
    const PairExponent x = [&](std::size_t i, std::size_t j) {
      return kernel.exponent(c.distance(i, j), c.mark(i), c.mark(j));
    };
    EXPECT_NEAR(graph_probability_sum(c, x), 1.0, 1e-12);
  }
}

TEST(Likelihood, EmptyConfiguration) {
  const MarkedConfiguration c(kTorus, 50.0);
  const ConnectionKernel kernel(torus_params(50.0));
  const LikelihoodTerms t = log_likelihood_rate(c, SinrGraph{}, kernel);
  EXPECT_EQ(t.edge, 0.0);
  EXPECT_EQ(t.non_edge, 0.0);
  EXPECT_EQ(t.conditional_rate, 0.0);
}

TEST(Likelihood, HeadlineIsTwiceTheConditionalRate) {
  const double lambda = 60.0;
  const auto c = sample_configuration(kTorus, lambda, MarkLaw(1.0), StreamSeed{5, 0});
  const ConnectionKernel kernel(torus_params(lambda));
  const SinrGraph g = sample_kernel_graph(c, kernel, StreamSeed{6, 0});
  const LikelihoodTerms t = log_likelihood_rate(c, g, kernel);
  EXPECT_EQ(t.clamp_count, 0u);
  EXPECT_NEAR(t.headline, t.edge + t.non_edge, 1e-14);
  EXPECT_NEAR(t.headline, 2.0 * t.conditional_rate, 1e-10 * t.headline);
  const PairExponent x = [&](std::size_t i, std::size_t j) {
    return kernel.exponent(c.distance(i, j), c.mark(i), c.mark(j));
  };
  EXPECT_NEAR(t.conditional_rate, -conditional_graph_log_likelihood(c.size(), g.edges, x) / (lambda * lambda),
              1e-12);
}

TEST(Rates, I1Cases) {
  const auto p = small_partition();
  const BinnedMeasure ref = reference_measure(p);
  EXPECT_NEAR(rate_I1(ref, ref).value, 0.0, 1e-15);
  std::vector<double> scaled = ref.masses();
  for (auto& v : scaled) v *= 0.9;
  EXPECT_FALSE(rate_I1(BinnedMeasure(p, scaled), ref).finite);
  std::mt19937_64 gen(2);
  const BinnedMeasure w(p, random_probability(gen, p->bin_count()));
  EXPECT_EQ(rate_I1(w, ref).value, relative_entropy(w, ref));
}

TEST(Rates, JointCases) {
  const auto p = small_partition();
  const KernelParams params = torus_params(100.0);
  const BinnedMeasure ref = reference_measure(p);
  const BinnedPairMeasure on = product_reference(ref, params);
  const RateValue zero = rate_joint(ref, on, params, kMassTolerance);
  ASSERT_TRUE(zero.finite);
  EXPECT_NEAR(zero.value, 0.0, 1e-15);
  std::vector<double> bumped = on.masses();
  bumped[5] += 10 * kMassTolerance;
  bumped[5 * p->bin_count()] += 10 * kMassTolerance;
  EXPECT_FALSE(rate_joint(ref, BinnedPairMeasure(p, bumped), params, kMassTolerance).finite);
  std::mt19937_64 gen(3);
  const BinnedMeasure w(p, random_probability(gen, p->bin_count()));
  const RateValue r = rate_joint(w, product_reference(w, params), params, kMassTolerance);
  ASSERT_TRUE(r.finite);
  EXPECT_NEAR(r.value, relative_entropy(w, ref), 1e-15);
}

TEST(ProductReference, Properties) {
  const auto p = small_partition();
  std::mt19937_64 gen(4);
  const BinnedMeasure w(p, random_probability(gen, p->bin_count()));
  const BinnedPairMeasure plain = product_reference(w, torus_params(10.0, BaseBeta::constant(0.0)));
  for (std::size_t a = 0; a < w.size(); ++a) {
    for (std::size_t b = 0; b < w.size(); ++b) EXPECT_NEAR(plain.at(a, b), w[a] * w[b], 1e-16);
  }
  const BinnedPairMeasure pr = product_reference(w, torus_params(10.0));
  EXPECT_LE(pr.total(), w.total() * w.total());
  for (std::size_t a = 0; a < w.size(); ++a) {
    for (std::size_t b = 0; b < w.size(); ++b) EXPECT_EQ(pr.at(a, b), pr.at(b, a));
  }
}

TEST(ProductReference, RefinementConverges) {
  const auto p = make_partition(kTorus, 4, 3, MarkLaw(1.0));
  const BinnedMeasure ref = reference_measure(p);
  const KernelParams params = torus_params(100.0);
  const double center = product_reference(ref, params, 1).total();
  const double four = product_reference(ref, params, 4).total();
  const double eight = product_reference(ref, params, 8).total();
  EXPECT_LT(std::fabs(center - four) / four, 0.02);
  EXPECT_LT(std::fabs(four - eight), 0.25 * std::fabs(center - four));
}

TEST(SpectralPotential, Properties) {
  const auto p = small_partition();
  const KernelParams params = torus_params(100.0);
  std::mt19937_64 gen(5);
  const BinnedMeasure w(p, random_probability(gen, p->bin_count()));
  const BinnedPairMeasure ref = product_reference(w, params);
  const std::size_t n = p->bin_count();
  PairFunction zero{n, std::vector<double>(n * n, 0.0)}, one{n, std::vector<double>(n * n, 1.0)};
  EXPECT_EQ(spectral_potential(zero, w, params), 0.0);
  EXPECT_NEAR(spectral_potential(one, w, params), ref.total(), 1e-15);
  std::normal_distribution<double> z;
  auto symmetric = [&] {
    PairFunction g{n, std::vector<double>(n * n)};
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) g.values[a * n + b] = g.values[b * n + a] = z(gen);
    }
    return g;
  };
  for (int t = 0; t < 20; ++t) {
    const PairFunction g1 = symmetric(), g2 = symmetric();
    const double s = z(gen);
    PairFunction mix{n, std::vector<double>(n * n)}, shifted = g1;
    for (std::size_t k = 0; k < n * n; ++k) {
      mix.values[k] = s * g1.values[k] + g2.values[k];
      shifted.values[k] += 0.7;
    }
    EXPECT_NEAR(spectral_potential(mix, ref), s * spectral_potential(g1, ref) + spectral_potential(g2, ref), 1e-12);
    EXPECT_NEAR(spectral_potential(shifted, ref), spectral_potential(g1, ref) + 0.7 * ref.total(), 1e-12);
  }
  PairFunction asym = zero;
  asym.values[1] = 1.0;
  EXPECT_THROW(spectral_potential(asym, ref), UsageError);
}

TEST(KullbackAction, ClosedForm) {
  const auto p = small_partition();
  const KernelParams params = torus_params(100.0);
  std::mt19937_64 gen(6);
  const BinnedMeasure w(p, random_probability(gen, p->bin_count()));
  const BinnedPairMeasure ref = product_reference(w, params);
  for (double m : {0.5, 1.0, 7.0}) EXPECT_EQ(kullback_action(w, ref, m, params).value, 0.0);
  std::vector<double> moved = ref.masses();
  const std::size_t n = p->bin_count();
  moved[2 * n + 4] += 0.01;
  moved[4 * n + 2] += 0.01;
  const double removed = 0.5 * moved[0];
  moved[0] -= removed;
  const BinnedPairMeasure pi(p, moved);
  const double t = l1_distance(pi, ref);
  EXPECT_NEAR(t, 0.02 + removed, 1e-12);
  for (double m : {0.5, 1.0, 7.0}) {
    const KullbackAction k = kullback_action(w, pi, m, params);
    EXPECT_NEAR(k.value, m * t, 1e-12);
    double achieved = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) achieved += k.optimizer.values[i] * (moved[i] - ref.masses()[i]);
    EXPECT_NEAR(achieved, k.value, 1e-12);
    std::uniform_real_distribution<double> u(-m, m);
    for (int s = 0; s < 50; ++s) {
      double v = 0.0;
      for (std::size_t i = 0; i < n * n; ++i) v += u(gen) * (moved[i] - ref.masses()[i]);
      EXPECT_LE(v, k.value + 1e-12);
    }
  }
}

TEST(KernelGraph, WorkerCountInvariantAndConsistentWithPairMeasure) {
  const double lambda = 400.0;
  const auto c = sample_configuration(kTorus, lambda, MarkLaw(1.0), StreamSeed{7, 0});
  const ConnectionKernel kernel(torus_params(lambda));
  const auto p = make_partition(kTorus, 4, 3, MarkLaw(1.0));
  const SinrGraph g1 = sample_kernel_graph(c, kernel, StreamSeed{8, 0}, 1);
  EXPECT_EQ(sample_kernel_graph(c, kernel, StreamSeed{8, 0}, 3), g1);
  const BinnedPairMeasure direct = sample_kernel_pair_measure(c, kernel, p, StreamSeed{8, 0}, 2);
  EXPECT_EQ(direct.masses(), empirical_pair_measure(c, g1, p).masses());
}

TEST(KernelGraph, EdgeFrequencyMatchesProbability) {
  const double lambda = 100.0;
  const ConnectionKernel kernel(torus_params(lambda));
  MarkedConfiguration c(kTorus, lambda);
  c.add_point(std::vector<double>{0.0, 0.0}, 1.0);
  c.add_point(std::vector<double>{0.2, 0.0}, 1.0);
  const double p = kernel.probability(0.2, 1.0, 1.0);
  const int n = 20000;
  int hits = 0;
  for (int r = 0; r < n; ++r) hits += static_cast<int>(sample_kernel_graph(c, kernel, StreamSeed{9, static_cast<std::uint64_t>(r)}).edges.size());
  EXPECT_NEAR(hits / static_cast<double>(n), p, 3.0 * std::sqrt(p * (1 - p) / n));
}
