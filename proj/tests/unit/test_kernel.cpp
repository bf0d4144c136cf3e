#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sinrg/error.hpp"
#include "sinrg/kernel.hpp"
#include "sinrg/random.hpp"

using namespace sinrg;

namespace {

KernelParams disk_params(double lambda, const BaseBeta& beta0 = BaseBeta::constant(1.0), double alpha = 1.0) {
  return make_kernel_params(DeviceDomain::unit_area_disk(), alpha, MarkLaw(1.0), beta0, lambda);
}

const double kOrigin[2] = {0.0, 0.0};

}  // namespace

TEST(RLambda, ZeroThresholdAndCoincidentPoints) {
  const KernelParams p = disk_params(100.0, BaseBeta::constant(0.0));
  const double y[2] = {0.3, 0.0};
  EXPECT_EQ(r_lambda(kOrigin, 1.0, y, 1.0, p), 0.0);
  EXPECT_EQ(p_lambda(kOrigin, 1.0, y, 1.0, p), 1.0);
  const KernelParams q = disk_params(100.0);
  EXPECT_EQ(r_lambda(kOrigin, 1.0, kOrigin, 1.0, q), 0.0);
}

TEST(RLambda, RequiresAlphaBelowDimension) {
  EXPECT_THROW(disk_params(100.0, BaseBeta::constant(1.0), 2.5), DivergenceError);
}

TEST(RLambda, MatchesMonteCarloIntegration) {
  const BaseBeta beta0 = BaseBeta::parse("1|1:3");
  const KernelParams p = disk_params(50.0, beta0, 1.4);
  const double y[2] = {0.2, -0.15};
  const double sx = 0.4, sy = 2.0;
  const double w = std::pow(std::hypot(y[0], y[1]), 1.4);
  const double ux = 1.0 / (p.tau_gamma(sx) * w), uy = 1.0 / (p.tau_gamma(sy) * w);
  RandomStream rng(StreamSeed{17, 0}, Purpose::Auxiliary);
  const int n = 1000000;
  double sum = 0.0, sq = 0.0;
  double z[2];
  for (int k = 0; k < n; ++k) {
    p.domain.sample_point(rng, z);
    const double s = std::pow(std::hypot(z[0], z[1]), 1.4);
    const double f = 1.0 / (1.0 + ux * s) + 1.0 / (1.0 + uy * s);
    sum += f;
    sq += f * f;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sq / n - mean * mean) / n);
  EXPECT_NEAR(r_lambda(kOrigin, sx, y, sy, p), mean, 3.0 * se);
}

TEST(PLambda, DecreasesToZeroInLambdaAtFixedR) {
  const KernelParams p = disk_params(100.0);
  const double y[2] = {0.3, 0.0};
  const double r = r_lambda(kOrigin, 1.0, y, 1.0, p);
  double last = 1.0;
  for (double lambda : {1.0, 10.0, 100.0, 1e3, 1e4}) {
    const double v = std::exp(-lambda * r);
    EXPECT_LT(v, last);
    last = v;
  }
  EXPECT_LT(last, 1e-6);
  const double pl = p_lambda(kOrigin, 1.0, y, 1.0, p);
  EXPECT_GT(pl, 0.0);
  EXPECT_LE(pl, 1.0);
}

TEST(RLimit, ValuesAndSymmetry) {
  EXPECT_EQ(r_limit(1.0, 0.0, 2.0 * std::numbers::pi, 1.0), 0.0);
  EXPECT_NEAR(r_limit(1.0, 1.0, 2.0 * std::numbers::pi, 1.0), 2.0 * std::numbers::pi, 1e-15);
  const KernelParams p = disk_params(100.0, BaseBeta::parse("1|1:2"));
  const double y[2] = {0.25, 0.1};
  EXPECT_EQ(r_limit(kOrigin, 0.5, y, 1.5, p), r_limit(y, 1.5, kOrigin, 0.5, p));
}

TEST(RLambda, ScaledValueRisesTowardLimit) {
  const BaseBeta beta0 = BaseBeta::parse("1|1:2");
  const double y[2] = {0.3, 0.0};
  double last_gap = INFINITY, last_scaled = 0.0;
  for (double lambda : {1e2, 1e3, 1e4}) {
    const KernelParams p = disk_params(lambda, beta0);
    const double scaled = lambda * r_lambda(kOrigin, 0.5, y, 1.5, p);
    const double limit = r_limit(kOrigin, 0.5, y, 1.5, p);
    const double gap = std::fabs(scaled - limit) / limit;
    EXPECT_GE(scaled, last_scaled);
    EXPECT_LE(scaled, limit);
    EXPECT_LT(gap, last_gap);
    last_gap = gap;
    last_scaled = scaled;
  }
  EXPECT_LT(last_gap, 0.05);
}

TEST(KernelTable, MatchesDirectQuadrature) {
  for (const DeviceDomain& d : {DeviceDomain::unit_area_disk(), DeviceDomain::box(2, 1.0, Boundary::Periodic)}) {
    const auto table = radial_kernel_table(d, 1.0);
    for (double t = -20.0; t <= 40.0; t += 0.37) {
      const double u = std::exp(t);
      const double direct = radial_kernel_integral(d, 1.0, u);
      EXPECT_NEAR((*table)(u) / direct, 1.0, 1e-5) << "u=" << u;
    }
  }
}

TEST(ConnectionKernel, MatchesDirectProbability) {
  const BaseBeta beta0 = BaseBeta::parse("0.5|0.7:1.5|2:4");
  const KernelParams p =
      make_kernel_params(DeviceDomain::box(2, 1.0, Boundary::Periodic), 1.0, MarkLaw(1.0), beta0, 300.0);
  const ConnectionKernel k(p);
  for (double dist : {1e-3, 0.01, 0.05, 0.2, 0.45, 0.7}) {
    for (double a : {0.3, 1.0, 3.0}) {
      for (double b : {0.3, 1.0, 3.0}) {
        const double y[2] = {dist / std::sqrt(2.0), dist / std::sqrt(2.0)};
        const double direct = p_lambda(kOrigin, a, y, b, p);
        EXPECT_NEAR(k.probability(dist, a, b), direct, 1e-6 * std::max(direct, 1e-3));
      }
    }
  }
}
