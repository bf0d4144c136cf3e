#include "sinrg/pointprocess.hpp"

#include <cmath>
#include <cstring>
#include <unordered_set>

#include "sinrg/error.hpp"

namespace sinrg {

MarkLaw::MarkLaw(double rate) : rate_(rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw UsageError("mark rate c must be positive");
}

double MarkLaw::cdf(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x); }

double MarkLaw::survival(double x) const { return x <= 0.0 ? 1.0 : std::exp(-rate_ * x); }

double MarkLaw::density(double x) const { return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x); }

double MarkLaw::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw UsageError("quantile level must lie in [0, 1]");
  if (p == 1.0) return INFINITY;
  return -std::log1p(-p) / rate_;
}

double MarkLaw::conditional_mean(double a, double b) const {
  if (!(b > a)) throw UsageError("conditional_mean needs a < b");
  if (std::isinf(b)) return a + 1.0 / rate_;
  // Shifted to a: X - a | X < b is Exp(c) truncated at w = b - a.
  const double w = b - a;
  const double cw = rate_ * w;
  return a + 1.0 / rate_ - w / std::expm1(cw);
}

MarkedConfiguration::MarkedConfiguration(DeviceDomain domain, double lambda, StreamSeed seed)
    : domain_(domain), lambda_(lambda), seed_(seed) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw UsageError("intensity lambda must be nonnegative");
}

void MarkedConfiguration::add_point(std::span<const double> position, double mark) {
  if (static_cast<int>(position.size()) != domain_.dim()) {
    throw UsageError("point dimension does not match the domain");
  }
  if (!(mark > 0.0)) throw UsageError("marks must be positive");
  positions_.insert(positions_.end(), position.begin(), position.end());
  marks_.push_back(mark);
}

std::uint64_t sample_count(double lambda, RandomStream& rng) {
  if (!(lambda >= 0.0)) throw UsageError("intensity lambda must be nonnegative");
  return rng.poisson(lambda);
}

namespace {

struct CoordinateHash {
  std::size_t operator()(const std::vector<double>& v) const {
    std::uint64_t h = 0;
    for (double x : v) {
      std::uint64_t bits;
      std::memcpy(&bits, &x, sizeof bits);
      h = mix64(h ^ bits);
    }
    return h;
  }
};

}  // namespace

MarkedConfiguration sample_configuration(const DeviceDomain& domain, double lambda, const MarkLaw& marks,
                                         const StreamSeed& seed) {
  MarkedConfiguration config(domain, lambda, seed);
  RandomStream count_rng(seed, Purpose::Count);
  const std::uint64_t n = sample_count(lambda, count_rng);
  RandomStream position_rng(seed, Purpose::Position);
  RandomStream mark_rng(seed, Purpose::Mark);
  std::unordered_set<std::vector<double>, CoordinateHash> seen;
  seen.reserve(n);
  std::vector<double> p(domain.dim());
  for (std::uint64_t i = 0; i < n; ++i) {
    do {
      domain.sample_point(position_rng, p.data());
    } while (!seen.insert(p).second);
    config.add_point(p, marks.sample(mark_rng));
  }
  return config;
}

}  // namespace sinrg
