#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sinrg/geometry.hpp"
#include "sinrg/random.hpp"

namespace sinrg {

// Exponential mark law Q = Exp(c).
class MarkLaw {
 public:
  explicit MarkLaw(double rate = 1.0);
  double rate() const { return rate_; }
  double mean() const { return 1.0 / rate_; }
  double cdf(double x) const;
  // P(X > x)
  double survival(double x) const;
  double density(double x) const;
  double quantile(double p) const;
  double sample(RandomStream& rng) const { return rng.exponential(rate_); }
  // E[X | a <= X < b]; b may be +inf.
  double conditional_mean(double a, double b) const;
  bool operator==(const MarkLaw&) const = default;

 private:
  double rate_;
};

// Positions stored row-major (dim entries per point).
class MarkedConfiguration {
 public:
  MarkedConfiguration(DeviceDomain domain, double lambda, StreamSeed seed = {});

  const DeviceDomain& domain() const { return domain_; }
  double lambda() const { return lambda_; }
  const StreamSeed& seed() const { return seed_; }
  std::size_t size() const { return marks_.size(); }
  int dim() const { return domain_.dim(); }

  const double* position(std::size_t i) const { return positions_.data() + i * domain_.dim(); }
  double mark(std::size_t i) const { return marks_[i]; }
  const std::vector<double>& positions() const { return positions_; }
  const std::vector<double>& marks() const { return marks_; }

  void add_point(std::span<const double> position, double mark);
  double distance(std::size_t i, std::size_t j) const {
    return domain_.distance(position(i), position(j));
  }

  bool operator==(const MarkedConfiguration&) const = default;

 private:
  DeviceDomain domain_;
  double lambda_;
  StreamSeed seed_;
  std::vector<double> positions_;
  std::vector<double> marks_;
};

std::uint64_t sample_count(double lambda, RandomStream& rng);

// Count, positions and marks come from separate streams of the seed record,
// so the first n points agree across intensities for a fixed seed.
MarkedConfiguration sample_configuration(const DeviceDomain& domain, double lambda, const MarkLaw& marks,
                                         const StreamSeed& seed);

}  // namespace sinrg
