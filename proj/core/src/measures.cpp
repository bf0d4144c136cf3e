#include "sinrg/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sinrg/error.hpp"
#include "sinrg/format.hpp"

namespace sinrg {

namespace {

void require_same_layout(const std::string& a, const std::string& b) {
  if (a != b) throw UsageError("measures live on different partitions: " + a + " vs " + b);
}

void require_masses(const std::vector<double>& masses) {
  for (double m : masses) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw UsageError("measure masses must be finite and nonnegative");
  }
}

double ordered_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

ProductPartition::ProductPartition(DeviceDomain domain, int divisions, int mark_intervals, MarkLaw law,
                                   double mark_cutoff)
    : domain_(domain), divisions_(divisions), law_(law), cutoff_(mark_cutoff) {
  if (divisions < 1) throw UsageError("spatial divisions must be at least 1");
  if (mark_intervals < 0) throw UsageError("mark interval count must be nonnegative");
  if (mark_intervals > 0 && (!(mark_cutoff > 0.0) || !std::isfinite(mark_cutoff))) {
    throw UsageError("mark cutoff must be positive and finite");
  }
  if (domain.shape() == Shape::Disk) {
    cells_ = static_cast<std::size_t>(divisions) * divisions;
  } else {
    cells_ = 1;
    for (int k = 0; k < domain.dim(); ++k) cells_ *= static_cast<std::size_t>(divisions);
  }
  const double top = law.cdf(mark_cutoff);
  for (int k = 1; k <= mark_intervals; ++k) {
    edges_.push_back(k == mark_intervals ? mark_cutoff : law.quantile(top * k / mark_intervals));
  }
  edges_.push_back(INFINITY);
}

ProductPartition::ProductPartition(DeviceDomain domain, int divisions, int mark_intervals, MarkLaw law)
    : ProductPartition(domain, divisions, mark_intervals, law,
                       std::log(static_cast<double>(mark_intervals) + 1.0) / law.rate()) {}

std::size_t ProductPartition::spatial_cell(const double* p) const {
  const std::size_t n = static_cast<std::size_t>(divisions_);
  auto clamp_index = [n](double t) {
    const double f = std::floor(t * static_cast<double>(n));
    if (f < 0.0) return std::size_t{0};
    return std::min(static_cast<std::size_t>(f), n - 1);
  };
  if (domain_.shape() == Shape::Disk) {
    const double r2 = (p[0] * p[0] + p[1] * p[1]) / (domain_.size() * domain_.size());
    double theta = std::atan2(p[1], p[0]);
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;
    return clamp_index(r2) * n + clamp_index(theta / (2.0 * std::numbers::pi));
  }
  std::size_t cell = 0;
  std::size_t stride = 1;
  for (int k = 0; k < domain_.dim(); ++k) {
    cell += clamp_index(p[k] / domain_.size() + 0.5) * stride;
    stride *= n;
  }
  return cell;
}

std::size_t ProductPartition::mark_interval(double mark) const {
  return static_cast<std::size_t>(std::lower_bound(edges_.begin(), edges_.end(), mark) - edges_.begin());
}

double ProductPartition::cell_fraction(std::size_t) const { return 1.0 / static_cast<double>(cells_); }

void ProductPartition::cell_point(std::size_t cell, const double* u, double* out) const {
  const std::size_t n = static_cast<std::size_t>(divisions_);
  if (domain_.shape() == Shape::Disk) {
    const double ring = static_cast<double>(cell / n);
    const double sector = static_cast<double>(cell % n);
    const double r = domain_.size() * std::sqrt((ring + u[0]) / static_cast<double>(n));
    const double theta = 2.0 * std::numbers::pi * (sector + u[1]) / static_cast<double>(n);
    out[0] = r * std::cos(theta);
    out[1] = r * std::sin(theta);
    return;
  }
  const double h = domain_.size() / static_cast<double>(n);
  std::size_t rest = cell;
  for (int k = 0; k < domain_.dim(); ++k) {
    const double idx = static_cast<double>(rest % n);
    rest /= n;
    out[k] = -0.5 * domain_.size() + h * (idx + u[k]);
  }
}

void ProductPartition::cell_center(std::size_t cell, double* out) const {
  const std::vector<double> half(static_cast<std::size_t>(domain_.dim()), 0.5);
  cell_point(cell, half.data(), out);
}

double ProductPartition::mark_probability(std::size_t k) const {
  return law_.survival(mark_lower(k)) - law_.survival(mark_upper(k));
}

double ProductPartition::mark_representative(std::size_t k) const {
  return law_.conditional_mean(mark_lower(k), mark_upper(k));
}

std::vector<double> ProductPartition::mark_representatives(std::size_t k, int parts) const {
  if (parts < 1) throw UsageError("mark refinement must be at least 1");
  const double p0 = law_.cdf(mark_lower(k));
  const double p1 = law_.cdf(mark_upper(k));
  std::vector<double> reps;
  reps.reserve(parts);
  double lower = mark_lower(k);
  for (int i = 1; i <= parts; ++i) {
    const double upper = i == parts ? mark_upper(k) : law_.quantile(p0 + (p1 - p0) * i / parts);
    reps.push_back(law_.conditional_mean(lower, upper));
    lower = upper;
  }
  return reps;
}

std::string ProductPartition::signature() const {
  return "partition[" + domain_.signature() + ",n=" + std::to_string(divisions_) +
         ",m=" + std::to_string(edges_.size() - 1) + ",T=" + format_double(cutoff_) +
         ",c=" + format_double(law_.rate()) + "]";
}

PartitionPtr make_partition(const DeviceDomain& domain, int divisions, int mark_intervals, const MarkLaw& law) {
  return std::make_shared<const ProductPartition>(domain, divisions, mark_intervals, law);
}

PartitionPtr make_partition(const DeviceDomain& domain, int divisions, int mark_intervals, const MarkLaw& law,
                            double mark_cutoff) {
  return std::make_shared<const ProductPartition>(domain, divisions, mark_intervals, law, mark_cutoff);
}

BinnedMeasure::BinnedMeasure(PartitionPtr partition, std::vector<double> masses)
    : partition_(std::move(partition)), masses_(std::move(masses)) {
  if (!partition_) throw UsageError("measure needs a partition");
  layout_ = partition_->signature();
  if (masses_.size() != partition_->bin_count()) throw UsageError("measure size does not match the partition");
  require_masses(masses_);
}

BinnedMeasure::BinnedMeasure(std::string layout, std::vector<double> masses)
    : layout_(std::move(layout)), masses_(std::move(masses)) {
  require_masses(masses_);
}

double BinnedMeasure::total() const { return ordered_sum(masses_); }

BinnedPairMeasure::BinnedPairMeasure(PartitionPtr partition, std::vector<double> masses)
    : partition_(std::move(partition)), masses_(std::move(masses)) {
  if (!partition_) throw UsageError("measure needs a partition");
  layout_ = partition_->signature();
  bins_ = partition_->bin_count();
  check();
}

BinnedPairMeasure::BinnedPairMeasure(std::string layout, std::size_t bins, std::vector<double> masses)
    : layout_(std::move(layout)), bins_(bins), masses_(std::move(masses)) {
  check();
}

void BinnedPairMeasure::check() {
  if (masses_.size() != bins_ * bins_) throw UsageError("pair measure size does not match the partition");
  require_masses(masses_);
  for (std::size_t a = 0; a < bins_; ++a) {
    for (std::size_t b = a + 1; b < bins_; ++b) {
      if (masses_[a * bins_ + b] != masses_[b * bins_ + a]) throw UsageError("pair measure must be symmetric");
    }
  }
}

double BinnedPairMeasure::total() const { return ordered_sum(masses_); }

BinnedMeasure empirical_mark_measure(const MarkedConfiguration& config, const PartitionPtr& partition) {
  if (!(config.domain() == partition->domain())) throw UsageError("configuration and partition domains differ");
  if (!(config.lambda() > 0.0)) throw UsageError("empirical measures need lambda > 0");
  std::vector<double> counts(partition->bin_count(), 0.0);
  for (std::size_t i = 0; i < config.size(); ++i) counts[partition->bin(config.position(i), config.mark(i))] += 1.0;
  for (double& c : counts) c /= config.lambda();
  return BinnedMeasure(partition, std::move(counts));
}

BinnedPairMeasure empirical_pair_measure(const MarkedConfiguration& config, const SinrGraph& graph,
                                         const PartitionPtr& partition) {
  if (!(config.domain() == partition->domain())) throw UsageError("configuration and partition domains differ");
  if (graph.vertex_count != config.size()) throw UsageError("graph does not belong to the configuration");
  const std::size_t n = partition->bin_count();
  std::vector<std::size_t> bin(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) bin[i] = partition->bin(config.position(i), config.mark(i));
  std::vector<double> counts(n * n, 0.0);
  for (const Edge& e : graph.edges) {
    const std::size_t a = bin[e.i], b = bin[e.j];
    counts[a * n + b] += 1.0;
    counts[b * n + a] += 1.0;
  }
  const double scale = 1.0 / (config.lambda() * config.lambda());
  for (double& c : counts) c *= scale;
  return BinnedPairMeasure(partition, std::move(counts));
}

BinnedPairMeasure empirical_diagonal_measure(const MarkedConfiguration& config, const PartitionPtr& partition) {
  const std::size_t n = partition->bin_count();
  std::vector<double> counts(n * n, 0.0);
  for (std::size_t i = 0; i < config.size(); ++i) {
    const std::size_t a = partition->bin(config.position(i), config.mark(i));
    counts[a * n + a] += 1.0;
  }
  const double scale = 1.0 / (config.lambda() * config.lambda());
  for (double& c : counts) c *= scale;
  return BinnedPairMeasure(partition, std::move(counts));
}

BinnedMeasure reference_measure(const PartitionPtr& partition) {
  std::vector<double> masses(partition->bin_count());
  for (std::size_t cell = 0; cell < partition->spatial_cell_count(); ++cell) {
    for (std::size_t k = 0; k < partition->mark_interval_count(); ++k) {
      masses[partition->bin_of(cell, k)] = partition->cell_fraction(cell) * partition->mark_probability(k);
    }
  }
  return BinnedMeasure(partition, std::move(masses));
}

double relative_entropy(const BinnedMeasure& omega, const BinnedMeasure& rho) {
  require_same_layout(omega.layout(), rho.layout());
  double total = 0.0;
  for (std::size_t b = 0; b < omega.size(); ++b) {
    const double w = omega[b];
    if (w == 0.0) continue;
    if (rho[b] == 0.0) return INFINITY;
    total += w * std::log(w / rho[b]);
  }
  return total;
}

BinnedMeasure coarsen(const BinnedMeasure& measure, const std::vector<std::size_t>& grouping) {
  if (grouping.size() != measure.size()) throw UsageError("grouping must assign every bin to a group");
  std::size_t groups = 0;
  for (std::size_t g : grouping) groups = std::max(groups, g + 1);
  std::vector<char> used(groups, 0);
  for (std::size_t g : grouping) used[g] = 1;
  if (std::find(used.begin(), used.end(), 0) != used.end()) {
    throw UsageError("grouping is not a partition: some group index has no bins");
  }
  std::vector<double> masses(groups, 0.0);
  for (std::size_t b = 0; b < grouping.size(); ++b) masses[grouping[b]] += measure[b];
  std::string key;
  for (std::size_t g : grouping) key += std::to_string(g) + ",";
  return BinnedMeasure("coarsen[" + measure.layout() + "]#" + hex64(fnv1a(key)), std::move(masses));
}

double sup_deviation(const BinnedMeasure& a, const BinnedMeasure& b) {
  require_same_layout(a.layout(), b.layout());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double sup_deviation(const BinnedPairMeasure& a, const BinnedPairMeasure& b) {
  require_same_layout(a.layout(), b.layout());
  double m = 0.0;
  for (std::size_t i = 0; i < a.masses().size(); ++i) m = std::max(m, std::fabs(a.masses()[i] - b.masses()[i]));
  return m;
}

double l1_distance(const BinnedMeasure& a, const BinnedMeasure& b) {
  require_same_layout(a.layout(), b.layout());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double l1_distance(const BinnedPairMeasure& a, const BinnedPairMeasure& b) {
  require_same_layout(a.layout(), b.layout());
  double s = 0.0;
  for (std::size_t i = 0; i < a.masses().size(); ++i) s += std::fabs(a.masses()[i] - b.masses()[i]);
  return s;
}

}  // namespace sinrg
