#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "sinrg/geometry.hpp"
#include "sinrg/pointprocess.hpp"
#include "sinrg/sinr_graph.hpp"

namespace sinrg {

// Spatial cells times mark intervals. Boxes use a regular grid with
// `divisions` cells per axis; disks use `divisions` equal-area rings times
// `divisions` equal sectors. Marks are split into `mark_intervals`
// equal-probability intervals of (0, cutoff] plus the tail (cutoff, inf).
class ProductPartition {
 public:
  ProductPartition(DeviceDomain domain, int divisions, int mark_intervals, MarkLaw law, double mark_cutoff);
  // Cutoff ln(mark_intervals + 1) / c, making every mark interval equally likely.
  ProductPartition(DeviceDomain domain, int divisions, int mark_intervals, MarkLaw law);

  const DeviceDomain& domain() const { return domain_; }
  const MarkLaw& mark_law() const { return law_; }
  int divisions() const { return divisions_; }
  double mark_cutoff() const { return cutoff_; }

  std::size_t spatial_cell_count() const { return cells_; }
  std::size_t mark_interval_count() const { return edges_.size(); }
  std::size_t bin_count() const { return cells_ * edges_.size(); }

  std::size_t spatial_cell(const double* p) const;
  std::size_t mark_interval(double mark) const;
  std::size_t bin(const double* p, double mark) const {
    return spatial_cell(p) * mark_interval_count() + mark_interval(mark);
  }
  std::size_t bin_of(std::size_t cell, std::size_t interval) const { return cell * mark_interval_count() + interval; }
  std::size_t cell_of_bin(std::size_t b) const { return b / mark_interval_count(); }
  std::size_t interval_of_bin(std::size_t b) const { return b % mark_interval_count(); }

  // Fraction of the domain volume covered by a cell.
  double cell_fraction(std::size_t cell) const;
  // Maps local coordinates u in [0,1]^d to a point of the cell; uniform u
  // gives a uniform point.
  void cell_point(std::size_t cell, const double* u, double* out) const;
  void cell_center(std::size_t cell, double* out) const;

  double mark_lower(std::size_t k) const { return k == 0 ? 0.0 : edges_[k - 1]; }
  double mark_upper(std::size_t k) const { return edges_[k]; }
  double mark_probability(std::size_t k) const;
  // Conditional mean of the mark law on the interval.
  double mark_representative(std::size_t k) const;
  // Conditional means of `parts` equal-probability pieces of interval k.
  std::vector<double> mark_representatives(std::size_t k, int parts) const;

  std::string signature() const;
  bool operator==(const ProductPartition& other) const { return signature() == other.signature(); }

 private:
  DeviceDomain domain_;
  int divisions_;
  MarkLaw law_;
  double cutoff_;
  std::size_t cells_;
  std::vector<double> edges_;  // upper edges; last is +inf
};

using PartitionPtr = std::shared_ptr<const ProductPartition>;

PartitionPtr make_partition(const DeviceDomain& domain, int divisions, int mark_intervals, const MarkLaw& law);
PartitionPtr make_partition(const DeviceDomain& domain, int divisions, int mark_intervals, const MarkLaw& law,
                            double mark_cutoff);

class BinnedMeasure {
 public:
  BinnedMeasure(PartitionPtr partition, std::vector<double> masses);
  // Measure on a layout that is not a product partition (e.g. after coarsening).
  BinnedMeasure(std::string layout, std::vector<double> masses);

  const std::string& layout() const { return layout_; }
  const PartitionPtr& partition() const { return partition_; }
  std::size_t size() const { return masses_.size(); }
  double operator[](std::size_t b) const { return masses_[b]; }
  const std::vector<double>& masses() const { return masses_; }
  double total() const;

  bool operator==(const BinnedMeasure& other) const {
    return layout_ == other.layout_ && masses_ == other.masses_;
  }

 private:
  std::string layout_;
  PartitionPtr partition_;
  std::vector<double> masses_;
};

// Symmetric n x n measure stored row-major.
class BinnedPairMeasure {
 public:
  BinnedPairMeasure(PartitionPtr partition, std::vector<double> masses);
  BinnedPairMeasure(std::string layout, std::size_t bins, std::vector<double> masses);

  const std::string& layout() const { return layout_; }
  const PartitionPtr& partition() const { return partition_; }
  std::size_t bins() const { return bins_; }
  double at(std::size_t a, std::size_t b) const { return masses_[a * bins_ + b]; }
  const std::vector<double>& masses() const { return masses_; }
  double total() const;

  bool operator==(const BinnedPairMeasure& other) const {
    return layout_ == other.layout_ && masses_ == other.masses_;
  }

 private:
  void check();

  std::string layout_;
  PartitionPtr partition_;
  std::size_t bins_;
  std::vector<double> masses_;
};

// (1/lambda) sum_i delta_{(X_i, sigma_i)}
BinnedMeasure empirical_mark_measure(const MarkedConfiguration& config, const PartitionPtr& partition);
// (1/lambda^2) sum over edges of both orders.
BinnedPairMeasure empirical_pair_measure(const MarkedConfiguration& config, const SinrGraph& graph,
                                         const PartitionPtr& partition);
// (1/lambda^2) sum_i delta_{(X_i, X_i)}
BinnedPairMeasure empirical_diagonal_measure(const MarkedConfiguration& config, const PartitionPtr& partition);

// m (x) Q on the partition, m normalized.
BinnedMeasure reference_measure(const PartitionPtr& partition);

// sum_b w_b log(w_b / r_b); +inf when w is not absolutely continuous wrt r.
double relative_entropy(const BinnedMeasure& omega, const BinnedMeasure& rho);

// grouping[b] is the group of bin b; groups must be 0..G-1, all nonempty.
BinnedMeasure coarsen(const BinnedMeasure& measure, const std::vector<std::size_t>& grouping);

double sup_deviation(const BinnedMeasure& a, const BinnedMeasure& b);
double sup_deviation(const BinnedPairMeasure& a, const BinnedPairMeasure& b);
double l1_distance(const BinnedMeasure& a, const BinnedMeasure& b);
double l1_distance(const BinnedPairMeasure& a, const BinnedPairMeasure& b);

}  // namespace sinrg
