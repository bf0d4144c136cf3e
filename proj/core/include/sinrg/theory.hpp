#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sinrg/kernel.hpp"
#include "sinrg/measures.hpp"
#include "sinrg/parallel.hpp"
#include "sinrg/random.hpp"

namespace sinrg {

// -p log p - (1 - p) log(1 - p) for p = e^{-x}, x >= 0.
double binary_entropy_from_exponent(double x);
double binary_entropy(double p);

enum class EntropyMethod { Quadrature, MonteCarlo };

struct EntropyEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  EntropyMethod method = EntropyMethod::Quadrature;
  std::uint64_t samples = 0;
};

// H(Q x Q) = E[h(exp(-R(X, a, Y, b) / |D|))] for X, Y uniform on D and
// a, b ~ Q. The quadrature integrates over the displacement Y - X with its
// density and sums exactly over the beta0 levels.
EntropyEstimate shannon_entropy_quadrature(const KernelParams& params, double rel_tol = 1e-9);
EntropyEstimate shannon_entropy_monte_carlo(const KernelParams& params, std::uint64_t samples, std::uint64_t seed,
                                            unsigned workers = 1);
std::string_view to_string(EntropyMethod method);
EntropyMethod parse_entropy_method(std::string_view text);

// Exponent x_ij with p_ij = e^{-x_ij}.
using PairExponent = std::function<double(std::size_t, std::size_t)>;

// log of prod_{edges} p prod_{non-edges} (1 - p) over unordered pairs.
double conditional_graph_log_likelihood(std::size_t n, const std::vector<Edge>& edges, const PairExponent& exponent);

struct LikelihoodTerms {
  std::size_t points = 0;
  double density = 0.0;     // -(1/lambda^2) sum log of the point density
  double edge = 0.0;        // <-log(p / (1 - p)), L2>
  double non_edge = 0.0;    // <-log(1 - p), L1 x L1> off the diagonal
  double diagonal = 0.0;    // <-log(1 - p), L_Delta> with clamped p
  double headline = 0.0;    // edge + non_edge
  double conditional_rate = 0.0;  // -(1/lambda^2) log of the conditional graph likelihood
  std::uint64_t clamp_count = 0;
};

inline constexpr double kProbabilityFloor = 1e-300;
inline constexpr double kProbabilityCeiling = 1.0 - 1e-15;

LikelihoodTerms log_likelihood_rate(const MarkedConfiguration& config, const SinrGraph& graph,
                                    const PairExponent& exponent, const MarkLaw& marks);
LikelihoodTerms log_likelihood_rate(const MarkedConfiguration& config, const SinrGraph& graph,
                                    const ConnectionKernel& kernel);

struct RateValue {
  bool finite = true;
  double value = 0.0;

  static RateValue infinite() { return RateValue{false, 0.0}; }
  static RateValue of(double v) { return std::isinf(v) ? infinite() : RateValue{true, v}; }
};

inline constexpr double kMassTolerance = 1e-9;

RateValue rate_I1(const BinnedMeasure& omega, const BinnedMeasure& reference);

// e^{-R}(omega x omega) on bin pairs. With refinement r > 1 the kernel is
// averaged over r sub-cells per spatial axis and r sub-intervals per mark
// interval of each bin.
BinnedPairMeasure product_reference(const BinnedMeasure& omega, const KernelParams& params, int refinement = 1);
// Bin-pair kernel values e^{-R/|D|} at the chosen refinement.
std::vector<double> bin_kernel(const ProductPartition& partition, const KernelParams& params, int refinement = 1);

RateValue rate_joint(const BinnedMeasure& omega, const BinnedPairMeasure& pi, const KernelParams& params,
                     double tol);

// Real function on bin pairs, row-major.
struct PairFunction {
  std::size_t bins = 0;
  std::vector<double> values;
  double at(std::size_t a, std::size_t b) const { return values[a * bins + b]; }
};

double spectral_potential(const PairFunction& g, const BinnedPairMeasure& reference);
double spectral_potential(const PairFunction& g, const BinnedMeasure& omega, const KernelParams& params);

struct KullbackAction {
  double value = 0.0;
  PairFunction optimizer;
};

// sup over |g| <= M of <g, pi - e^{-R} omega x omega>.
KullbackAction kullback_action(const BinnedPairMeasure& pi, const BinnedPairMeasure& reference, double bound);
KullbackAction kullback_action(const BinnedMeasure& omega, const BinnedPairMeasure& pi, double bound,
                               const KernelParams& params);

// Graphs whose edges are independent given the configuration with the
// finite-lambda probabilities p = exp(-(lambda/|D|) R_lambda). Row i draws
// from its own stream so the result does not depend on the worker count.
SinrGraph sample_kernel_graph(const MarkedConfiguration& config, const ConnectionKernel& kernel,
                              const StreamSeed& seed, unsigned workers = 1);
BinnedPairMeasure sample_kernel_pair_measure(const MarkedConfiguration& config, const ConnectionKernel& kernel,
                                             const PartitionPtr& partition, const StreamSeed& seed,
                                             unsigned workers = 1);

template <class Visit>
void for_each_kernel_edge(const MarkedConfiguration& config, const ConnectionKernel& kernel, const StreamSeed& seed,
                          std::size_t row_begin, std::size_t row_end, Visit&& visit) {
  const std::size_t n = config.size();
  std::vector<std::size_t> level(n);
  for (std::size_t k = 0; k < n; ++k) level[k] = kernel.level(config.mark(k));
  const DeviceDomain& domain = config.domain();
  for (std::size_t i = row_begin; i < row_end && i < n; ++i) {
    RandomStream rng(seed, Purpose::Edge, i);
    const double* xi = config.position(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = kernel.alpha_power(domain.squared_distance(xi, config.position(j)));
      if (rng.uniform() < kernel.probability_w(w, level[i], level[j])) visit(i, j);
    }
  }
}

}  // namespace sinrg
