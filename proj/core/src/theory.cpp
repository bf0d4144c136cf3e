#include "sinrg/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sinrg/error.hpp"
#include "sinrg/quadrature.hpp"

namespace sinrg {

namespace {

constexpr std::uint64_t kEntropyBlock = 1u << 16;

struct LevelPair {
  double weight;
  double beta;
};

// Probability of each beta0 level under the mark law, combined into
// unordered level pairs.
std::vector<LevelPair> level_pairs(const KernelParams& params) {
  const auto& values = params.beta0.values();
  const auto& breaks = params.beta0.breaks();
  std::vector<double> prob(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double lo = k == 0 ? 0.0 : breaks[k - 1];
    const double hi = k == breaks.size() ? INFINITY : breaks[k];
    prob[k] = params.marks.survival(lo) - (std::isinf(hi) ? 0.0 : params.marks.survival(hi));
  }
  std::vector<LevelPair> pairs;
  for (std::size_t k = 0; k < values.size(); ++k) {
    for (std::size_t l = k; l < values.size(); ++l) {
      const double w = (k == l ? 1.0 : 2.0) * prob[k] * prob[l];
      pairs.push_back({w, 0.5 * (values[k] + values[l])});
    }
  }
  return pairs;
}

// E[h(exp(-kappa |Y - X|^alpha))] for X, Y independent uniform on D.
double displacement_entropy(const KernelParams& params, double kappa, double rel_tol) {
  const DeviceDomain& domain = params.domain;
  const double alpha = params.alpha();
  if (kappa == 0.0) return 0.0;
  const double scale = std::pow(kappa, -1.0 / alpha);
  auto hb = [kappa, alpha](double r) { return binary_entropy_from_exponent(kappa * std::pow(r, alpha)); };
  if (domain.shape() == Shape::Disk) {
    const double R = domain.size();
    const double area2 = std::pow(std::numbers::pi * R * R, 2);
    auto lens = [R](double rho) {
      const double x = std::min(1.0, rho / (2.0 * R));
      return 2.0 * R * R * std::acos(x) - 0.5 * rho * std::sqrt(std::max(0.0, 4.0 * R * R - rho * rho));
    };
    auto ray = [&](double s) {
      const double rho = 2.0 * R * s;
      return 2.0 * R * 2.0 * std::numbers::pi * rho * lens(rho) / area2 * hb(rho);
    };
    return ray_integral(ray, scale / (2.0 * R), rel_tol);
  }
  if (domain.periodic()) {
    return integrate_radial(domain, hb, scale, rel_tol) / domain.volume();
  }
  const int d = domain.dim();
  const double L = domain.size();
  const double norm = std::pow(L, 2.0 * d);
  std::vector<double> lo(d, 0.0), hi(d, L);
  auto f = [&](std::span<const double> z) {
    double w = 1.0, r2 = 0.0;
    for (double x : z) {
      w *= L - x;
      r2 += x * x;
    }
    return w * hb(std::sqrt(r2));
  };
  return std::ldexp(1.0, d) / norm * integrate_box(lo, hi, f, scale, rel_tol);
}

double entropy_sum(const KernelParams& params, double rel_tol) {
  double total = 0.0;
  for (const auto& lp : level_pairs(params)) {
    if (lp.weight == 0.0) continue;
    total += lp.weight * displacement_entropy(params, params.q_alpha * lp.beta / params.domain.volume(), rel_tol);
  }
  return total;
}

}  // namespace

double binary_entropy_from_exponent(double x) {
  if (!(x > 0.0)) return 0.0;
  const double p = std::exp(-x);
  const double q = -std::expm1(-x);
  const double log_q = p < 0.5 ? std::log1p(-p) : std::log(q);
  return p * x - q * log_q;
}

double binary_entropy(double p) {
  if (!(p > 0.0) || !(p < 1.0)) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

EntropyEstimate shannon_entropy_quadrature(const KernelParams& params, double rel_tol) {
  EntropyEstimate e;
  e.method = EntropyMethod::Quadrature;
  e.value = entropy_sum(params, rel_tol);
  const double coarse = entropy_sum(params, rel_tol * 1e3);
  e.error_estimate = std::fabs(e.value - coarse);
  return e;
}

EntropyEstimate shannon_entropy_monte_carlo(const KernelParams& params, std::uint64_t samples, std::uint64_t seed,
                                            unsigned workers) {
  if (samples < 2) throw UsageError("Monte Carlo entropy needs at least two samples");
  const std::uint64_t blocks = (samples + kEntropyBlock - 1) / kEntropyBlock;
  std::vector<double> sum(blocks, 0.0), sum2(blocks, 0.0);
  const DeviceDomain& domain = params.domain;
  const double inv_volume = 1.0 / domain.volume();
  parallel_for(blocks, workers, [&](std::size_t b) {
    RandomStream rng(StreamSeed{seed, b}, Purpose::Entropy);
    const std::uint64_t begin = b * kEntropyBlock;
    const std::uint64_t end = std::min(samples, begin + kEntropyBlock);
    std::vector<double> x(domain.dim()), y(domain.dim());
    double s = 0.0, s2 = 0.0;
    for (std::uint64_t k = begin; k < end; ++k) {
      domain.sample_point(rng, x.data());
      domain.sample_point(rng, y.data());
      const double a = params.marks.sample(rng);
      const double c = params.marks.sample(rng);
      const double dist = domain.distance(x.data(), y.data());
      const double beta = pair_beta(params.beta0, a, c);
      const double v = binary_entropy_from_exponent(r_limit(dist, beta, params.q_alpha, params.alpha()) * inv_volume);
      s += v;
      s2 += v * v;
    }
    sum[b] = s;
    sum2[b] = s2;
  });
  double s = 0.0, s2 = 0.0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    s += sum[b];
    s2 += sum2[b];
  }
  const double n = static_cast<double>(samples);
  const double mean = s / n;
  const double var = std::max(0.0, (s2 - n * mean * mean) / (n - 1.0));
  EntropyEstimate e;
  e.method = EntropyMethod::MonteCarlo;
  e.value = mean;
  e.error_estimate = std::sqrt(var / n);
  e.samples = samples;
  return e;
}

std::string_view to_string(EntropyMethod method) {
  return method == EntropyMethod::Quadrature ? "quadrature" : "monte-carlo";
}

EntropyMethod parse_entropy_method(std::string_view text) {
  if (text == "quadrature") return EntropyMethod::Quadrature;
  if (text == "monte-carlo") return EntropyMethod::MonteCarlo;
  throw UsageError("entropy method must be quadrature or monte-carlo");
}

double conditional_graph_log_likelihood(std::size_t n, const std::vector<Edge>& edges, const PairExponent& exponent) {
  double total = 0.0;
  std::size_t e = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double x = exponent(i, j);
      const bool is_edge = e < edges.size() && edges[e].i == i && edges[e].j == j;
      if (is_edge) {
        total += -x;
        ++e;
      } else {
        total += std::log(-std::expm1(-x));
      }
    }
  }
  if (e != edges.size()) throw UsageError("edge list must be sorted, with i < j < n");
  return total;
}

LikelihoodTerms log_likelihood_rate(const MarkedConfiguration& config, const SinrGraph& graph,
                                    const PairExponent& exponent, const MarkLaw& marks) {
  if (graph.vertex_count != config.size()) throw UsageError("graph does not belong to the configuration");
  LikelihoodTerms t;
  const std::size_t n = config.size();
  t.points = n;
  const double lambda = config.lambda();
  if (!(lambda > 0.0)) throw UsageError("likelihood needs lambda > 0");
  const double scale = 1.0 / (lambda * lambda);
  const double log_density = std::log(lambda / config.domain().volume()) + std::log(marks.rate());
  const double max_neg_log_p = -std::log(kProbabilityFloor);
  const double max_neg_log_q = -std::log1p(-kProbabilityCeiling);
  double density = 0.0, edge = 0.0, non_edge = 0.0;
  std::size_t e = 0;
  for (std::size_t i = 0; i < n; ++i) {
    density += -(log_density - marks.rate() * config.mark(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double x = exponent(i, j);
      double neg_log_q;
      if (std::exp(-x) > kProbabilityCeiling) {
        neg_log_q = max_neg_log_q;
        ++t.clamp_count;
      } else {
        neg_log_q = -std::log(-std::expm1(-x));
      }
      non_edge += neg_log_q;
      const bool is_edge = e < graph.edges.size() && graph.edges[e].i == i && graph.edges[e].j == j;
      if (is_edge) {
        ++e;
        double neg_log_p = x;
        if (x > max_neg_log_p) {
          neg_log_p = max_neg_log_p;
          ++t.clamp_count;
        }
        edge += neg_log_p - neg_log_q;
      }
    }
  }
  if (e != graph.edges.size()) throw UsageError("edge list must be sorted, with i < j < n");
  t.density = scale * density;
  t.edge = 2.0 * scale * edge;
  t.non_edge = 2.0 * scale * non_edge;
  t.diagonal = scale * static_cast<double>(n) * max_neg_log_q;
  t.headline = t.edge + t.non_edge;
  t.conditional_rate = 0.5 * t.headline;
  return t;
}

LikelihoodTerms log_likelihood_rate(const MarkedConfiguration& config, const SinrGraph& graph,
                                    const ConnectionKernel& kernel) {
  const DeviceDomain& domain = config.domain();
  auto exponent = [&](std::size_t i, std::size_t j) {
    const double w = kernel.alpha_power(domain.squared_distance(config.position(i), config.position(j)));
    return kernel.exponent_w(w, kernel.level(config.mark(i)), kernel.level(config.mark(j)));
  };
  return log_likelihood_rate(config, graph, exponent, kernel.params().marks);
}

RateValue rate_I1(const BinnedMeasure& omega, const BinnedMeasure& reference) {
  const double h = relative_entropy(omega, reference);
  if (std::fabs(omega.total() - 1.0) > kMassTolerance) return RateValue::infinite();
  return RateValue::of(h);
}

std::vector<double> bin_kernel(const ProductPartition& partition, const KernelParams& params, int refinement) {
  if (refinement < 1) throw UsageError("kernel refinement must be at least 1");
  const DeviceDomain& domain = partition.domain();
  if (!(domain == params.domain)) throw UsageError("partition and kernel domains differ");
  const int d = domain.dim();
  const std::size_t cells = partition.spatial_cell_count();
  const std::size_t intervals = partition.mark_interval_count();
  const std::size_t bins = partition.bin_count();

  // Sub-cell points of every cell.
  std::size_t per_cell = 1;
  for (int k = 0; k < d; ++k) per_cell *= static_cast<std::size_t>(refinement);
  std::vector<double> points(cells * per_cell * d);
  std::vector<double> u(d);
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t s = 0; s < per_cell; ++s) {
      std::size_t rest = s;
      for (int k = 0; k < d; ++k) {
        u[k] = (static_cast<double>(rest % refinement) + 0.5) / refinement;
        rest /= refinement;
      }
      partition.cell_point(c, u.data(), points.data() + (c * per_cell + s) * d);
    }
  }
  // Weight of each beta0 level within each mark interval.
  const std::size_t levels = params.beta0.level_count();
  std::vector<double> level_weight(intervals * levels, 0.0);
  for (std::size_t m = 0; m < intervals; ++m) {
    const auto reps = refinement == 1 ? std::vector<double>{partition.mark_representative(m)}
                                      : partition.mark_representatives(m, refinement);
    for (double r : reps) level_weight[m * levels + params.beta0.level(r)] += 1.0 / reps.size();
  }
  const auto& values = params.beta0.values();
  const double factor = params.q_alpha / domain.volume();
  // Spatial average of exp(-factor beta w) per cell pair and level pair.
  std::vector<double> spatial(cells * cells * levels * levels, 0.0);
  std::vector<double> w(per_cell * per_cell);
  for (std::size_t a = 0; a < cells; ++a) {
    for (std::size_t b = a; b < cells; ++b) {
      for (std::size_t s = 0; s < per_cell; ++s) {
        for (std::size_t t = 0; t < per_cell; ++t) {
          const double dist = domain.distance(points.data() + (a * per_cell + s) * d,
                                              points.data() + (b * per_cell + t) * d);
          w[s * per_cell + t] = std::pow(dist, params.alpha());
        }
      }
      for (std::size_t la = 0; la < levels; ++la) {
        for (std::size_t lb = 0; lb < levels; ++lb) {
          const double beta = 0.5 * (values[la] + values[lb]);
          double acc = 0.0;
          for (double x : w) acc += std::exp(-factor * beta * x);
          acc /= static_cast<double>(w.size());
          spatial[((a * cells + b) * levels + la) * levels + lb] = acc;
          spatial[((b * cells + a) * levels + lb) * levels + la] = acc;
        }
      }
    }
  }
  std::vector<double> kernel(bins * bins, 0.0);
  for (std::size_t x = 0; x < bins; ++x) {
    const std::size_t cx = partition.cell_of_bin(x), mx = partition.interval_of_bin(x);
    for (std::size_t y = x; y < bins; ++y) {
      const std::size_t cy = partition.cell_of_bin(y), my = partition.interval_of_bin(y);
      double k = 0.0;
      for (std::size_t la = 0; la < levels; ++la) {
        const double wa = level_weight[mx * levels + la];
        if (wa == 0.0) continue;
        for (std::size_t lb = 0; lb < levels; ++lb) {
          const double wb = level_weight[my * levels + lb];
          if (wb == 0.0) continue;
          k += wa * wb * spatial[((cx * cells + cy) * levels + la) * levels + lb];
        }
      }
      kernel[x * bins + y] = k;
      kernel[y * bins + x] = k;
    }
  }
  return kernel;
}

BinnedPairMeasure product_reference(const BinnedMeasure& omega, const KernelParams& params, int refinement) {
  if (!omega.partition()) throw UsageError("product_reference needs a measure on a product partition");
  const std::size_t n = omega.size();
  const std::vector<double> kernel = bin_kernel(*omega.partition(), params, refinement);
  std::vector<double> masses(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const double m = kernel[a * n + b] * omega[a] * omega[b];
      masses[a * n + b] = m;
      masses[b * n + a] = m;
    }
  }
  return BinnedPairMeasure(omega.partition(), std::move(masses));
}

RateValue rate_joint(const BinnedMeasure& omega, const BinnedPairMeasure& pi, const KernelParams& params,
                     double tol) {
  if (!(tol > 0.0)) throw UsageError("rate_joint tolerance must be positive");
  if (omega.layout() != pi.layout()) throw UsageError("omega and pi live on different partitions");
  const BinnedMeasure reference = reference_measure(omega.partition());
  const RateValue base = rate_I1(omega, reference);
  if (!base.finite) return base;
  if (sup_deviation(pi, product_reference(omega, params)) > tol) return RateValue::infinite();
  return base;
}

double spectral_potential(const PairFunction& g, const BinnedPairMeasure& reference) {
  if (g.bins != reference.bins() || g.values.size() != g.bins * g.bins) {
    throw UsageError("test function does not match the partition");
  }
  for (std::size_t a = 0; a < g.bins; ++a) {
    for (std::size_t b = a + 1; b < g.bins; ++b) {
      if (g.at(a, b) != g.at(b, a)) throw UsageError("spectral potential needs a symmetric test function");
    }
  }
  double total = 0.0;
  for (std::size_t k = 0; k < g.values.size(); ++k) total += g.values[k] * reference.masses()[k];
  return total;
}

double spectral_potential(const PairFunction& g, const BinnedMeasure& omega, const KernelParams& params) {
  return spectral_potential(g, product_reference(omega, params));
}

KullbackAction kullback_action(const BinnedPairMeasure& pi, const BinnedPairMeasure& reference, double bound) {
  if (!(bound > 0.0) || !std::isfinite(bound)) throw UsageError("Kullback action bound M must be positive");
  if (pi.layout() != reference.layout()) throw UsageError("pi and the reference live on different partitions");
  KullbackAction k;
  k.optimizer.bins = pi.bins();
  k.optimizer.values.resize(pi.masses().size());
  double l1 = 0.0;
  for (std::size_t i = 0; i < pi.masses().size(); ++i) {
    const double diff = pi.masses()[i] - reference.masses()[i];
    l1 += std::fabs(diff);
    k.optimizer.values[i] = diff > 0.0 ? bound : (diff < 0.0 ? -bound : 0.0);
  }
  k.value = bound * l1;
  return k;
}

KullbackAction kullback_action(const BinnedMeasure& omega, const BinnedPairMeasure& pi, double bound,
                               const KernelParams& params) {
  return kullback_action(pi, product_reference(omega, params), bound);
}

SinrGraph sample_kernel_graph(const MarkedConfiguration& config, const ConnectionKernel& kernel,
                              const StreamSeed& seed, unsigned workers) {
  const std::size_t n = config.size();
  const auto bounds = balanced_row_blocks(n, resolve_workers(workers));
  const std::size_t count = bounds.size() - 1;
  std::vector<std::vector<Edge>> parts(count);
  parallel_for(count, static_cast<unsigned>(count), [&](std::size_t w) {
    for_each_kernel_edge(config, kernel, seed, bounds[w], bounds[w + 1], [&](std::size_t i, std::size_t j) {
      parts[w].push_back(Edge{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    });
  });
  SinrGraph graph;
  graph.vertex_count = n;
  for (auto& part : parts) graph.edges.insert(graph.edges.end(), part.begin(), part.end());
  return graph;
}

BinnedPairMeasure sample_kernel_pair_measure(const MarkedConfiguration& config, const ConnectionKernel& kernel,
                                             const PartitionPtr& partition, const StreamSeed& seed,
                                             unsigned workers) {
  const std::size_t n = config.size();
  const std::size_t bins = partition->bin_count();
  std::vector<std::size_t> bin(n);
  for (std::size_t i = 0; i < n; ++i) bin[i] = partition->bin(config.position(i), config.mark(i));
  const auto bounds = balanced_row_blocks(n, resolve_workers(workers));
  const std::size_t count = bounds.size() - 1;
  std::vector<std::vector<std::uint64_t>> partial(count, std::vector<std::uint64_t>(bins * bins, 0));
  parallel_for(count, static_cast<unsigned>(count), [&](std::size_t w) {
    auto& c = partial[w];
    for_each_kernel_edge(config, kernel, seed, bounds[w], bounds[w + 1], [&](std::size_t i, std::size_t j) {
      ++c[bin[i] * bins + bin[j]];
      ++c[bin[j] * bins + bin[i]];
    });
  });
  std::vector<double> masses(bins * bins, 0.0);
  const double scale = 1.0 / (config.lambda() * config.lambda());
  for (std::size_t k = 0; k < masses.size(); ++k) {
    std::uint64_t total = 0;
    for (const auto& c : partial) total += c[k];
    masses[k] = static_cast<double>(total) * scale;
  }
  return BinnedPairMeasure(partition, std::move(masses));
}

}  // namespace sinrg
