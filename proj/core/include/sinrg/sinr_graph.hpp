#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sinrg/geometry.hpp"
#include "sinrg/pointprocess.hpp"

namespace sinrg {

// Piecewise-constant base threshold beta0(a): values[0] below breaks[0],
// values[k] on [breaks[k-1], breaks[k]), the last value above the last break.
class BaseBeta {
 public:
  BaseBeta() = default;
  static BaseBeta constant(double value);
  static BaseBeta piecewise(std::vector<double> breaks, std::vector<double> values);
  // "v0" or "v0|b1:v1|b2:v2"
  static BaseBeta parse(std::string_view text);
  std::string to_string() const;

  double operator()(double mark) const { return values_[level(mark)]; }
  std::size_t level(double mark) const;
  std::size_t level_count() const { return values_.size(); }
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }
  bool is_constant() const { return values_.size() == 1; }
  bool operator==(const BaseBeta&) const = default;

 private:
  std::vector<double> breaks_;
  std::vector<double> values_{1.0};
};

// beta(a, b) = (beta0(a) + beta0(b)) / 2
double pair_beta(const BaseBeta& beta0, double a, double b);

enum class TauSplit {
  GammaOne,  // gamma = 1, tau = beta0 / (2 lambda)
  Balanced,  // tau = gamma = sqrt(beta0 / (2 lambda))
};

enum class InterferenceConvention {
  PaperLiteral,     // sum over every i != j, desired transmitter included
  ExcludeDesired,   // desired transmitter removed from the interference
};

struct SinrParams {
  PathLoss path_loss{1.0};
  double noise = 0.0;
  BaseBeta beta0;
  double lambda = 1.0;
  TauSplit split = TauSplit::GammaOne;
  InterferenceConvention convention = InterferenceConvention::PaperLiteral;

  double tau_gamma(double mark) const { return beta0(mark) / (2.0 * lambda); }
  double tau(double mark) const;
  double gamma(double mark) const;
  void validate() const;
};

struct Edge {
  std::uint32_t i;
  std::uint32_t j;
  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};

struct SinrGraph {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;  // i < j, sorted

  double mean_degree() const {
    return vertex_count == 0 ? 0.0 : 2.0 * static_cast<double>(edges.size()) / static_cast<double>(vertex_count);
  }
  bool operator==(const SinrGraph&) const = default;
};

// Sum over i != j of sigma_i l(|X_i - X_j|).
double interference_at(const MarkedConfiguration& config, std::size_t j, const PathLoss& path_loss);
// SINR of transmitter i at receiver j; +inf when the denominator vanishes.
double sinr(const MarkedConfiguration& config, std::size_t i, std::size_t j, const SinrParams& params);

// Per-receiver total received power T_j.
std::vector<double> received_power(const MarkedConfiguration& config, const PathLoss& path_loss,
                                   unsigned workers = 1);

SinrGraph build_graph(const MarkedConfiguration& config, const SinrParams& params, unsigned workers = 1);

// Reference implementation recomputing every interference sum per pair.
SinrGraph build_graph_naive(const MarkedConfiguration& config, const SinrParams& params);

// Calls visit(i, j) for every edge with i < j and row i in [row_begin, row_end),
// in lexicographic order.
template <class Visit>
void for_each_sinr_edge(const MarkedConfiguration& config, const SinrParams& params,
                        const std::vector<double>& total_power, std::size_t row_begin, std::size_t row_end,
                        Visit&& visit);

std::string_view to_string(TauSplit split);
std::string_view to_string(InterferenceConvention convention);
TauSplit parse_tau_split(std::string_view text);
InterferenceConvention parse_convention(std::string_view text);

// ---------------------------------------------------------------------------

namespace detail {
[[noreturn]] void throw_coincident(std::size_t i, std::size_t j);
}

template <class Visit>
void for_each_sinr_edge(const MarkedConfiguration& config, const SinrParams& params,
                        const std::vector<double>& total_power, std::size_t row_begin, std::size_t row_end,
                        Visit&& visit) {
  const std::size_t n = config.size();
  const bool exclude = params.convention == InterferenceConvention::ExcludeDesired;
  std::vector<double> tau(n), gamma(n);
  for (std::size_t k = 0; k < n; ++k) {
    tau[k] = params.tau(config.mark(k));
    gamma[k] = params.gamma(config.mark(k));
  }
  const DeviceDomain& domain = config.domain();
  for (std::size_t i = row_begin; i < row_end && i < n; ++i) {
    const double* xi = config.position(i);
    const double si = config.mark(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r2 = domain.squared_distance(xi, config.position(j));
      if (r2 == 0.0) detail::throw_coincident(i, j);
      const double l = params.path_loss.from_squared(r2);
      const double sig_ij = si * l;
      const double sig_ji = config.mark(j) * l;
      double ij = total_power[j];
      double ji = total_power[i];
      if (exclude) {
        ij = std::max(0.0, ij - sig_ij);
        ji = std::max(0.0, ji - sig_ji);
      }
      const double den_j = params.noise + gamma[j] * ij;
      const double den_i = params.noise + gamma[i] * ji;
      const bool ok_j = den_j == 0.0 ? true : sig_ij / den_j >= tau[j];
      if (!ok_j) continue;
      const bool ok_i = den_i == 0.0 ? true : sig_ji / den_i >= tau[i];
      if (ok_i) visit(i, j);
    }
  }
}

}  // namespace sinrg
