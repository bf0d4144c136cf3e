#include "sinrg/sinr_graph.hpp"

#include <algorithm>
#include <cmath>

#include "sinrg/error.hpp"
#include "sinrg/format.hpp"
#include "sinrg/parallel.hpp"

namespace sinrg {

namespace detail {
void throw_coincident(std::size_t i, std::size_t j) {
  throw SingularityError("points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}
}  // namespace detail

BaseBeta BaseBeta::constant(double value) { return piecewise({}, {value}); }

BaseBeta BaseBeta::piecewise(std::vector<double> breaks, std::vector<double> values) {
  if (values.size() != breaks.size() + 1) throw UsageError("beta0 table needs one more value than breaks");
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw UsageError("beta0 values must be finite and nonnegative");
  }
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    if (!(breaks[k] > 0.0) || !std::isfinite(breaks[k])) throw UsageError("beta0 breaks must be positive");
    if (k > 0 && !(breaks[k] > breaks[k - 1])) throw UsageError("beta0 breaks must be increasing");
  }
  BaseBeta b;
  b.breaks_ = std::move(breaks);
  b.values_ = std::move(values);
  return b;
}

BaseBeta BaseBeta::parse(std::string_view text) {
  std::vector<double> breaks, values;
  std::size_t start = 0;
  bool first = true;
  while (start <= text.size()) {
    const std::size_t bar = text.find('|', start);
    const std::string_view part = text.substr(start, bar == std::string_view::npos ? text.size() - start : bar - start);
    if (first) {
      values.push_back(parse_double(part));
      first = false;
    } else {
      const std::size_t colon = part.find(':');
      if (colon == std::string_view::npos) throw UsageError("beta0 table entries must look like break:value");
      breaks.push_back(parse_double(part.substr(0, colon)));
      values.push_back(parse_double(part.substr(colon + 1)));
    }
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return piecewise(std::move(breaks), std::move(values));
}

std::string BaseBeta::to_string() const {
  std::string s = format_double(values_[0]);
  for (std::size_t k = 0; k < breaks_.size(); ++k) {
    s += "|" + format_double(breaks_[k]) + ":" + format_double(values_[k + 1]);
  }
  return s;
}

std::size_t BaseBeta::level(double mark) const {
  return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), mark) - breaks_.begin());
}

double pair_beta(const BaseBeta& beta0, double a, double b) { return 0.5 * (beta0(a) + beta0(b)); }

double SinrParams::tau(double mark) const {
  const double tg = tau_gamma(mark);
  return split == TauSplit::GammaOne ? tg : std::sqrt(tg);
}

double SinrParams::gamma(double mark) const {
  return split == TauSplit::GammaOne ? 1.0 : std::sqrt(tau_gamma(mark));
}

void SinrParams::validate() const {
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw UsageError("noise N0 must be finite and nonnegative");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw UsageError("intensity lambda must be positive");
}

double interference_at(const MarkedConfiguration& config, std::size_t j, const PathLoss& path_loss) {
  if (j >= config.size()) throw UsageError("receiver index out of range");
  const double* xj = config.position(j);
  double total = 0.0;
  for (std::size_t k = 0; k < config.size(); ++k) {
    if (k == j) continue;
    const double r2 = config.domain().squared_distance(config.position(k), xj);
    if (r2 == 0.0) detail::throw_coincident(k, j);
    total += config.mark(k) * path_loss.from_squared(r2);
  }
  return total;
}

double sinr(const MarkedConfiguration& config, std::size_t i, std::size_t j, const SinrParams& params) {
  if (i >= config.size() || j >= config.size()) throw UsageError("transmitter or receiver index out of range");
  if (i == j) throw UsageError("sinr needs distinct transmitter and receiver");
  const double r2 = config.domain().squared_distance(config.position(i), config.position(j));
  if (r2 == 0.0) detail::throw_coincident(i, j);
  const double signal = config.mark(i) * params.path_loss.from_squared(r2);
  const double* xj = config.position(j);
  double interference = 0.0;
  for (std::size_t k = 0; k < config.size(); ++k) {
    if (k == j) continue;
    if (k == i && params.convention == InterferenceConvention::ExcludeDesired) continue;
    const double rk2 = config.domain().squared_distance(config.position(k), xj);
    if (rk2 == 0.0) detail::throw_coincident(k, j);
    interference += config.mark(k) * params.path_loss.from_squared(rk2);
  }
  const double den = params.noise + params.gamma(config.mark(j)) * interference;
  if (den == 0.0) return INFINITY;
  return signal / den;
}

std::vector<double> received_power(const MarkedConfiguration& config, const PathLoss& path_loss,
                                   unsigned workers) {
  const std::size_t n = config.size();
  std::vector<double> total(n, 0.0);
  const DeviceDomain& domain = config.domain();
  parallel_for(n, workers, [&](std::size_t j) {
    const double* xj = config.position(j);
    double t = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const double r2 = domain.squared_distance(config.position(k), xj);
      if (r2 == 0.0) detail::throw_coincident(k, j);
      t += config.mark(k) * path_loss.from_squared(r2);
    }
    total[j] = t;
  });
  return total;
}

SinrGraph build_graph(const MarkedConfiguration& config, const SinrParams& params, unsigned workers) {
  params.validate();
  const std::size_t n = config.size();
  const std::vector<double> total = received_power(config, params.path_loss, workers);
  const std::vector<std::size_t> bounds = balanced_row_blocks(n, resolve_workers(workers));
  const std::size_t count = bounds.size() - 1;
  std::vector<std::vector<Edge>> parts(count);
  parallel_for(count, count, [&](std::size_t w) {
    for_each_sinr_edge(config, params, total, bounds[w], bounds[w + 1], [&](std::size_t i, std::size_t j) {
      parts[w].push_back(Edge{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    });
  });
  SinrGraph graph;
  graph.vertex_count = n;
  for (auto& part : parts) graph.edges.insert(graph.edges.end(), part.begin(), part.end());
  return graph;
}

SinrGraph build_graph_naive(const MarkedConfiguration& config, const SinrParams& params) {
  params.validate();
  SinrGraph graph;
  graph.vertex_count = config.size();
  for (std::size_t i = 0; i < config.size(); ++i) {
    for (std::size_t j = i + 1; j < config.size(); ++j) {
      if (sinr(config, i, j, params) >= params.tau(config.mark(j)) &&
          sinr(config, j, i, params) >= params.tau(config.mark(i))) {
        graph.edges.push_back(Edge{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
      }
    }
  }
  return graph;
}

std::string_view to_string(TauSplit split) {
  return split == TauSplit::GammaOne ? "gamma-one" : "balanced";
}

std::string_view to_string(InterferenceConvention convention) {
  return convention == InterferenceConvention::PaperLiteral ? "paper-literal" : "exclude-desired";
}

TauSplit parse_tau_split(std::string_view text) {
  if (text == "gamma-one") return TauSplit::GammaOne;
  if (text == "balanced") return TauSplit::Balanced;
  throw UsageError("tau_split must be gamma-one or balanced");
}

InterferenceConvention parse_convention(std::string_view text) {
  if (text == "paper-literal") return InterferenceConvention::PaperLiteral;
  if (text == "exclude-desired") return InterferenceConvention::ExcludeDesired;
  throw UsageError("convention must be paper-literal or exclude-desired");
}

}  // namespace sinrg
