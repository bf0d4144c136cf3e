#include "sinrg/kernel.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "sinrg/error.hpp"
#include "sinrg/format.hpp"

namespace sinrg {

namespace {

constexpr double kTableMin = -25.0;
constexpr double kTableMax = 45.0;
constexpr double kTableStep = 0.05;

void require_integrable(const DeviceDomain& domain, double alpha) {
  if (!(alpha < domain.dim())) {
    throw DivergenceError("kernel integrals need alpha < d (alpha = " + format_double(alpha) +
                          ", d = " + std::to_string(domain.dim()) + ")");
  }
}

}  // namespace

KernelParams make_kernel_params(const DeviceDomain& domain, double alpha, const MarkLaw& marks,
                                const BaseBeta& beta0, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw UsageError("intensity lambda must be positive");
  KernelParams p;
  p.domain = domain;
  p.path_loss = PathLoss(alpha);
  require_integrable(domain, alpha);
  p.marks = marks;
  p.beta0 = beta0;
  p.lambda = lambda;
  p.q_alpha = q_alpha(domain, alpha);
  return p;
}

struct RadialKernelTable::Spline {
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline;
};

RadialKernelTable::RadialKernelTable(const DeviceDomain& domain, double alpha)
    : domain_(domain), alpha_(alpha), t_min_(kTableMin), t_max_(kTableMax) {
  require_integrable(domain, alpha);
  const int n = static_cast<int>(std::lround((kTableMax - kTableMin) / kTableStep)) + 1;
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) {
    values[i] = std::log(direct(std::exp(kTableMin + kTableStep * i)));
  }
  spline_ = std::make_unique<Spline>(
      Spline{boost::math::interpolators::cardinal_cubic_b_spline<double>(values.begin(), values.end(), kTableMin,
                                                                          kTableStep)});
}

RadialKernelTable::~RadialKernelTable() = default;

double RadialKernelTable::direct(double u) const { return radial_kernel_integral(domain_, alpha_, u); }

double RadialKernelTable::operator()(double u) const {
  if (u == 0.0) return domain_.volume();
  if (std::isinf(u)) return 0.0;
  const double t = std::log(u);
  if (t < t_min_ || t > t_max_) return direct(u);
  return std::exp(spline_->spline(t));
}

std::shared_ptr<const RadialKernelTable> radial_kernel_table(const DeviceDomain& domain, double alpha) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const RadialKernelTable>> cache;
  const std::string key = domain.signature() + "|" + format_double(alpha);
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const RadialKernelTable>(domain, alpha);
  cache.emplace(key, table);
  return table;
}

ConnectionKernel::ConnectionKernel(const KernelParams& params, std::size_t grid)
    : params_(params), table_(radial_kernel_table(params.domain, params.alpha())) {
  if (grid < 2) throw UsageError("kernel grid needs at least two points");
  alpha_ = params.alpha();
  w_max_ = std::pow(params.domain.max_distance(), alpha_) * (1.0 + 1e-9);
  step_ = w_max_ / static_cast<double>(grid);
  inv_step_ = 1.0 / step_;
  last_ = static_cast<double>(grid);
  const auto& values = params.beta0.values();
  half_.resize(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    half_[k].resize(grid + 1);
    for (std::size_t i = 0; i <= grid; ++i) half_[k][i] = half_exponent_direct(step_ * i, k);
  }
  const std::size_t levels = values.size();
  prob_.resize(levels * levels);
  for (std::size_t a = 0; a < levels; ++a) {
    for (std::size_t b = 0; b < levels; ++b) {
      auto& p = prob_[a * levels + b];
      p.resize(grid + 1);
      for (std::size_t i = 0; i <= grid; ++i) p[i] = std::exp(-(half_[a][i] + half_[b][i]));
    }
  }
}

double ConnectionKernel::probability_far(double w, std::size_t la, std::size_t lb) const {
  return std::exp(-(half_exponent_direct(w, la) + half_exponent_direct(w, lb)));
}

double ConnectionKernel::half_exponent_direct(double w, std::size_t level) const {
  const double tg = params_.beta0.values()[level] / (2.0 * params_.lambda);
  if (tg == 0.0 || w == 0.0) return 0.0;
  return params_.density() * (*table_)(1.0 / (tg * w));
}

double ConnectionKernel::half_exponent(double w, std::size_t level) const {
  const double x = w / step_;
  const auto& h = half_[level];
  if (x >= static_cast<double>(h.size() - 1)) return half_exponent_direct(w, level);
  const std::size_t i = static_cast<std::size_t>(x);
  const double f = x - static_cast<double>(i);
  return h[i] + f * (h[i + 1] - h[i]);
}

double ConnectionKernel::exponent(double dist, double sa, double sb) const {
  return exponent_w(alpha_power(dist * dist), level(sa), level(sb));
}

double ConnectionKernel::probability(double dist, double sa, double sb) const {
  return std::exp(-exponent(dist, sa, sb));
}

double ConnectionKernel::limit_exponent(double dist, double sa, double sb) const {
  return r_limit(dist, pair_beta(params_.beta0, sa, sb), params_.q_alpha, params_.alpha()) /
         params_.domain.volume();
}

double r_lambda(const double* x, double sx, const double* y, double sy, const KernelParams& params) {
  require_integrable(params.domain, params.alpha());
  const double dist = params.domain.distance(x, y);
  if (dist == 0.0) return 0.0;
  const double w = std::pow(dist, params.alpha());
  auto term = [&](double mark) {
    const double tg = params.tau_gamma(mark);
    if (tg == 0.0) return 0.0;
    return radial_kernel_integral(params.domain, params.alpha(), 1.0 / (tg * w));
  };
  return term(sx) + term(sy);
}

double p_lambda(const double* x, double sx, const double* y, double sy, const KernelParams& params) {
  return std::exp(-params.density() * r_lambda(x, sx, y, sy, params));
}

double r_limit(const double* x, double sx, const double* y, double sy, const KernelParams& params) {
  return r_limit(params.domain.distance(x, y), pair_beta(params.beta0, sx, sy), params.q_alpha, params.alpha());
}

double r_limit(double dist, double beta, double q_alpha, double alpha) {
  if (beta == 0.0 || dist == 0.0) return 0.0;
  return q_alpha * beta * std::pow(dist, alpha);
}

}  // namespace sinrg
