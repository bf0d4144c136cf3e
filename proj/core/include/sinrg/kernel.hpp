#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <vector>

#include "sinrg/geometry.hpp"
#include "sinrg/pointprocess.hpp"
#include "sinrg/sinr_graph.hpp"

namespace sinrg {

// Constants entering the finite-lambda kernel R_lambda and its limit R.
// The Lebesgue intensity of the process is lambda / |D|.
struct KernelParams {
  DeviceDomain domain = DeviceDomain::box(2, 1.0);
  PathLoss path_loss{1.0};
  MarkLaw marks{1.0};
  BaseBeta beta0;
  double lambda = 1.0;
  double q_alpha = 0.0;

  double alpha() const { return path_loss.alpha(); }
  double density() const { return lambda / domain.volume(); }
  double tau_gamma(double mark) const { return beta0(mark) / (2.0 * lambda); }
};

// Validates alpha < d and caches q_alpha.
KernelParams make_kernel_params(const DeviceDomain& domain, double alpha, const MarkLaw& marks,
                                const BaseBeta& beta0, double lambda);

// F(u) = integral over D of dz / (1 + u ||z||^alpha), tabulated as a cubic
// spline of log F against log u. Outside the table range it falls back to
// direct quadrature.
class RadialKernelTable {
 public:
  RadialKernelTable(const DeviceDomain& domain, double alpha);
  ~RadialKernelTable();
  double operator()(double u) const;
  double direct(double u) const;

 private:
  struct Spline;
  DeviceDomain domain_;
  double alpha_;
  double t_min_;
  double t_max_;
  std::unique_ptr<Spline> spline_;
};

// Shared, lazily built table for (domain, alpha).
std::shared_ptr<const RadialKernelTable> radial_kernel_table(const DeviceDomain& domain, double alpha);

// Per-pair exponents (lambda/|D|) R_lambda tabulated on a uniform grid of
// w = dist^alpha for each level of the piecewise-constant beta0.
class ConnectionKernel {
 public:
  explicit ConnectionKernel(const KernelParams& params, std::size_t grid = 8192);

  const KernelParams& params() const { return params_; }
  std::size_t level(double mark) const { return params_.beta0.level(mark); }
  // dist^alpha from the squared distance.
  double alpha_power(double r2) const {
    if (alpha_ == 1.0) return std::sqrt(r2);
    if (alpha_ == 2.0) return r2;
    return std::pow(r2, 0.5 * alpha_);
  }
  // Half exponent (lambda/|D|) F(1 / (tau gamma_level w)).
  double half_exponent(double w, std::size_t level) const;
  double exponent_w(double w, std::size_t la, std::size_t lb) const {
    return half_exponent(w, la) + half_exponent(w, lb);
  }
  // Connection probability interpolated directly from a per-level-pair table.
  double probability_w(double w, std::size_t la, std::size_t lb) const {
    const auto& p = prob_[la * half_.size() + lb];
    const double x = w * inv_step_;
    if (x >= last_) return probability_far(w, la, lb);
    const std::size_t i = static_cast<std::size_t>(x);
    const double f = x - static_cast<double>(i);
    return p[i] + f * (p[i + 1] - p[i]);
  }
  double exponent(double dist, double sa, double sb) const;
  double probability(double dist, double sa, double sb) const;
  // Limit-kernel exponent R / |D| = q_alpha beta(a, b) dist^alpha / |D|.
  double limit_exponent(double dist, double sa, double sb) const;

 private:
  double half_exponent_direct(double w, std::size_t level) const;
  double probability_far(double w, std::size_t la, std::size_t lb) const;

  KernelParams params_;
  std::shared_ptr<const RadialKernelTable> table_;
  double alpha_;
  double w_max_;
  double step_;
  double inv_step_;
  double last_;
  std::vector<std::vector<double>> half_;  // per level
  std::vector<std::vector<double>> prob_;  // per ordered level pair
};

// Direct quadrature of the R_lambda integral.
double r_lambda(const double* x, double sx, const double* y, double sy, const KernelParams& params);
// exp(-(lambda / |D|) r_lambda); with |D| = 1 this is exp(-lambda r_lambda).
double p_lambda(const double* x, double sx, const double* y, double sy, const KernelParams& params);
// q_alpha beta(sx, sy) ||y - x||^alpha
double r_limit(const double* x, double sx, const double* y, double sy, const KernelParams& params);
double r_limit(double dist, double beta, double q_alpha, double alpha);

}  // namespace sinrg
