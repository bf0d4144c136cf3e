#include "sinrg/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "sinrg/error.hpp"

namespace sinrg {

namespace {

QuadratureRule make_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (x * p1 - p2) / (x * x - 1.0);
      const double x1 = x;
      x = x1 - p1 / pp;
      if (std::fabs(x - x1) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  if (n < 1) throw UsageError("Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

QuadratureRule gauss_laguerre(int n) {
  if (n < 1) throw UsageError("Gauss-Laguerre order must be positive");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - rule.nodes[i - 2]);
    }
    double pp = 0.0, p2 = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      double p1 = 1.0;
      p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2 * j + 1 - z) * p2 - j * p3) / (j + 1);
      }
      pp = (n * p1 - n * p2) / z;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= 1e-15 * std::fabs(z)) break;
    }
    rule.nodes[i] = z;
    rule.weights[i] = -1.0 / (pp * n * p2);
  }
  return rule;
}

double integrate_tanh_sinh(const ScalarFn& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
  double err = 0.0;
  double l1 = 0.0;
  return integrator.integrate(f, a, b, rel_tol, &err, &l1);
}

double integrate_kronrod(const ScalarFn& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, rel_tol, &err);
}

double integrate_log_scale(const ScalarFn& f, double a, double b, double rel_tol) {
  if (!(a > 0.0) || !(b > a)) throw UsageError("log-scale integration needs 0 < a < b");
  auto g = [&](double t) {
    const double x = std::exp(t);
    return f(x) * x;
  };
  return integrate_kronrod(g, std::log(a), std::log(b), rel_tol);
}

double ray_integral(const ScalarFn& f, double s_break, double rel_tol) {
  // Nodes can land within a few ulps of the singular endpoint, where the
  // product s^(d-1) f(s) overflows even though the integral is finite.
  auto guarded = [&f](double s) {
    const double v = f(s);
    return std::isfinite(v) ? v : 0.0;
  };
  if (!(s_break > 0.0) || s_break >= 1.0) return integrate_tanh_sinh(guarded, 0.0, 1.0, rel_tol);
  return integrate_tanh_sinh(guarded, 0.0, s_break, rel_tol) + integrate_log_scale(f, s_break, 1.0, rel_tol);
}

}  // namespace sinrg
