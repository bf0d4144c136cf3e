#pragma once

#include <functional>
#include <vector>

namespace sinrg {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1].
const QuadratureRule& gauss_legendre(int n);
// n-point Gauss-Laguerre rule for weight e^{-x} on [0, inf).
QuadratureRule gauss_laguerre(int n);

using ScalarFn = std::function<double(double)>;

// Double-exponential quadrature; tolerates integrable endpoint singularities.
double integrate_tanh_sinh(const ScalarFn& f, double a, double b, double rel_tol = 1e-11);
// Adaptive Gauss-Kronrod for smooth integrands.
double integrate_kronrod(const ScalarFn& f, double a, double b, double rel_tol = 1e-11);
// Integral over [a, b] with 0 < a < b after the substitution x = e^t.
double integrate_log_scale(const ScalarFn& f, double a, double b, double rel_tol = 1e-11);

// Integral of f over [0, 1] where f may be singular at 0. When s_break lies
// in (0, 1) the interval is split there and the upper part is integrated on
// a logarithmic scale.
double ray_integral(const ScalarFn& f, double s_break, double rel_tol = 1e-11);

}  // namespace sinrg
