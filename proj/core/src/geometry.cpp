#include "sinrg/geometry.hpp"

#include <cmath>
#include <numbers>

#include "sinrg/error.hpp"
#include "sinrg/format.hpp"
#include "sinrg/quadrature.hpp"
#include "sinrg/random.hpp"

namespace sinrg {

namespace {

constexpr int kGaussOrder = 8;
constexpr int kMaxLevel1d = 12;
constexpr int kMaxLevelNd = 6;

// Composite Gauss-Legendre over [lo, hi] with 2^level panels per axis.
double tensor_gauss(const std::vector<double>& lo, const std::vector<double>& hi, const PointFn& f,
                    int level) {
  const std::size_t dim = lo.size();
  if (dim == 0) return f(std::span<const double>());
  const auto& rule = gauss_legendre(kGaussOrder);
  const std::size_t panels = std::size_t{1} << level;
  const std::size_t per_axis = panels * kGaussOrder;
  std::vector<std::vector<double>> x(dim), w(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double h = (hi[k] - lo[k]) / static_cast<double>(panels);
    x[k].reserve(per_axis);
    w[k].reserve(per_axis);
    for (std::size_t p = 0; p < panels; ++p) {
      const double a = lo[k] + h * static_cast<double>(p);
      for (int i = 0; i < kGaussOrder; ++i) {
        x[k].push_back(a + 0.5 * h * (rule.nodes[i] + 1.0));
        w[k].push_back(0.5 * h * rule.weights[i]);
      }
    }
  }
  std::vector<std::size_t> idx(dim, 0);
  std::vector<double> point(dim);
  double total = 0.0;
  for (;;) {
    double weight = 1.0;
    for (std::size_t k = 0; k < dim; ++k) {
      point[k] = x[k][idx[k]];
      weight *= w[k][idx[k]];
    }
    total += weight * f(point);
    std::size_t k = 0;
    while (k < dim && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == dim) break;
  }
  return total;
}

double refine_tensor(const std::vector<double>& lo, const std::vector<double>& hi, const PointFn& f,
                     double rel_tol) {
  if (lo.empty()) return f(std::span<const double>());
  const int max_level = lo.size() == 1 ? kMaxLevel1d : kMaxLevelNd;
  double previous = tensor_gauss(lo, hi, f, 0);
  for (int level = 1; level <= max_level; ++level) {
    const double current = tensor_gauss(lo, hi, f, level);
    if (std::fabs(current - previous) <= rel_tol * std::fabs(current) + 1e-300) return current;
    previous = current;
  }
  return previous;
}

// Integral of f over the box with one corner at the origin, extents a_k >= 0
// along directions sign_k. Decomposed into d pyramids with apex at the origin.
double corner_box(const std::vector<double>& extent, const std::vector<double>& sign, const PointFn& f,
                  double break_radius, double rel_tol) {
  const std::size_t dim = extent.size();
  for (double a : extent) {
    if (a <= 0.0) return 0.0;
  }
  double total = 0.0;
  std::vector<double> z(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<double> lo(dim - 1, 0.0), hi;
    for (std::size_t j = 0; j < dim; ++j) {
      if (j != k) hi.push_back(extent[j]);
    }
    auto face = [&](std::span<const double> t) {
      std::vector<double> full(dim);
      std::size_t m = 0;
      double norm2 = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        full[j] = j == k ? extent[k] : t[m++];
        norm2 += full[j] * full[j];
      }
      const double norm = std::sqrt(norm2);
      auto ray = [&](double s) {
        std::vector<double> p(dim);
        for (std::size_t j = 0; j < dim; ++j) p[j] = sign[j] * s * full[j];
        return std::pow(s, static_cast<double>(dim) - 1.0) * f(p);
      };
      const double s_break = break_radius > 0.0 ? break_radius / norm : 0.0;
      return ray_integral(ray, s_break, rel_tol * 0.1);
    };
    total += extent[k] * refine_tensor(lo, hi, face, rel_tol);
  }
  return total;
}

double check_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw UsageError(std::string(what) + " must be positive and finite");
  return x;
}

}  // namespace

DeviceDomain::DeviceDomain(int dim, Shape shape, double size, Boundary boundary)
    : dim_(dim), shape_(shape), size_(size), boundary_(boundary) {
  if (shape == Shape::Box) {
    volume_ = std::pow(size, dim);
  } else {
    volume_ = std::numbers::pi * size * size;
  }
}

DeviceDomain DeviceDomain::box(int dim, double side, Boundary boundary) {
  if (dim < 1) throw UsageError("domain dimension must be at least 1");
  check_positive(side, "box side length");
  return DeviceDomain(dim, Shape::Box, side, boundary);
}

DeviceDomain DeviceDomain::disk(double radius) {
  check_positive(radius, "disk radius");
  return DeviceDomain(2, Shape::Disk, radius, Boundary::Open);
}

DeviceDomain DeviceDomain::unit_area_disk() { return disk(1.0 / std::sqrt(std::numbers::pi)); }

bool DeviceDomain::contains(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != dim_) throw UsageError("point dimension does not match the domain");
  if (shape_ == Shape::Disk) return p[0] * p[0] + p[1] * p[1] <= size_ * size_;
  const double h = 0.5 * size_;
  for (double x : p) {
    if (std::fabs(x) > h) return false;
  }
  return true;
}

double DeviceDomain::distance(const double* p, const double* q) const {
  return std::sqrt(squared_distance(p, q));
}

double DeviceDomain::max_distance() const {
  if (shape_ == Shape::Disk) return 2.0 * size_;
  const double diag = size_ * std::sqrt(static_cast<double>(dim_));
  return boundary_ == Boundary::Periodic ? 0.5 * diag : diag;
}

void DeviceDomain::sample_point(RandomStream& rng, double* out) const {
  if (shape_ == Shape::Disk) {
    const double r = size_ * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    out[0] = r * std::cos(theta);
    out[1] = r * std::sin(theta);
    return;
  }
  for (int k = 0; k < dim_; ++k) out[k] = (rng.uniform() - 0.5) * size_;
}

std::string DeviceDomain::signature() const {
  std::string s = shape_ == Shape::Box ? "box" : "disk";
  s += "(d=" + std::to_string(dim_) + "," + (shape_ == Shape::Box ? "L=" : "R=") + format_double(size_);
  if (boundary_ == Boundary::Periodic) s += ",periodic";
  return s + ")";
}

double distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw UsageError("distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double dx = p[k] - q[k];
    s += dx * dx;
  }
  return std::sqrt(s);
}

PathLoss::PathLoss(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw UsageError("path-loss exponent alpha must be positive");
}

double PathLoss::operator()(double r) const { return path_loss(r, alpha_); }

double PathLoss::from_squared(double r2) const {
  if (alpha_ == 2.0) return 1.0 / r2;
  if (alpha_ == 1.0) return 1.0 / std::sqrt(r2);
  if (alpha_ == 4.0) return 1.0 / (r2 * r2);
  return std::pow(r2, -0.5 * alpha_);
}

double path_loss(double r, double alpha) {
  if (!(alpha > 0.0)) throw UsageError("path-loss exponent alpha must be positive");
  if (r == 0.0) throw SingularityError("path loss is singular at r = 0");
  if (!(r > 0.0)) throw UsageError("path loss needs r > 0");
  if (alpha == 2.0) return 1.0 / (r * r);
  if (alpha == 1.0) return 1.0 / r;
  return std::pow(r, -alpha);
}

double integrate_radial(const DeviceDomain& domain, const RadialFn& g, double break_radius, double rel_tol) {
  const int d = domain.dim();
  if (domain.shape() == Shape::Disk) {
    const double radius = domain.size();
    auto ray = [&](double s) { return s * g(s * radius); };
    const double s_break = break_radius > 0.0 ? break_radius / radius : 0.0;
    return 2.0 * std::numbers::pi * radius * radius * ray_integral(ray, s_break, rel_tol * 0.1);
  }
  // Centered box: 2^d orthants, each a union of d congruent pyramids.
  const double h = 0.5 * domain.size();
  std::vector<double> lo(d - 1, 0.0), hi(d - 1, h);
  auto face = [&](std::span<const double> t) {
    double norm2 = h * h;
    for (double x : t) norm2 += x * x;
    const double norm = std::sqrt(norm2);
    auto ray = [&](double s) { return std::pow(s, d - 1) * g(s * norm); };
    const double s_break = break_radius > 0.0 ? break_radius / norm : 0.0;
    return ray_integral(ray, s_break, rel_tol * 0.1);
  };
  return std::ldexp(1.0, d) * d * h * refine_tensor(lo, hi, face, rel_tol);
}

double integrate_box(std::span<const double> lo, std::span<const double> hi, const PointFn& f,
                     double break_radius, double rel_tol) {
  if (lo.size() != hi.size() || lo.empty()) throw UsageError("integrate_box: bad bounds");
  const std::size_t dim = lo.size();
  std::vector<std::vector<std::pair<double, double>>> pieces(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    if (!(lo[k] <= hi[k])) throw UsageError("integrate_box: lower bound exceeds upper bound");
    if (lo[k] < 0.0 && hi[k] > 0.0) {
      pieces[k] = {{lo[k], 0.0}, {0.0, hi[k]}};
    } else {
      pieces[k] = {{lo[k], hi[k]}};
    }
  }
  double total = 0.0;
  std::vector<std::size_t> idx(dim, 0);
  for (;;) {
    std::vector<double> a(dim), b(dim);
    bool at_origin = true;
    bool empty = false;
    for (std::size_t k = 0; k < dim; ++k) {
      a[k] = pieces[k][idx[k]].first;
      b[k] = pieces[k][idx[k]].second;
      if (a[k] == b[k]) empty = true;
      if (!(a[k] == 0.0 || b[k] == 0.0)) at_origin = false;
    }
    if (!empty) {
      if (at_origin) {
        std::vector<double> extent(dim), sign(dim);
        for (std::size_t k = 0; k < dim; ++k) {
          extent[k] = b[k] - a[k];
          sign[k] = a[k] == 0.0 ? 1.0 : -1.0;
        }
        total += corner_box(extent, sign, f, break_radius, rel_tol);
      } else {
        total += refine_tensor(a, b, f, rel_tol);
      }
    }
    std::size_t k = 0;
    while (k < dim && ++idx[k] == pieces[k].size()) idx[k++] = 0;
    if (k == dim) break;
  }
  return total;
}

double q_alpha(const DeviceDomain& domain, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw UsageError("q_alpha: alpha must be nonnegative");
  if (alpha >= domain.dim()) {
    throw DivergenceError("q_alpha diverges: alpha < d is required when the origin lies in D");
  }
  if (alpha == 0.0) return domain.volume();
  return integrate_radial(domain, [alpha](double r) { return std::pow(r, -alpha); }, 0.0, 1e-11);
}

double q_alpha_box(std::span<const double> lo, std::span<const double> hi, double alpha) {
  if (lo.size() != hi.size() || lo.empty()) throw UsageError("q_alpha_box: bad bounds");
  bool origin_inside = true;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (lo[k] > 0.0 || hi[k] < 0.0) origin_inside = false;
  }
  if (origin_inside && alpha >= static_cast<double>(lo.size())) {
    throw DivergenceError("q_alpha diverges: alpha < d is required when the origin lies in the box");
  }
  auto f = [alpha](std::span<const double> z) {
    double n2 = 0.0;
    for (double x : z) n2 += x * x;
    return std::pow(n2, -0.5 * alpha);
  };
  return integrate_box(lo, hi, f, 0.0, 1e-12);
}

double radial_kernel_integral(const DeviceDomain& domain, double alpha, double u) {
  if (!(alpha > 0.0)) throw UsageError("alpha must be positive");
  if (!(u >= 0.0)) throw UsageError("kernel scale u must be nonnegative");
  if (u == 0.0) return domain.volume();
  if (std::isinf(u)) return 0.0;
  auto g = [alpha, u](double r) { return 1.0 / (1.0 + u * std::pow(r, alpha)); };
  return integrate_radial(domain, g, std::pow(u, -1.0 / alpha), 1e-10);
}

}  // namespace sinrg
