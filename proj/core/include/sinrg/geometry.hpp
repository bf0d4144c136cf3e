#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sinrg {

class RandomStream;

enum class Shape { Box, Disk };
enum class Boundary { Open, Periodic };

// Axis-aligned box of side L or 2-D disk of radius R, centered at the origin.
// A periodic box measures distances by the minimum-image rule.
class DeviceDomain {
 public:
  static DeviceDomain box(int dim, double side, Boundary boundary = Boundary::Open);
  static DeviceDomain disk(double radius);
  static DeviceDomain unit_area_disk();

  int dim() const { return dim_; }
  Shape shape() const { return shape_; }
  Boundary boundary() const { return boundary_; }
  // Side length for boxes, radius for disks.
  double size() const { return size_; }
  double volume() const { return volume_; }
  bool periodic() const { return boundary_ == Boundary::Periodic; }

  bool contains(std::span<const double> p) const;
  // Domain-aware distance between two points of dimension dim().
  double distance(const double* p, const double* q) const;
  double squared_distance(const double* p, const double* q) const {
    double s = 0.0;
    if (boundary_ == Boundary::Periodic) {
      for (int k = 0; k < dim_; ++k) {
        const double dx = std::fabs(p[k] - q[k]);
        const double wrapped = std::min(dx, size_ - dx);
        s += wrapped * wrapped;
      }
    } else {
      for (int k = 0; k < dim_; ++k) {
        const double dx = p[k] - q[k];
        s += dx * dx;
      }
    }
    return s;
  }
  // Largest distance between two points of the domain.
  double max_distance() const;
  void sample_point(RandomStream& rng, double* out) const;

  std::string signature() const;
  bool operator==(const DeviceDomain&) const = default;

 private:
  DeviceDomain(int dim, Shape shape, double size, Boundary boundary);

  int dim_ = 2;
  Shape shape_ = Shape::Box;
  double size_ = 1.0;
  Boundary boundary_ = Boundary::Open;
  double volume_ = 1.0;
};

double distance(std::span<const double> p, std::span<const double> q);

class PathLoss {
 public:
  explicit PathLoss(double alpha);
  double alpha() const { return alpha_; }
  double operator()(double r) const;
  // r^{-alpha} from r^2, without the singularity check.
  double from_squared(double r2) const;

 private:
  double alpha_;
};

double path_loss(double r, double alpha);

// Integral of ||z||^{-alpha} over the domain (unnormalized Lebesgue measure).
double q_alpha(const DeviceDomain& domain, double alpha);
// Same integral over an axis-aligned box [lo, hi].
double q_alpha_box(std::span<const double> lo, std::span<const double> hi, double alpha);

using RadialFn = std::function<double(double)>;
using PointFn = std::function<double(std::span<const double>)>;

// Integral of g(||z||) over the domain. break_radius marks where g changes
// behaviour (0 if none); it only guides the subdivision.
double integrate_radial(const DeviceDomain& domain, const RadialFn& g, double break_radius = 0.0,
                        double rel_tol = 1e-10);

// Integral of f over the box [lo, hi]. Axes are split at 0 and every sub-box
// touching the origin is integrated as a union of pyramids with apex at the
// origin, so f may have an integrable singularity there.
double integrate_box(std::span<const double> lo, std::span<const double> hi, const PointFn& f,
                     double break_radius = 0.0, double rel_tol = 1e-10);

// F(u) = integral over D of 1 / (1 + u ||z||^alpha).
double radial_kernel_integral(const DeviceDomain& domain, double alpha, double u);

}  // namespace sinrg
