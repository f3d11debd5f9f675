#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ultra {

/// A point in 1 or 2 dimensions. Coordinates beyond dim are unused.
struct Point {
  std::array<double, 2> coords{0.0, 0.0};
  int dim = 1;

  Point() = default;
  explicit Point(double x) : coords{x, 0.0}, dim(1) {}
  Point(double x, double y) : coords{x, y}, dim(2) {}

  double operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return coords[static_cast<std::size_t>(i)]; }

  bool finite() const {
    for (int i = 0; i < dim; ++i)
      if (!std::isfinite(coords[static_cast<std::size_t>(i)])) return false;
    return true;
  }
};

enum class Membership { Interior, Boundary, Exterior };

/// Open axis-aligned rectangle in dimension 1 or 2.
class Domain {
 public:
  Domain(int dim, std::array<double, 2> lower, std::array<double, 2> upper)
      : dim_(dim), lower_(lower), upper_(upper) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("Domain: dim must be 1 or 2");
    for (int i = 0; i < dim; ++i) {
      if (!(lower_[static_cast<std::size_t>(i)] < upper_[static_cast<std::size_t>(i)]))
        throw std::invalid_argument("Domain: lower[" + std::to_string(i) +
                                    "] must be < upper[" + std::to_string(i) + "]");
    }
  }

  static Domain interval(double a, double b) { return Domain(1, {a, 0.0}, {b, 0.0}); }
  static Domain rectangle(double ax, double bx, double ay, double by) {
    return Domain(2, {ax, ay}, {bx, by});
  }
  static Domain unit_interval() { return interval(0.0, 1.0); }
  static Domain unit_square() { return rectangle(0.0, 1.0, 0.0, 1.0); }

  int dim() const { return dim_; }
  double lower(int axis) const { return lower_[static_cast<std::size_t>(axis)]; }
  double upper(int axis) const { return upper_[static_cast<std::size_t>(axis)]; }
  double length(int axis) const { return upper(axis) - lower(axis); }

  /// Exact classification on the given floating-point coordinates, no tolerance.
  Membership contains(const Point& p) const {
    check_dim(p);
    bool on_face = false;
    for (int i = 0; i < dim_; ++i) {
      const double x = p[i];
      if (x < lower(i) || x > upper(i)) return Membership::Exterior;
      if (x == lower(i) || x == upper(i)) on_face = true;
    }
    return on_face ? Membership::Boundary : Membership::Interior;
  }

  /// Distance to the boundary for a point in the closure.
  double boundary_distance(const Point& p) const {
    check_dim(p);
    if (contains(p) == Membership::Exterior)
      throw std::invalid_argument("boundary_distance: point exterior to the closure");
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim_; ++i)
      d = std::min(d, std::min(p[i] - lower(i), upper(i) - p[i]));
    return d;
  }

  Point center() const {
    Point p;
    p.dim = dim_;
    for (int i = 0; i < dim_; ++i) p[i] = 0.5 * (lower(i) + upper(i));
    return p;
  }

  bool operator==(const Domain& o) const {
    if (dim_ != o.dim_) return false;
    for (int i = 0; i < dim_; ++i)
      if (lower(i) != o.lower(i) || upper(i) != o.upper(i)) return false;
    return true;
  }

 private:
  void check_dim(const Point& p) const {
    if (p.dim != dim_)
      throw std::invalid_argument("point dimension " + std::to_string(p.dim) +
                                  " does not match domain dimension " + std::to_string(dim_));
  }

  int dim_;
  std::array<double, 2> lower_;
  std::array<double, 2> upper_;
};

}  // namespace ultra
