#pragma once

#include <Eigen/Dense>
#include <functional>

#include "ultrafn/basis.hpp"
#include "ultrafn/geometry.hpp"

namespace ultra {

/// A member of one space level, held by its basis coefficients.
struct Ultrafunction {
  SpaceLevel level;
  Eigen::VectorXd coeffs;

  Ultrafunction(SpaceLevel s, Eigen::VectorXd c);

  static Ultrafunction zero(const SpaceLevel& s);

  /// Pointwise value sum_i coeffs[i] * phi_i(p); exactly 0 on the boundary.
  double evaluate(const Point& p) const;

  /// L2 norm through the Gram matrix.
  double norm() const;
};

/// L2 inner product coeffs(u)^T * gram * coeffs(v); both on the same level.
double inner(const Ultrafunction& u, const Ultrafunction& v);

/// L2-orthogonal projection of f onto the level: the unique v in the span
/// with integral of (f - v)*phi_i equal to 0 for all i. For orthonormal
/// bases the coefficients reduce to c_i = integral of f*e_i.
Ultrafunction project(const SpaceLevel& s, const std::function<double(const Point&)>& f);

/// The reproducing element of point evaluation at q: the unique d in the
/// span with inner(d, v) = v(q) for every v. Identically zero when q is on
/// the boundary; q outside the closure is an error.
Ultrafunction delta_at(const SpaceLevel& s, const Point& q);

}  // namespace ultra
