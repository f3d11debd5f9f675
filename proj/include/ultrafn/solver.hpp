#pragma once

#include <functional>
#include <optional>

#include "ultrafn/ultracore.hpp"

namespace ultra {

struct DirichletSolution {
  Ultrafunction u;
  std::optional<Point> q;   // set for point-source problems
  double elastic = 0.0;     // 1/2 * coeffs^T * stiffness * coeffs
  double point_value = 0.0; // u(q) when q is present
  double residual = 0.0;    // relative linear-system residual
};

/// Solves -laplace(u) = f in the level span with the pointwise Dirichlet
/// condition: stiffness * coeffs = b, b_i = integral of f*phi_i.
DirichletSolution solve_poisson(const SpaceLevel& s,
                                const std::function<double(const Point&)>& f);

/// Solves laplace(u) = delta_q in the level span: stiffness * coeffs =
/// -eval_basis(q). Orthonormal spectral coefficients are -e_i(q)/mu_i.
/// The solution is identically zero when q is on the boundary.
DirichletSolution solve_point_source(const SpaceLevel& s, const Point& q);

/// Max L2 distance between u_{q'} and u_q over a deterministic stencil of
/// probe points q' at distance `radius` from q. A continuity witness: the
/// returned modulus shrinks with the radius.
double continuity_probe(const SpaceLevel& s, const Point& q, double radius);

}  // namespace ultra
