#include "ultrafn/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ultra {

namespace {

DirichletSolution finish(const SpaceLevel& s, Eigen::VectorXd coeffs,
                         const Eigen::VectorXd& rhs, std::optional<Point> q) {
  DirichletSolution sol{Ultrafunction(s, std::move(coeffs)), q};
  const Eigen::VectorXd ku = s.stiffness() * sol.u.coeffs;
  sol.elastic = 0.5 * sol.u.coeffs.dot(ku);
  const double bn = rhs.norm();
  sol.residual = bn == 0.0 ? 0.0 : (ku - rhs).norm() / bn;
  if (q) sol.point_value = sol.u.evaluate(*q);
  return sol;
}

}  // namespace

DirichletSolution solve_poisson(const SpaceLevel& s,
                                const std::function<double(const Point&)>& f) {
  const QuadratureRule& q = s.quadrature();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(s.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    b += (q.weights[i] * f(q.nodes[i])) * s.eval_basis(q.nodes[i]);
  return finish(s, s.solve_stiffness(b), b, std::nullopt);
}

DirichletSolution solve_point_source(const SpaceLevel& s, const Point& q) {
  if (s.domain().contains(q) == Membership::Exterior)
    throw std::invalid_argument("solve_point_source: q outside the closure");
  // sign convention laplace(u) = delta_q: stiffness * u = -k(q)
  const Eigen::VectorXd b = -s.eval_basis(q);
  return finish(s, s.solve_stiffness(b), b, q);
}

double continuity_probe(const SpaceLevel& s, const Point& q, double radius) {
  const Domain& d = s.domain();
  if (d.contains(q) != Membership::Interior)
    throw std::invalid_argument("continuity_probe: q must be interior");
  if (radius < 0.0) throw std::invalid_argument("continuity_probe: negative radius");
  if (radius >= d.boundary_distance(q))
    throw std::invalid_argument("continuity_probe: radius reaches the boundary");
  if (radius == 0.0) return 0.0;

  std::vector<Point> probes;
  for (int ax = 0; ax < d.dim(); ++ax) {
    for (double sgn : {-1.0, 1.0}) {
      Point p = q;
      p[ax] += sgn * radius;
      probes.push_back(p);
    }
  }
  if (d.dim() == 2) {
    const double r = radius / std::sqrt(2.0);
    for (double sx : {-1.0, 1.0})
      for (double sy : {-1.0, 1.0}) {
        Point p = q;
        p[0] += sx * r;
        p[1] += sy * r;
        probes.push_back(p);
      }
  }

  const DirichletSolution base = solve_point_source(s, q);
  double worst = 0.0;
  for (const Point& p : probes) {
    const DirichletSolution other = solve_point_source(s, p);
    const Eigen::VectorXd diff = other.u.coeffs - base.u.coeffs;
    worst = std::max(worst, std::sqrt(diff.dot(s.gram() * diff)));
  }
  return worst;
}

}  // namespace ultra
