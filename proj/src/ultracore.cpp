#include "ultrafn/ultracore.hpp"

#include <stdexcept>

namespace ultra {

Ultrafunction::Ultrafunction(SpaceLevel s, Eigen::VectorXd c)
    : level(std::move(s)), coeffs(std::move(c)) {
  if (coeffs.size() != level.size())
    throw std::invalid_argument("Ultrafunction: coefficient length does not match level dimension");
  if (!coeffs.allFinite())
    throw std::invalid_argument("Ultrafunction: non-finite coefficient");
}

Ultrafunction Ultrafunction::zero(const SpaceLevel& s) {
  return Ultrafunction(s, Eigen::VectorXd::Zero(s.size()));
}

double Ultrafunction::evaluate(const Point& p) const {
  return coeffs.dot(level.eval_basis(p));
}

double Ultrafunction::norm() const {
  return std::sqrt(coeffs.dot(level.gram() * coeffs));
}

double inner(const Ultrafunction& u, const Ultrafunction& v) {
  if (!u.level.same_level(v.level))
    throw std::invalid_argument("inner: operands live on different levels");
  return u.coeffs.dot(u.level.gram() * v.coeffs);
}

Ultrafunction project(const SpaceLevel& s, const std::function<double(const Point&)>& f) {
  const QuadratureRule& q = s.quadrature();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(s.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    b += (q.weights[i] * f(q.nodes[i])) * s.eval_basis(q.nodes[i]);
  return Ultrafunction(s, s.solve_gram(b));
}

Ultrafunction delta_at(const SpaceLevel& s, const Point& q) {
  if (s.domain().contains(q) == Membership::Exterior)
    throw std::invalid_argument("delta_at: q outside the closure");
  // gram * c = (phi_1(q), ..., phi_n(q)); boundary q gives the zero element
  return Ultrafunction(s, s.solve_gram(s.eval_basis(q)));
}

}  // namespace ultra
