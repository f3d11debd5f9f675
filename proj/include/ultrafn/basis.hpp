#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ultrafn/geometry.hpp"
#include "ultrafn/quadrature.hpp"

namespace ultra {

enum class FamilyKind { SpectralSine, FemP1 };

std::string family_name(FamilyKind k);
FamilyKind family_from_name(const std::string& name);

struct BasisFamily {
  FamilyKind kind = FamilyKind::SpectralSine;
};

/// One finite-dimensional level of the generating chain: Dirichlet basis
/// functions on the domain with their Gram and stiffness matrices, cached
/// SPD factorizations, and a quadrature rule exact (to rounding) for
/// products of basis functions.
///
/// Value-semantic handle; cheap to copy and safe to share across threads
/// once built.
class SpaceLevel {
 public:
  /// Builds level `level` of the nested chain: spectral-sine uses all tensor
  /// modes with max index <= level (n = level in 1D, level^2 in 2D); fem-p1
  /// uses a uniform mesh with 2^level cells per axis.
  static SpaceLevel build(const Domain& d, const BasisFamily& f, int level,
                          int max_n = kDefaultMaxN, int quad_override = 0);

  /// Direct construction from a per-axis resolution (modes per axis for
  /// spectral-sine, cells per axis for fem-p1).
  static SpaceLevel from_resolution(const Domain& d, FamilyKind kind, int resolution,
                                    int max_n = kDefaultMaxN, int quad_override = 0);

  static constexpr int kDefaultMaxN = 40000;

  const Domain& domain() const;
  FamilyKind kind() const;
  int level() const;       // chain index (equals resolution for spectral-sine)
  int resolution() const;  // modes per axis / cells per axis
  int size() const;        // basis dimension n

  /// (phi_1(p), ..., phi_n(p)); exactly zero on the boundary.
  Eigen::VectorXd eval_basis(const Point& p) const;

  /// n x dim matrix of basis gradients; spectral families only.
  Eigen::MatrixXd eval_basis_grad(const Point& p) const;

  const Eigen::SparseMatrix<double>& gram() const;
  const Eigen::SparseMatrix<double>& stiffness() const;
  const QuadratureRule& quadrature() const;

  /// Quadrature approximation of the integral of g over the domain.
  double integrate(const std::function<double(const Point&)>& g) const;

  /// Solves gram * x = b (SPD factorization, residual-checked).
  Eigen::VectorXd solve_gram(const Eigen::VectorXd& b) const;
  /// Solves stiffness * x = b (SPD factorization, residual-checked).
  Eigen::VectorXd solve_stiffness(const Eigen::VectorXd& b) const;

  /// Stiffness diagonal entries mu_k for spectral families.
  const Eigen::VectorXd& spectral_eigenvalues() const;

  /// Tensor mode indices (spectral) in basis order.
  const std::vector<std::array<int, 2>>& mode_indices() const;
  /// Mesh node coordinates (fem) in basis order.
  const std::vector<Point>& node_coords() const;

  bool same_level(const SpaceLevel& other) const { return impl_ == other.impl_; }

  struct Impl;  // opaque; defined in basis.cpp

 private:
  std::shared_ptr<const Impl> impl_;
  explicit SpaceLevel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

}  // namespace ultra
