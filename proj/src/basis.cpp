#include "ultrafn/basis.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ultra {

std::string family_name(FamilyKind k) {
  return k == FamilyKind::SpectralSine ? "spectral-sine" : "fem-p1";
}

FamilyKind family_from_name(const std::string& name) {
  if (name == "spectral-sine") return FamilyKind::SpectralSine;
  if (name == "fem-p1") return FamilyKind::FemP1;
  throw std::invalid_argument("unknown basis family '" + name +
                              "' (expected spectral-sine or fem-p1)");
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// 1D P1 mass/stiffness on a uniform Dirichlet mesh with `cells` cells.
void fem1d_matrices(double h, int cells, SpMat& mass, SpMat& stiff) {
  const int n = cells - 1;
  std::vector<Triplet> tm, tk;
  for (int i = 0; i < n; ++i) {
    tm.emplace_back(i, i, 2.0 * h / 3.0);
    tk.emplace_back(i, i, 2.0 / h);
    if (i + 1 < n) {
      tm.emplace_back(i, i + 1, h / 6.0);
      tm.emplace_back(i + 1, i, h / 6.0);
      tk.emplace_back(i, i + 1, -1.0 / h);
      tk.emplace_back(i + 1, i, -1.0 / h);
    }
  }
  mass.resize(n, n);
  stiff.resize(n, n);
  mass.setFromTriplets(tm.begin(), tm.end());
  stiff.setFromTriplets(tk.begin(), tk.end());
}

SpMat kron(const SpMat& a, const SpMat& b) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros()) * static_cast<std::size_t>(b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SpMat::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SpMat::InnerIterator ib(b, kb); ib; ++ib)
          t.emplace_back(static_cast<int>(ia.row()) * b.rows() + static_cast<int>(ib.row()),
                         static_cast<int>(ia.col()) * b.cols() + static_cast<int>(ib.col()),
                         ia.value() * ib.value());
  SpMat r(a.rows() * b.rows(), a.cols() * b.cols());
  r.setFromTriplets(t.begin(), t.end());
  return r;
}

}  // namespace

struct SpaceLevel::Impl {
  Domain domain;
  FamilyKind kind;
  int level = 0;
  int resolution = 0;
  int n = 0;

  SpMat gram;
  SpMat stiffness;
  Eigen::VectorXd mu;  // stiffness diagonal, spectral only
  std::vector<std::array<int, 2>> modes;
  std::vector<Point> nodes;
  QuadratureRule quad;

  Eigen::SimplicialLLT<SpMat> gram_llt;
  Eigen::SimplicialLLT<SpMat> stiff_llt;

  explicit Impl(const Domain& d) : domain(d) {}

  Eigen::VectorXd solve_checked(const Eigen::SimplicialLLT<SpMat>& llt, const SpMat& a,
                                const Eigen::VectorXd& b, const char* what) const {
    const double bnorm = b.norm();
    if (bnorm == 0.0) return Eigen::VectorXd::Zero(n);
    Eigen::VectorXd x = llt.solve(b);
    const double res = (a * x - b).norm() / bnorm;
    if (!(res <= 1e-10))
      throw std::runtime_error(std::string(what) + ": relative residual " +
                               std::to_string(res) + " exceeds 1e-10");
    return x;
  }
};

namespace {

std::shared_ptr<SpaceLevel::Impl> build_spectral(const Domain& d, int modes_per_axis,
                                                 int level, int max_n, int quad_override) {
  auto impl = std::make_shared<SpaceLevel::Impl>(d);
  impl->kind = FamilyKind::SpectralSine;
  impl->level = level;
  impl->resolution = modes_per_axis;
  const int dim = d.dim();
  const long n_long = dim == 1 ? modes_per_axis : static_cast<long>(modes_per_axis) * modes_per_axis;
  if (n_long > max_n)
    throw std::runtime_error("resource limit exceeded: n=" + std::to_string(n_long) +
                             " > max_n=" + std::to_string(max_n));
  impl->n = static_cast<int>(n_long);

  // modes ordered by (index sum, then axis indices)
  for (int i = 1; i <= modes_per_axis; ++i) {
    if (dim == 1) {
      impl->modes.push_back({i, 0});
    } else {
      for (int j = 1; j <= modes_per_axis; ++j) impl->modes.push_back({i, j});
    }
  }
  std::sort(impl->modes.begin(), impl->modes.end(),
            [](const std::array<int, 2>& a, const std::array<int, 2>& b) {
              const int sa = a[0] + a[1], sb = b[0] + b[1];
              if (sa != sb) return sa < sb;
              return a < b;
            });

  impl->mu.resize(impl->n);
  for (int k = 0; k < impl->n; ++k) {
    double m = 0.0;
    for (int ax = 0; ax < dim; ++ax) {
      const double r = impl->modes[static_cast<std::size_t>(k)][static_cast<std::size_t>(ax)] /
                       d.length(ax);
      m += r * r;
    }
    impl->mu[k] = M_PI * M_PI * m;
  }

  std::vector<Triplet> tg, tk;
  for (int k = 0; k < impl->n; ++k) {
    tg.emplace_back(k, k, 1.0);
    tk.emplace_back(k, k, impl->mu[k]);
  }
  impl->gram.resize(impl->n, impl->n);
  impl->stiffness.resize(impl->n, impl->n);
  impl->gram.setFromTriplets(tg.begin(), tg.end());
  impl->stiffness.setFromTriplets(tk.begin(), tk.end());

  // rule exact (to rounding) for products of the two highest modes
  const int ppa = quad_override > 0 ? quad_override : 2 * modes_per_axis + 12;
  impl->quad = QuadratureRule::tensor(d, ppa);
  return impl;
}

std::shared_ptr<SpaceLevel::Impl> build_fem(const Domain& d, int cells, int level, int max_n,
                                            int quad_override) {
  if (cells < 2) throw std::invalid_argument("fem-p1: cells per axis must be >= 2");
  auto impl = std::make_shared<SpaceLevel::Impl>(d);
  impl->kind = FamilyKind::FemP1;
  impl->level = level;
  impl->resolution = cells;
  const int dim = d.dim();
  const int n1 = cells - 1;
  const long n_long = dim == 1 ? n1 : static_cast<long>(n1) * n1;
  if (n_long > max_n)
    throw std::runtime_error("resource limit exceeded: n=" + std::to_string(n_long) +
                             " > max_n=" + std::to_string(max_n));
  impl->n = static_cast<int>(n_long);

  const double hx = d.length(0) / cells;
  SpMat mx, kx;
  fem1d_matrices(hx, cells, mx, kx);
  if (dim == 1) {
    impl->gram = mx;
    impl->stiffness = kx;
    for (int i = 1; i < cells; ++i) impl->nodes.emplace_back(d.lower(0) + i * hx);
  } else {
    const double hy = d.length(1) / cells;
    SpMat my, ky;
    fem1d_matrices(hy, cells, my, ky);
    impl->gram = kron(mx, my);
    impl->stiffness = kron(kx, my) + kron(mx, ky);
    for (int i = 1; i < cells; ++i)
      for (int j = 1; j < cells; ++j)
        impl->nodes.emplace_back(d.lower(0) + i * hx, d.lower(1) + j * hy);
  }

  const int ppc = quad_override > 0 ? quad_override : 3;
  impl->quad = QuadratureRule::per_cell(d, cells, ppc);
  return impl;
}

}  // namespace

SpaceLevel SpaceLevel::from_resolution(const Domain& d, FamilyKind kind, int resolution,
                                       int max_n, int quad_override) {
  if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
  std::shared_ptr<Impl> impl =
      kind == FamilyKind::SpectralSine
          ? build_spectral(d, resolution, resolution, max_n, quad_override)
          : build_fem(d, resolution, 0, max_n, quad_override);
  impl->gram_llt.compute(impl->gram);
  if (impl->gram_llt.info() != Eigen::Success)
    throw std::runtime_error("gram matrix factorization failed (not SPD)");
  impl->stiff_llt.compute(impl->stiffness);
  if (impl->stiff_llt.info() != Eigen::Success)
    throw std::runtime_error("stiffness matrix factorization failed (not SPD)");
  return SpaceLevel(impl);
}

SpaceLevel SpaceLevel::build(const Domain& d, const BasisFamily& f, int level, int max_n,
                             int quad_override) {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  if (f.kind == FamilyKind::SpectralSine)
    return from_resolution(d, f.kind, level, max_n, quad_override);
  // fem chain: 2^level cells per axis
  if (level > 24) throw std::runtime_error("resource limit exceeded: fem level too large");
  SpaceLevel s = from_resolution(d, f.kind, 1 << level, max_n, quad_override);
  const_cast<Impl*>(s.impl_.get())->level = level;
  return s;
}

const Domain& SpaceLevel::domain() const { return impl_->domain; }
FamilyKind SpaceLevel::kind() const { return impl_->kind; }
int SpaceLevel::level() const { return impl_->level; }
int SpaceLevel::resolution() const { return impl_->resolution; }
int SpaceLevel::size() const { return impl_->n; }
const Eigen::SparseMatrix<double>& SpaceLevel::gram() const { return impl_->gram; }
const Eigen::SparseMatrix<double>& SpaceLevel::stiffness() const { return impl_->stiffness; }
const QuadratureRule& SpaceLevel::quadrature() const { return impl_->quad; }
const Eigen::VectorXd& SpaceLevel::spectral_eigenvalues() const {
  if (impl_->kind != FamilyKind::SpectralSine)
    throw std::logic_error("spectral_eigenvalues: spectral families only");
  return impl_->mu;
}
const std::vector<std::array<int, 2>>& SpaceLevel::mode_indices() const { return impl_->modes; }
const std::vector<Point>& SpaceLevel::node_coords() const { return impl_->nodes; }

Eigen::VectorXd SpaceLevel::eval_basis(const Point& p) const {
  const Domain& d = impl_->domain;
  const Membership m = d.contains(p);
  if (m == Membership::Exterior) throw std::invalid_argument("eval_basis: point exterior");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(impl_->n);
  if (m == Membership::Boundary) return v;  // Dirichlet basis vanishes identically

  if (impl_->kind == FamilyKind::SpectralSine) {
    const int dim = d.dim(), mmax = impl_->resolution;
    std::array<std::vector<double>, 2> s;
    for (int ax = 0; ax < dim; ++ax) {
      const double L = d.length(ax);
      const double t = (p[ax] - d.lower(ax)) / L;
      const double scale = std::sqrt(2.0 / L);
      s[static_cast<std::size_t>(ax)].resize(static_cast<std::size_t>(mmax) + 1);
      for (int k = 1; k <= mmax; ++k)
        s[static_cast<std::size_t>(ax)][static_cast<std::size_t>(k)] =
            scale * std::sin(k * M_PI * t);
    }
    for (int i = 0; i < impl_->n; ++i) {
      const auto& mo = impl_->modes[static_cast<std::size_t>(i)];
      double val = s[0][static_cast<std::size_t>(mo[0])];
      if (dim == 2) val *= s[1][static_cast<std::size_t>(mo[1])];
      v[i] = val;
    }
  } else {
    const int cells = impl_->resolution, n1 = cells - 1;
    // per-axis hat values at the two nodes bracketing p
    std::array<int, 2> i0{};
    std::array<std::array<double, 2>, 2> hv{};
    for (int ax = 0; ax < d.dim(); ++ax) {
      const double h = d.length(ax) / cells;
      const double u = (p[ax] - d.lower(ax)) / h;
      int c = static_cast<int>(std::floor(u));
      c = std::clamp(c, 0, cells - 1);
      i0[static_cast<std::size_t>(ax)] = c;  // hats c and c+1 (1-based node ids)
      const double frac = u - c;
      hv[static_cast<std::size_t>(ax)] = {1.0 - frac, frac};
    }
    auto set1 = [&](int node, double val) {
      if (node >= 1 && node <= n1 && val != 0.0) {
        if (d.dim() == 1) v[node - 1] = val;
      }
    };
    if (d.dim() == 1) {
      set1(i0[0], hv[0][0]);
      set1(i0[0] + 1, hv[0][1]);
    } else {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const int ni = i0[0] + a, nj = i0[1] + b;
          const double val = hv[0][static_cast<std::size_t>(a)] * hv[1][static_cast<std::size_t>(b)];
          if (ni >= 1 && ni <= n1 && nj >= 1 && nj <= n1 && val != 0.0)
            v[(ni - 1) * n1 + (nj - 1)] = val;
        }
    }
  }
  return v;
}

Eigen::MatrixXd SpaceLevel::eval_basis_grad(const Point& p) const {
  if (impl_->kind != FamilyKind::SpectralSine)
    throw std::logic_error("eval_basis_grad: spectral families only");
  const Domain& d = impl_->domain;
  if (d.contains(p) == Membership::Exterior)
    throw std::invalid_argument("eval_basis_grad: point exterior");
  const int dim = d.dim(), mmax = impl_->resolution;
  std::array<std::vector<double>, 2> s, c;
  for (int ax = 0; ax < dim; ++ax) {
    const double L = d.length(ax);
    const double t = (p[ax] - d.lower(ax)) / L;
    const double scale = std::sqrt(2.0 / L);
    auto& sv = s[static_cast<std::size_t>(ax)];
    auto& cv = c[static_cast<std::size_t>(ax)];
    sv.resize(static_cast<std::size_t>(mmax) + 1);
    cv.resize(static_cast<std::size_t>(mmax) + 1);
    for (int k = 1; k <= mmax; ++k) {
      sv[static_cast<std::size_t>(k)] = scale * std::sin(k * M_PI * t);
      cv[static_cast<std::size_t>(k)] = scale * (k * M_PI / L) * std::cos(k * M_PI * t);
    }
  }
  Eigen::MatrixXd g(impl_->n, dim);
  for (int i = 0; i < impl_->n; ++i) {
    const auto& mo = impl_->modes[static_cast<std::size_t>(i)];
    if (dim == 1) {
      g(i, 0) = c[0][static_cast<std::size_t>(mo[0])];
    } else {
      g(i, 0) = c[0][static_cast<std::size_t>(mo[0])] * s[1][static_cast<std::size_t>(mo[1])];
      g(i, 1) = s[0][static_cast<std::size_t>(mo[0])] * c[1][static_cast<std::size_t>(mo[1])];
    }
  }
  return g;
}

double SpaceLevel::integrate(const std::function<double(const Point&)>& g) const {
  const QuadratureRule& q = impl_->quad;
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) acc += q.weights[i] * g(q.nodes[i]);
  return acc;
}

Eigen::VectorXd SpaceLevel::solve_gram(const Eigen::VectorXd& b) const {
  return impl_->solve_checked(impl_->gram_llt, impl_->gram, b, "gram solve");
}

Eigen::VectorXd SpaceLevel::solve_stiffness(const Eigen::VectorXd& b) const {
  return impl_->solve_checked(impl_->stiff_llt, impl_->stiffness, b, "stiffness solve");
}

}  // namespace ultra
