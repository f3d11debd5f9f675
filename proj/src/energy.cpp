#include "ultrafn/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace ultra {

std::string level_id(const SpaceLevel& s) {
  return family_name(s.kind()) + "/res" + std::to_string(s.resolution()) + "/n" +
         std::to_string(s.size());
}

EnergyReport energy_at(const SpaceLevel& s, const Point& q) {
  EnergyReport r;
  r.level_id = level_id(s);
  r.q = q;
  const Membership m = s.domain().contains(q);
  if (m == Membership::Exterior) throw std::invalid_argument("energy_at: q outside the closure");
  if (m == Membership::Boundary) return r;  // delta_q = 0, all energies vanish exactly
  const DirichletSolution sol = solve_point_source(s, q);
  r.elastic = sol.elastic;
  r.point_value = sol.point_value;
  r.total = sol.elastic + sol.point_value;
  r.electrostatic = sol.elastic;
  return r;
}

Eigen::VectorXd reduced_gradient(const SpaceLevel& s, const Point& q) {
  if (s.kind() != FamilyKind::SpectralSine)
    throw std::logic_error("reduced_gradient: unsupported family (spectral only)");
  if (s.domain().contains(q) != Membership::Interior)
    throw std::invalid_argument("reduced_gradient: q must be interior");
  // F(q) = -1/2 k(q)^T K^{-1} k(q), so grad F = (grad k)^T u with u = -K^{-1} k(q)
  const DirichletSolution sol = solve_point_source(s, q);
  return s.eval_basis_grad(q).transpose() * sol.u.coeffs;
}

namespace {

double reduced_value(const SpaceLevel& s, const Point& q) { return energy_at(s, q).total; }

}  // namespace

MinimizerResult minimize(const SpaceLevel& s, const SearchOptions& opts) {
  const Domain& d = s.domain();
  const int g = std::max(opts.grid, 3);
  MinimizerResult res;
  res.level_id = level_id(s);
  res.grid = g;

  // coarse scan over the closure, lexicographic order
  std::vector<Point> grid_pts;
  std::vector<double> grid_vals;
  if (d.dim() == 1) {
    for (int i = 0; i < g; ++i) {
      const double x = d.lower(0) + d.length(0) * i / (g - 1);
      grid_pts.emplace_back(x);
    }
  } else {
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        grid_pts.emplace_back(d.lower(0) + d.length(0) * i / (g - 1),
                              d.lower(1) + d.length(1) * j / (g - 1));
  }
  grid_vals.resize(grid_pts.size());
  for (std::size_t i = 0; i < grid_pts.size(); ++i)
    grid_vals[i] = reduced_value(s, grid_pts[i]);

  std::size_t best = 0;
  for (std::size_t i = 1; i < grid_pts.size(); ++i)
    if (grid_vals[i] < grid_vals[best]) best = i;  // first (lex-smallest) wins ties

  const double tie_tol = opts.tie_tol_rel * std::max(1.0, std::abs(grid_vals[best]));
  for (std::size_t i = 0; i < grid_pts.size(); ++i)
    if (grid_vals[i] <= grid_vals[best] + tie_tol) res.ties.push_back(grid_pts[i]);

  Point q = grid_pts[best];
  double f = grid_vals[best];

  // Deterministic multiscale refinement: scan a local grid around the current
  // best and halve the radius each round.  Derivative-free on purpose - the
  // reduced functional carries truncation ripples at wavelength ~1/resolution
  // that trap line searches, while a scan at spacing below the radius tracks
  // the macroscopic trend and then resolves the ripples once the radius
  // shrinks past them.
  constexpr int kZoom = 17;
  std::array<double, 2> radius{};
  for (int ax = 0; ax < d.dim(); ++ax) radius[ax] = d.length(ax) / (g - 1);

  int iters = 0;
  while (iters < opts.max_refine_iters) {
    double rmax = 0.0;
    for (int ax = 0; ax < d.dim(); ++ax) rmax = std::max(rmax, radius[ax]);
    if (rmax <= opts.tol) break;
    ++iters;
    const Point base = q;
    auto scan_candidate = [&](const Point& cand_raw) {
      Point cand = cand_raw;
      for (int ax = 0; ax < d.dim(); ++ax)
        cand[ax] = std::clamp(cand[ax], d.lower(ax), d.upper(ax));
      const double fc = reduced_value(s, cand);
      if (fc < f) {
        q = cand;
        f = fc;
      }
    };
    if (d.dim() == 1) {
      for (int i = 0; i < kZoom; ++i)
        scan_candidate(Point(base[0] - radius[0] + 2.0 * radius[0] * i / (kZoom - 1)));
    } else {
      for (int i = 0; i < kZoom; ++i)
        for (int j = 0; j < kZoom; ++j)
          scan_candidate(Point(base[0] - radius[0] + 2.0 * radius[0] * i / (kZoom - 1),
                               base[1] - radius[1] + 2.0 * radius[1] * j / (kZoom - 1)));
    }
    for (int ax = 0; ax < d.dim(); ++ax) radius[ax] *= 0.5;
  }

  // Value comparisons bottom out near sqrt(eps); for the sine family the
  // analytic gradient resolves the last digits.  Bisect each component of
  // grad F to zero inside a small bracket around the zoom result.
  if (s.kind() == FamilyKind::SpectralSine) {
    for (int cycle = 0; cycle < 3; ++cycle) {
      for (int ax = 0; ax < d.dim(); ++ax) {
        const double margin = 1e-9 * d.length(ax);
        double h = 1e-7 * d.length(ax);
        double lo = 0.0, hi = 0.0, glo = 0.0, ghi = 0.0;
        bool bracketed = false;
        for (int e = 0; e < 12 && !bracketed; ++e) {
          lo = std::max(d.lower(ax) + margin, q[ax] - h);
          hi = std::min(d.upper(ax) - margin, q[ax] + h);
          Point pl = q, ph = q;
          pl[ax] = lo;
          ph[ax] = hi;
          glo = reduced_gradient(s, pl)[ax];
          ghi = reduced_gradient(s, ph)[ax];
          bracketed = glo <= 0.0 && ghi >= 0.0;
          h *= 2.0;
        }
        if (!bracketed) continue;
        while (hi - lo > 1e-15 * d.length(ax)) {
          const double mid = 0.5 * (lo + hi);
          Point pm = q;
          pm[ax] = mid;
          if (reduced_gradient(s, pm)[ax] <= 0.0)
            lo = mid;
          else
            hi = mid;
        }
        q[ax] = 0.5 * (lo + hi);
      }
    }
    f = reduced_value(s, q);
  }

  res.q_min = q;
  res.f_min = f;
  res.refine_iters = iters;
  return res;
}

}  // namespace ultra
