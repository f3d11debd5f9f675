#pragma once

#include <string>
#include <vector>

#include "ultrafn/solver.hpp"

namespace ultra {

/// Energies of the point-mass membrane problem at one (level, q).
struct EnergyReport {
  std::string level_id;
  Point q;
  double elastic = 0.0;        // 1/2 * integral of |grad u_q|^2
  double point_value = 0.0;    // u_q(q)
  double total = 0.0;          // elastic + point_value
  double electrostatic = 0.0;  // equals elastic
};

struct SearchOptions {
  int grid = 33;            // grid points per axis over the closure
  double tol = 1e-8;        // refinement step tolerance, domain units
  double tie_tol_rel = 1e-12;
  int max_refine_iters = 200;
};

struct MinimizerResult {
  std::string level_id;
  Point q_min;
  double f_min = 0.0;
  int grid = 0;
  int refine_iters = 0;
  std::vector<Point> ties;  // grid points within tie tolerance of the best
};

std::string level_id(const SpaceLevel& s);

/// Solves the point-source problem at q and reports the energies; exactly
/// zero for boundary q.
EnergyReport energy_at(const SpaceLevel& s, const Point& q);

/// Exact gradient of the reduced functional F(q) = -1/2 k(q)^T K^{-1} k(q)
/// at an interior q; spectral families only (closed-form basis gradients).
Eigen::VectorXd reduced_gradient(const SpaceLevel& s, const Point& q);

/// Uniform grid scan over the closure followed by local refinement
/// (gradient descent with backtracking for spectral families, per-axis
/// golden section otherwise). Ties are broken lexicographically.
MinimizerResult minimize(const SpaceLevel& s, const SearchOptions& opts = {});

}  // namespace ultra
