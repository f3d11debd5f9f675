#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ultrafn/geometry.hpp"

namespace ultra {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre polynomial (converges to full double precision).
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int npoints) {
    nodes.resize(static_cast<std::size_t>(npoints));
    weights.resize(static_cast<std::size_t>(npoints));
    const int n = npoints;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        // Legendre recurrence P_k and derivative at x
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      nodes[static_cast<std::size_t>(i)] = -x;
      nodes[static_cast<std::size_t>(n - 1 - i)] = x;
      double w = 2.0 / ((1.0 - x * x) * dp * dp);
      weights[static_cast<std::size_t>(i)] = w;
      weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
  }
};

/// Tensor-product quadrature table over a 1D/2D rectangle.
struct QuadratureRule {
  std::vector<Point> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  /// Single global Gauss-Legendre tensor rule over the whole domain.
  static QuadratureRule tensor(const Domain& d, int points_per_axis) {
    GaussLegendre gl(points_per_axis);
    QuadratureRule r;
    if (d.dim() == 1) {
      const double a = d.lower(0), L = d.length(0);
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        r.nodes.emplace_back(a + 0.5 * L * (gl.nodes[i] + 1.0));
        r.weights.push_back(0.5 * L * gl.weights[i]);
      }
    } else {
      const double ax = d.lower(0), Lx = d.length(0);
      const double ay = d.lower(1), Ly = d.length(1);
      for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
          r.nodes.emplace_back(ax + 0.5 * Lx * (gl.nodes[i] + 1.0),
                               ay + 0.5 * Ly * (gl.nodes[j] + 1.0));
          r.weights.push_back(0.25 * Lx * Ly * gl.weights[i] * gl.weights[j]);
        }
    }
    return r;
  }

  /// Per-cell Gauss rule on a uniform mesh with `cells` cells per axis.
  static QuadratureRule per_cell(const Domain& d, int cells, int points_per_cell) {
    GaussLegendre gl(points_per_cell);
    QuadratureRule r;
    if (d.dim() == 1) {
      const double a = d.lower(0), h = d.length(0) / cells;
      for (int c = 0; c < cells; ++c)
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
          r.nodes.emplace_back(a + h * (c + 0.5 * (gl.nodes[i] + 1.0)));
          r.weights.push_back(0.5 * h * gl.weights[i]);
        }
    } else {
      const double ax = d.lower(0), hx = d.length(0) / cells;
      const double ay = d.lower(1), hy = d.length(1) / cells;
      for (int cx = 0; cx < cells; ++cx)
        for (int cy = 0; cy < cells; ++cy)
          for (std::size_t i = 0; i < gl.nodes.size(); ++i)
            for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
              r.nodes.emplace_back(ax + hx * (cx + 0.5 * (gl.nodes[i] + 1.0)),
                                   ay + hy * (cy + 0.5 * (gl.nodes[j] + 1.0)));
              r.weights.push_back(0.25 * hx * hy * gl.weights[i] * gl.weights[j]);
            }
    }
    return r;
  }
};

}  // namespace ultra
