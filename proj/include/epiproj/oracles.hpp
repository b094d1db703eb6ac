// epiproj - epigraphical and level-set projections via proximal maps
// Copyright 2026 The epiproj authors
// Licensed under Apache 2.0

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "epiproj/prox_function.hpp"

namespace epiproj {

/// Brute-force search grid: one closed interval per coordinate and a point
/// count per axis (defaults: 1e6 for n = 1, 2e3 per axis for n = 2).
struct GridSpec {
  std::vector<std::array<double, 2>> intervals;
  std::size_t resolution = 0;

  [[nodiscard]] std::size_t effective_resolution(std::size_t dim) const {
    if (resolution >= 2) return resolution;
    return dim == 1 ? 1000000 : 2000;
  }

  void validate(std::size_t dim) const {
    if (dim == 0 || dim > 2) {
      throw std::invalid_argument("grid oracles support n <= 2 only");
    }
    if (intervals.size() != dim) {
      throw std::invalid_argument("grid: need one interval per coordinate");
    }
    for (const auto& iv : intervals) {
      if (!(iv[0] < iv[1])) throw std::invalid_argument("grid: need lo < hi");
    }
    if (resolution == 1) throw std::invalid_argument("grid: resolution must be >= 2");
  }
};

namespace detail {

using ScalarFn = std::function<double(VecView)>;

struct GridArgmin {
  std::vector<double> point;
  double value = infinity();
};

// Scans the grid, then rescans a +-1.5 cell box around the argmin at the
// same resolution.
inline GridArgmin grid_search(const ScalarFn& objective, const GridSpec& grid,
                              std::size_t dim) {
  const std::size_t res = grid.effective_resolution(dim);

  auto scan = [&](const std::vector<std::array<double, 2>>& box) {
    GridArgmin best;
    best.point.assign(dim, 0.0);
    std::array<double, 2> u{};
    if (dim == 1) {
      const double lo = box[0][0], step = (box[0][1] - box[0][0]) / double(res - 1);
      for (std::size_t i = 0; i < res; ++i) {
        u[0] = lo + double(i) * step;
        const double v = objective(VecView(u.data(), 1));
        if (v < best.value) {
          best.value = v;
          best.point[0] = u[0];
        }
      }
    } else {
      const double lo0 = box[0][0], s0 = (box[0][1] - box[0][0]) / double(res - 1);
      const double lo1 = box[1][0], s1 = (box[1][1] - box[1][0]) / double(res - 1);
      for (std::size_t i = 0; i < res; ++i) {
        u[0] = lo0 + double(i) * s0;
        for (std::size_t j = 0; j < res; ++j) {
          u[1] = lo1 + double(j) * s1;
          const double v = objective(VecView(u.data(), 2));
          if (v < best.value) {
            best.value = v;
            best.point = {u[0], u[1]};
          }
        }
      }
    }
    return best;
  };

  GridArgmin coarse = scan(grid.intervals);
  if (!is_finite(coarse.value)) {
    throw std::runtime_error("grid oracle: objective is +inf on the whole grid");
  }
  std::vector<std::array<double, 2>> fine(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const double cell =
        (grid.intervals[d][1] - grid.intervals[d][0]) / double(res - 1);
    fine[d] = {coarse.point[d] - 1.5 * cell, coarse.point[d] + 1.5 * cell};
  }
  GridArgmin refined = scan(fine);
  return refined.value <= coarse.value ? refined : coarse;
}

}  // namespace detail

/// Discretized prox: argmin of f(u) + (1/2 lambda) ||x - u||^2 over the grid.
[[nodiscard]] inline std::vector<double> grid_prox(const ProxFunction& f, VecView x,
                                                   double lambda, const GridSpec& grid) {
  if (!(lambda > 0.0)) throw std::invalid_argument("grid_prox: lambda must be positive");
  grid.validate(x.size());
  const double w = 1.0 / (2.0 * lambda);
  auto objective = [&](VecView u) {
    const double fv = f.eval(u);
    if (!is_finite(fv)) return infinity();
    return fv + w * squared_distance(x, u);
  };
  return detail::grid_search(objective, grid, x.size()).point;
}

struct BruteProjection {
  std::vector<double> point;
  double ordinate = 0.0;
};

/// Direct epigraph projection: minimizes ||u - x||^2 + (beta - alpha)^2 over
/// grid points u and the optimal ordinate beta = max(f(u), alpha).
[[nodiscard]] inline BruteProjection brute_epi_project(const ProxFunction& f, VecView x,
                                                       double alpha, const GridSpec& grid) {
  grid.validate(x.size());
  auto objective = [&](VecView u) {
    const double fv = f.eval(u);
    if (!is_finite(fv)) return infinity();
    const double gap = std::max(fv, alpha) - alpha;
    return squared_distance(x, u) + gap * gap;
  };
  BruteProjection r;
  r.point = detail::grid_search(objective, grid, x.size()).point;
  r.ordinate = std::max(f.eval(r.point), alpha);
  return r;
}

/// Direct level-set projection: nearest grid point with f(u) <= alpha.
[[nodiscard]] inline std::vector<double> brute_level_project(const ProxFunction& f, VecView x,
                                                             double alpha,
                                                             const GridSpec& grid) {
  grid.validate(x.size());
  auto objective = [&](VecView u) {
    const double fv = f.eval(u);
    if (!(fv <= alpha)) return infinity();
    return squared_distance(x, u);
  };
  return detail::grid_search(objective, grid, x.size()).point;
}

/// Central difference (fn(l + h) - fn(l - h)) / (2h).
[[nodiscard]] inline double finite_diff(const std::function<double(double)>& fn, double lambda,
                                        double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_diff: h must be positive");
  const double up = fn(lambda + h);
  const double dn = fn(lambda - h);
  if (!is_finite(up) || !is_finite(dn)) {
    throw std::runtime_error("finite_diff: function is not finite on [lambda-h, lambda+h]");
  }
  return (up - dn) / (2.0 * h);
}

/// Grid covering the prox search region for base point x. The half-width
/// comes from the minimization itself: with any feasible probe u0,
///   ||P - x|| <= ||x - u0|| + sqrt(2 lambda (f(u0) - m)),
/// where m lower-bounds f on the current box; the box is grown until the
/// bound settles. Feasible probes are taken from the domain projection of x
/// nudged along the diagonal.
[[nodiscard]] inline GridSpec default_grid(const ProxFunction& f, VecView x, double lambda,
                                           std::size_t resolution = 0) {
  const std::size_t dim = x.size();
  if (dim == 0 || dim > 2) throw std::invalid_argument("default_grid: n <= 2 only");

  ProxEvaluation dp = f.domain_projection(x);
  std::vector<double> probe = dp.point;
  double fprobe = dp.value;
  for (double t : {1e-6, 1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0}) {
    if (is_finite(fprobe)) break;
    for (std::size_t i = 0; i < dim; ++i) probe[i] = dp.point[i] + t;
    fprobe = f.eval(probe);
  }
  if (!is_finite(fprobe)) {
    throw std::runtime_error("default_grid: no feasible probe near the domain projection");
  }

  const double base = std::sqrt(squared_distance(x, probe));
  double radius = base + 1.0;
  std::vector<double> u(dim);
  double known_inf = infinity();
  if (const auto inf = f.infimum(); inf && is_finite(*inf)) known_inf = *inf;
  for (int pass = 0; pass < 12; ++pass) {
    // Lower bound for f over the box: the known infimum when finite, else
    // diagonal probes (the catalog's unbounded members decrease along the
    // diagonal, so the far corner attains the box minimum).
    double m = std::min(fprobe, known_inf);
    constexpr int kProbes = 512;
    for (int i = 0; i <= kProbes; ++i) {
      const double t = -radius + 2.0 * radius * double(i) / kProbes;
      for (std::size_t d = 0; d < dim; ++d) u[d] = x[d] + t;
      const double fv = f.eval(u);
      if (is_finite(fv)) m = std::min(m, fv);
    }
    const double grown = base + std::sqrt(2.0 * lambda * std::max(0.0, fprobe - m));
    if (grown <= radius) break;
    radius = 2.0 * grown;
  }

  GridSpec g;
  g.resolution = resolution;
  g.intervals.resize(dim);
  for (std::size_t d = 0; d < dim; ++d) g.intervals[d] = {x[d] - radius, x[d] + radius};
  return g;
}

}  // namespace epiproj
