// epiproj - epigraphical and level-set projections via proximal maps
// Copyright 2026 The epiproj authors
// Licensed under Apache 2.0
//
// Regenerates tests/fixtures/golden_derived.json. Every value is produced by
// an independent oracle (hand-coded scalar formulas plus plain bisection, the
// discretized prox, the sort baseline, or central differences) and never by
// the Newton solvers under test.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>

#include <json.hpp>

#include "epiproj/catalog.hpp"
#include "epiproj/oracles.hpp"
#include "epiproj/projections.hpp"

namespace {

// Plain bisection to a width tolerance on a hand-coded increasing function.
double bisect_root(const std::function<double(double)>& fn, double lo, double hi,
                   double width) {
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (fn(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

nlohmann::json entry(const std::string& instance, const std::string& oracle, double resolution,
                     std::uint64_t seed, nlohmann::json value) {
  return {{"instance", instance},
          {"oracle", oracle},
          {"resolution", resolution},
          {"seed", seed},
          {"value", std::move(value)}};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : "golden_derived.json";
  auto fixtures = nlohmann::json::array();

  // Epigraph of -log at (1, -1): theta'(l) = l - 1 + log((1 + sqrt(1+4l))/2).
  const double neglog_root = bisect_root(
      [](double l) { return l - 1.0 + std::log(0.5 * (1.0 + std::sqrt(1.0 + 4.0 * l))); },
      1e-6, 4.0, 1e-14);
  fixtures.push_back(entry("epi neglog x=[1] alpha=-1 lambda*", "bisection on closed-form theta'",
                           1e-14, 0, neglog_root));
  fixtures.push_back(entry("epi neglog x=[1] alpha=-1 point",
                           "closed-form prox at the bisection root", 1e-14, 0,
                           0.5 * (1.0 + std::sqrt(1.0 + 4.0 * neglog_root))));

  // Level set of the 1-norm at alpha = 1, x = (-2, 0.8, 3, 1.3):
  // theta'(l) = 1 - sum max(|x_i| - l, 0).
  const std::vector<double> xl1{-2.0, 0.8, 3.0, 1.3};
  const double l1_root = bisect_root(
      [&](double l) {
        double s = 0.0;
        for (double v : xl1) s += std::max(std::abs(v) - l, 0.0);
        return 1.0 - s;
      },
      1e-6, 4.0, 1e-14);
  fixtures.push_back(entry("level l1 x=[-2,0.8,3,1.3] alpha=1 lambda*",
                           "bisection on piecewise-affine theta'", 1e-14, 0, l1_root));
  fixtures.push_back(entry("level l1 x=[-2,0.8,3,1.3] alpha=1 point", "sort-and-threshold",
                           0.0, 0, epiproj::l1_ball_sort_project(xl1, 1.0)));

  // Epigraph of 2|.| + box at (4, -1): theta' = 5l - 9 on the middle piece.
  const double absbox_root = bisect_root(
      [](double l) {
        const double p = std::clamp(4.0 - 2.0 * l, 0.0, 1.0);
        return -2.0 * p - 1.0 + l;
      },
      1e-6, 4.0, 1e-14);
  fixtures.push_back(entry("epi absbox2 x=[4] alpha=-1 lambda*",
                           "bisection on closed-form theta'", 1e-14, 0, absbox_root));
  fixtures.push_back(entry("epi absbox2 x=[4] alpha=-1 point", "closed-form prox at the root",
                           1e-14, 0, std::clamp(4.0 - 2.0 * absbox_root, 0.0, 1.0)));
  fixtures.push_back(entry("epi absbox2 x=[4] alpha=-1 ordinate", "alpha + lambda*", 1e-14, 0,
                           -1.0 + absbox_root));

  // Discretized prox values named in the operation examples.
  {
    const auto neglog = epiproj::make_prox_function("neglog:n=1");
    epiproj::GridSpec g;
    g.intervals = {{1e-6, 10.0}};
    g.resolution = 1000000;
    const std::vector<double> zero{0.0};
    const auto p = epiproj::grid_prox(*neglog, zero, 1.0, g);
    fixtures.push_back(entry("grid_prox neglog x=[0] lambda=1 on [1e-6,10]", "grid argmin",
                             1e6, 0, p[0]));
    // envelope value at the same instance, from the same grid scan
    double best = epiproj::infinity();
    for (std::size_t i = 0; i < 1000000; ++i) {
      const double u = 1e-6 + (10.0 - 1e-6) * double(i) / 999999.0;
      const double v = -std::log(u) + 0.5 * u * u;
      best = std::min(best, v);
    }
    fixtures.push_back(
        entry("moreau neglog x=[0] lambda=1", "grid minimum of the prox objective", 1e6, 0, best));
  }
  {
    const auto absbox = epiproj::make_prox_function("absbox:scale=1,n=1");
    const std::vector<double> x{2.0};
    const auto g = epiproj::default_grid(*absbox, x, 3.0, 1000000);
    const auto p = epiproj::grid_prox(*absbox, x, 3.0, g);
    fixtures.push_back(entry("grid_prox absbox1 x=[2] lambda=3", "grid argmin", 1e6, 0, p[0]));
  }

  // d/dlambda of f(P_lambda f(x)) for the quadratic at x = 2, lambda = 1.
  {
    const auto quad = epiproj::make_prox_function("quad:n=1");
    const std::vector<double> x{2.0};
    const double h = 1e-6;
    const double slope = epiproj::finite_diff(
        [&](double l) { return quad->prox(x, l).value; }, 1.0, h);
    fixtures.push_back(
        entry("quad prox-value slope x=[2] lambda=1", "central finite difference", h, 0, slope));
  }

  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    return 1;
  }
  out << fixtures.dump(2) << "\n";
  std::cout << "wrote " << path << " (" << fixtures.size() << " fixtures)\n";
  std::cout << "neglog epi root   = " << std::setprecision(17) << neglog_root << "\n";
  std::cout << "l1 level root     = " << l1_root << "\n";
  std::cout << "absbox2 epi root  = " << absbox_root << "\n";
  return 0;
}
