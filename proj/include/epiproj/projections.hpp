// epiproj - epigraphical and level-set projections via proximal maps
// Copyright 2026 The epiproj authors
// Licensed under Apache 2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "epiproj/solvers.hpp"

namespace epiproj {

enum class ProjectionBranch { DomainCase, RootCase };

enum class SolverChoice { NewtonLineSearch, NewtonFullStep, BisectionDeriv, BisectionWidth };

[[nodiscard]] constexpr const char* to_string(SolverChoice c) {
  switch (c) {
    case SolverChoice::NewtonLineSearch: return "newton_ls";
    case SolverChoice::NewtonFullStep: return "newton_full";
    case SolverChoice::BisectionDeriv: return "bisection_deriv";
    case SolverChoice::BisectionWidth: return "bisection_width";
  }
  return "unknown";
}

struct ProjectionResult {
  std::vector<double> point;
  std::optional<double> ordinate;  ///< epigraph mode: alpha + lambda_star
  double lambda_star = 0.0;        ///< 0 on the domain branch
  /// Root-equation residual: |f(point) - alpha| (level) or
  /// |f(point) - lambda_star - alpha| (epigraph); 0 on the domain branch,
  /// where no root is solved.
  double residual = 0.0;
  ProjectionBranch branch = ProjectionBranch::DomainCase;
  std::optional<SolverResult> solver;  ///< present on the root branch

  [[nodiscard]] bool succeeded() const {
    return branch == ProjectionBranch::DomainCase ||
           (solver && solver->status == SolverStatus::Converged);
  }
};

namespace detail {

inline SolverResult run_solver(const ScalarObjective& obj, const SolverConfig& cfg,
                               SolverChoice choice) {
  switch (choice) {
    case SolverChoice::NewtonLineSearch:
      return newton_linesearch(obj, cfg);
    case SolverChoice::NewtonFullStep:
      return newton_fullstep(obj, cfg);
    case SolverChoice::BisectionDeriv:
    case SolverChoice::BisectionWidth: {
      const auto br = bracket(obj, cfg.lambda0);
      if (!br) {
        SolverResult r;
        r.status = SolverStatus::BracketFailed;
        r.lambda_star = cfg.lambda0;
        return r;
      }
      const bool deriv = choice == SolverChoice::BisectionDeriv;
      SolverResult r = bisection(obj, br->lo, br->hi,
                                 deriv ? BisectionTol::DerivTol : BisectionTol::WidthTol,
                                 deriv ? cfg.delta : cfg.bisection_width, cfg.max_iters,
                                 cfg.record_trace);
      r.iterations += br->evaluations;
      return r;
    }
  }
  throw std::logic_error("unreachable solver choice");
}

}  // namespace detail

/// Projection onto {u : f(u) <= alpha}, assuming some point with
/// f < alpha exists (certified against the catalog infimum when known).
/// Domain branch: the projection onto cl(dom f) already satisfies the level;
/// otherwise the prox at the positive solution of f(P_lambda f(x)) = alpha.
inline ProjectionResult project_level_set(ProxFunctionPtr f, VecView x, double alpha,
                                          const SolverConfig& cfg = {},
                                          SolverChoice choice = SolverChoice::NewtonLineSearch) {
  ScalarObjective obj = make_level_objective(f, {x.begin(), x.end()}, alpha);

  ProjectionResult out;
  ProxEvaluation dp = f->domain_projection(x);
  if (dp.value <= alpha) {
    out.point = std::move(dp.point);
    out.branch = ProjectionBranch::DomainCase;
    return out;
  }

  out.branch = ProjectionBranch::RootCase;
  SolverResult solved = detail::run_solver(obj, cfg, choice);
  out.lambda_star = solved.lambda_star;
  ProxEvaluation pe = f->prox(x, solved.lambda_star);
  out.point = std::move(pe.point);
  out.residual = std::abs(pe.value - alpha);
  out.solver = std::move(solved);
  return out;
}

/// Projection of (x, alpha) onto epi f. Domain branch: [P_{cl dom f}(x),
/// alpha] when f there is <= alpha; otherwise [P_lambda f(x), alpha + lambda]
/// at the unique positive root of f(P_lambda f(x)) - lambda - alpha.
inline ProjectionResult project_epigraph(ProxFunctionPtr f, VecView x, double alpha,
                                         const SolverConfig& cfg = {},
                                         SolverChoice choice = SolverChoice::NewtonLineSearch) {
  ScalarObjective obj = make_epi_objective(f, {x.begin(), x.end()}, alpha);

  ProjectionResult out;
  ProxEvaluation dp = f->domain_projection(x);
  if (dp.value <= alpha) {
    out.point = std::move(dp.point);
    out.ordinate = alpha;
    out.branch = ProjectionBranch::DomainCase;
    return out;
  }

  out.branch = ProjectionBranch::RootCase;
  SolverResult solved = detail::run_solver(obj, cfg, choice);
  out.lambda_star = solved.lambda_star;
  ProxEvaluation pe = f->prox(x, solved.lambda_star);
  out.point = std::move(pe.point);
  out.ordinate = alpha + solved.lambda_star;
  out.residual = std::abs(pe.value - solved.lambda_star - alpha);
  out.solver = std::move(solved);
  return out;
}

/// Exact Euclidean projection onto {u : ||u||_1 <= radius} by sorting the
/// magnitudes and thresholding at the largest k with
/// |x|_(k) > (sum_{i<=k} |x|_(i) - radius) / k. The _into variant reuses the
/// output buffer as sort scratch, so the hot benchmark path does not
/// allocate.
inline void l1_ball_sort_project_into(VecView x, double radius, VecSpan out) {
  if (!(radius > 0.0)) throw std::invalid_argument("l1_ball_sort_project: radius must be positive");
  if (out.size() != x.size()) throw std::invalid_argument("l1_ball_sort_project: size mismatch");
  double norm1 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::abs(x[i]);
    norm1 += out[i];
  }
  if (norm1 <= radius) {
    std::copy(x.begin(), x.end(), out.begin());
    return;
  }

  std::sort(out.begin(), out.end(), std::greater<>());
  double running = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    running += out[k];
    const double candidate = (running - radius) / static_cast<double>(k + 1);
    if (out[k] > candidate) {
      tau = candidate;
    } else {
      break;
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double shrunk = std::abs(x[i]) - tau;
    out[i] = shrunk > 0.0 ? std::copysign(shrunk, x[i]) : 0.0;
  }
}

[[nodiscard]] inline std::vector<double> l1_ball_sort_project(VecView x, double radius) {
  std::vector<double> out(x.size());
  l1_ball_sort_project_into(x, radius, out);
  return out;
}

}  // namespace epiproj
