// epiproj - epigraphical and level-set projections via proximal maps
// Copyright 2026 The epiproj authors
// Licensed under Apache 2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <vector>

#include "epiproj/envelope.hpp"

namespace epiproj {

enum class SolverStatus { Converged, MaxIter, Cycled, BracketFailed };

[[nodiscard]] constexpr const char* to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Converged: return "converged";
    case SolverStatus::MaxIter: return "max_iter";
    case SolverStatus::Cycled: return "cycled";
    case SolverStatus::BracketFailed: return "bracket_failed";
  }
  return "unknown";
}

/// Regularization schedule eps_k = eps0 * rho^k added to the curvature
/// element in the Newton step denominators.
struct EpsSchedule {
  double eps0 = 0.0;
  double rho = 0.5;
};

struct SolverConfig {
  double lambda0 = 1.0;
  double delta = 1e-12;      ///< stop once |theta'(lambda)| <= delta
  std::optional<EpsSchedule> eps;  ///< default: {1e-3, 0.5} Level, {0, 0.5} Epi
  double beta = 0.5;         ///< backtracking factor
  double sigma = 1e-4;       ///< sufficient-decrease constant
  int max_iters = 100;
  int cycle_window = 8;      ///< full-step oscillation detection horizon
  double bisection_width = 1e-10;  ///< width stop for the width-based bisection
  bool record_trace = false;
};

struct TracePoint {
  double lambda = 0.0;
  double theta_prime = 0.0;  ///< the derivative value the step was based on
  double bsub = 0.0;
  double step = 0.0;
};

struct SolverResult {
  double lambda_star = 0.0;
  SolverStatus status = SolverStatus::MaxIter;
  int iterations = 0;
  double residual = infinity();  ///< |theta'(lambda_star)|
  std::vector<TracePoint> trace;
  std::vector<double> cycle_orbit;  ///< distinct iterates of a detected orbit
  bool linesearch_saturated = false;
};

namespace detail {

inline constexpr double kClampMargin = 1e-3;   // keeps iterates >= margin * lambda_k
inline constexpr double kCycleMatchTol = 1e-9;
inline constexpr int kMaxBacktracks = 60;

inline void validate_config(const SolverConfig& cfg) {
  if (!(cfg.lambda0 > 0.0)) throw std::invalid_argument("solver: lambda0 must be positive");
  if (!(cfg.delta > 0.0)) throw std::invalid_argument("solver: delta must be positive");
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0)) throw std::invalid_argument("solver: beta must lie in (0,1)");
  if (!(cfg.sigma > 0.0 && cfg.sigma < 1.0)) throw std::invalid_argument("solver: sigma must lie in (0,1)");
  if (cfg.max_iters < 1) throw std::invalid_argument("solver: max_iters must be positive");
  if (cfg.cycle_window < 2) throw std::invalid_argument("solver: cycle_window must be at least 2");
  if (cfg.eps && (!(cfg.eps->eps0 >= 0.0) || !(cfg.eps->rho > 0.0 && cfg.eps->rho < 1.0))) {
    throw std::invalid_argument("solver: eps schedule needs eps0 >= 0 and rho in (0,1)");
  }
}

inline EpsSchedule effective_eps(const ScalarObjective& obj, const SolverConfig& cfg) {
  if (cfg.eps) return *cfg.eps;
  return obj.kind == ObjectiveKind::Level ? EpsSchedule{1e-3, 0.5} : EpsSchedule{0.0, 0.5};
}

// Newton step length -theta'/(bsub + eps), guarding degenerate curvature.
// A flat piece with positive derivative still admits the clamped pull-back
// step; a flat piece with negative derivative has an unbounded model.
inline double raw_newton_step(double deriv, double bsub, double eps) {
  const double denom = bsub + eps;
  if (!is_finite(denom)) throw std::runtime_error("solver: curvature element is not finite");
  if (denom > 0.0) return -deriv / denom;
  if (deriv > 0.0) return -infinity();
  throw std::runtime_error(
      "solver: nonpositive curvature with descent direction; enable the eps schedule");
}

}  // namespace detail

/// Line-search semismooth Newton iteration on theta. The step is the Newton
/// quotient projected onto [-(1 - 1e-3) lambda_k, inf), a hair inside the
/// plain [-lambda_k, inf) projection so every iterate stays strictly
/// positive, and is then backtracked under the sufficient-decrease test
///   theta(lambda_k + t step) <= theta(lambda_k) + t sigma theta'(lambda_k) step.
/// After 60 failed backtracks the last trial is accepted and flagged.
inline SolverResult newton_linesearch(const ScalarObjective& obj, const SolverConfig& cfg) {
  detail::validate_config(cfg);
  const EpsSchedule sched = detail::effective_eps(obj, cfg);

  SolverResult r;
  double lambda = cfg.lambda0;
  double eps = sched.eps0;
  double best_lambda = lambda;
  double best_resid = infinity();

  for (int k = 0;; ++k) {
    const ThetaSample s = theta_sample(obj, lambda);
    if (!is_finite(s.derivative)) throw std::runtime_error("solver: theta' is not finite");
    const double resid = std::abs(s.derivative);
    if (cfg.record_trace) r.trace.push_back({lambda, s.derivative, s.bsub, 0.0});
    if (resid < best_resid) {
      best_resid = resid;
      best_lambda = lambda;
    }
    if (resid <= cfg.delta) {
      r.lambda_star = lambda;
      r.status = SolverStatus::Converged;
      r.iterations = k;
      r.residual = resid;
      return r;
    }
    if (k >= cfg.max_iters) {
      r.lambda_star = best_lambda;
      r.status = SolverStatus::MaxIter;
      r.iterations = k;
      r.residual = best_resid;
      return r;
    }

    const double raw = detail::raw_newton_step(s.derivative, s.bsub, eps);
    eps *= sched.rho;
    const double step = std::max(raw, -(1.0 - detail::kClampMargin) * lambda);

    double t = 1.0;
    bool accepted = false;
    // Near the root the predicted decrease drops below the ulp of theta;
    // the comparison carries a machine-epsilon slack so such steps pass.
    const double slack =
        4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(s.value));
    for (int l = 0; l <= detail::kMaxBacktracks; ++l) {
      const double trial_value = theta_value(obj, lambda + t * step);
      if (is_finite(trial_value) &&
          trial_value <= s.value + t * cfg.sigma * s.derivative * step + slack) {
        accepted = true;
        break;
      }
      if (l < detail::kMaxBacktracks) t *= cfg.beta;
    }
    if (!accepted) r.linesearch_saturated = true;
    if (cfg.record_trace) r.trace.back().step = t * step;
    lambda += t * step;
  }
}

/// Full-step variant: step = max{-lambda_k / 2, -theta'/(bsub + eps)}, no
/// line search. Convergent when theta' is concave left of the solution set;
/// otherwise the iterates may orbit, which is detected by revisiting an
/// earlier iterate (within 1e-9, at least two steps back) without having
/// reduced |theta'|. On a detected orbit the result carries the orbit's
/// distinct values and the best iterate seen.
inline SolverResult newton_fullstep(const ScalarObjective& obj, const SolverConfig& cfg) {
  detail::validate_config(cfg);
  const EpsSchedule sched = detail::effective_eps(obj, cfg);

  SolverResult r;
  double lambda = cfg.lambda0;
  double eps = sched.eps0;
  double best_lambda = lambda;
  double best_resid = infinity();
  std::deque<std::pair<double, double>> window;  // (lambda_j, |theta'(lambda_j)|)

  for (int k = 0;; ++k) {
    const ThetaSample s = theta_sample(obj, lambda);
    if (!is_finite(s.derivative)) throw std::runtime_error("solver: theta' is not finite");
    const double resid = std::abs(s.derivative);
    if (cfg.record_trace) r.trace.push_back({lambda, s.derivative, s.bsub, 0.0});
    if (resid < best_resid) {
      best_resid = resid;
      best_lambda = lambda;
    }
    if (resid <= cfg.delta) {
      r.lambda_star = lambda;
      r.status = SolverStatus::Converged;
      r.iterations = k;
      r.residual = resid;
      return r;
    }

    for (std::size_t j = 0; j + 1 < window.size(); ++j) {
      if (std::abs(lambda - window[j].first) <= detail::kCycleMatchTol &&
          resid >= window[j].second - 1e-15) {
        for (std::size_t i = j; i < window.size(); ++i) {
          const double v = window[i].first;
          bool seen = false;
          for (double o : r.cycle_orbit) seen = seen || std::abs(o - v) <= detail::kCycleMatchTol;
          if (!seen) r.cycle_orbit.push_back(v);
        }
        std::sort(r.cycle_orbit.begin(), r.cycle_orbit.end());
        r.lambda_star = best_lambda;
        r.status = SolverStatus::Cycled;
        r.iterations = k;
        r.residual = best_resid;
        return r;
      }
    }
    window.emplace_back(lambda, resid);
    while (window.size() > static_cast<std::size_t>(cfg.cycle_window)) window.pop_front();

    if (k >= cfg.max_iters) {
      r.lambda_star = best_lambda;
      r.status = SolverStatus::MaxIter;
      r.iterations = k;
      r.residual = best_resid;
      return r;
    }

    const double raw = detail::raw_newton_step(s.derivative, s.bsub, eps);
    eps *= sched.rho;
    const double step = std::max(-0.5 * lambda, raw);
    if (cfg.record_trace) r.trace.back().step = step;
    lambda += step;
  }
}

struct BracketResult {
  double lo = 0.0;  ///< theta'(lo) < 0, or lo == hi at an exact root
  double hi = 0.0;  ///< theta'(hi) >= 0
  int evaluations = 0;
};

/// Geometric expansion/contraction by factor 2 from lambda0 until the
/// derivative changes sign. Returns nothing if the cap is exhausted.
[[nodiscard]] inline std::optional<BracketResult> bracket(const ScalarObjective& obj,
                                                          double lambda0,
                                                          int max_steps = 200) {
  if (!(lambda0 > 0.0)) throw std::invalid_argument("bracket: lambda0 must be positive");
  BracketResult b;
  double t0 = theta_sample(obj, lambda0).derivative;
  b.evaluations = 1;
  if (t0 == 0.0) {
    b.lo = b.hi = lambda0;
    return b;
  }
  if (t0 < 0.0) {
    double lo = lambda0, hi = 2.0 * lambda0;
    for (int i = 0; i < max_steps; ++i) {
      ++b.evaluations;
      if (theta_sample(obj, hi).derivative >= 0.0) {
        b.lo = lo;
        b.hi = hi;
        return b;
      }
      lo = hi;
      hi *= 2.0;
    }
    return std::nullopt;
  }
  double hi = lambda0, lo = 0.5 * lambda0;
  for (int i = 0; i < max_steps; ++i) {
    ++b.evaluations;
    const double ta = theta_sample(obj, lo).derivative;
    if (ta == 0.0) {
      b.lo = b.hi = lo;
      return b;
    }
    if (ta < 0.0) {
      b.lo = lo;
      b.hi = hi;
      return b;
    }
    hi = lo;
    lo *= 0.5;
  }
  return std::nullopt;
}

enum class BisectionTol { DerivTol, WidthTol };

/// Plain bisection on theta' over [lo, hi] with theta'(lo) < 0 < theta'(hi).
/// Stops on |theta'(mid)| < tol (DerivTol) or hi - lo < tol (WidthTol). A
/// degenerate interval lo == hi is returned immediately.
inline SolverResult bisection(const ScalarObjective& obj, double lo, double hi,
                              BisectionTol tol_kind, double tol, int max_iters = 200,
                              bool record_trace = false) {
  if (!(tol > 0.0)) throw std::invalid_argument("bisection: tolerance must be positive");
  if (!(lo > 0.0) || !(hi >= lo)) {
    throw std::invalid_argument("bisection: need 0 < lo <= hi");
  }
  SolverResult r;
  auto finish = [&](double lambda, double resid, SolverStatus status, int iters) {
    r.lambda_star = lambda;
    r.residual = resid;
    r.status = status;
    r.iterations = iters;
    return r;
  };

  const ThetaSample slo = theta_sample(obj, lo);
  if (slo.derivative == 0.0) return finish(lo, 0.0, SolverStatus::Converged, 0);
  if (lo == hi) return finish(lo, std::abs(slo.derivative), SolverStatus::BracketFailed, 0);
  const ThetaSample shi = theta_sample(obj, hi);
  if (shi.derivative == 0.0) return finish(hi, 0.0, SolverStatus::Converged, 0);
  if (!(slo.derivative < 0.0) || !(shi.derivative > 0.0)) {
    return finish(lo, std::abs(slo.derivative), SolverStatus::BracketFailed, 0);
  }

  double a = lo, c = hi;
  for (int k = 0; k < max_iters; ++k) {
    const double m = 0.5 * (a + c);
    if (m <= a || m >= c) {
      // interval collapsed to adjacent floats
      const double resid = std::abs(theta_sample(obj, m).derivative);
      const bool ok = tol_kind == BisectionTol::WidthTol || resid < tol;
      return finish(m, resid, ok ? SolverStatus::Converged : SolverStatus::MaxIter, k);
    }
    const ThetaSample s = theta_sample(obj, m);
    if (record_trace) r.trace.push_back({m, s.derivative, s.bsub, 0.0});
    if (tol_kind == BisectionTol::DerivTol && std::abs(s.derivative) < tol) {
      return finish(m, std::abs(s.derivative), SolverStatus::Converged, k + 1);
    }
    if (s.derivative < 0.0) {
      a = m;
    } else {
      c = m;
    }
    if (tol_kind == BisectionTol::WidthTol && c - a < tol) {
      const double mid = 0.5 * (a + c);
      const double resid = std::abs(theta_sample(obj, mid).derivative);
      return finish(mid, resid, SolverStatus::Converged, k + 1);
    }
  }
  const double mid = 0.5 * (a + c);
  return finish(mid, std::abs(theta_sample(obj, mid).derivative), SolverStatus::MaxIter,
                max_iters);
}

}  // namespace epiproj
