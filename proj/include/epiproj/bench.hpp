// epiproj - epigraphical and level-set projections via proximal maps
// Copyright 2026 The epiproj authors
// Licensed under Apache 2.0

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "epiproj/catalog.hpp"
#include "epiproj/projections.hpp"
#include "epiproj/rng.hpp"

namespace epiproj {

enum class Experiment { L1Ball, SumLogEpi };

enum class BenchAlgorithm { NewtonFull, NewtonLS, BisectionDeriv, BisectionWidth, SortBaseline };

[[nodiscard]] constexpr const char* to_string(Experiment e) {
  return e == Experiment::L1Ball ? "l1ball" : "sumlog";
}

[[nodiscard]] constexpr const char* to_string(BenchAlgorithm a) {
  switch (a) {
    case BenchAlgorithm::NewtonFull: return "newton_full";
    case BenchAlgorithm::NewtonLS: return "newton_ls";
    case BenchAlgorithm::BisectionDeriv: return "bisection_deriv";
    case BenchAlgorithm::BisectionWidth: return "bisection_width";
    case BenchAlgorithm::SortBaseline: return "sort_baseline";
  }
  return "unknown";
}

[[nodiscard]] inline BenchAlgorithm bench_algorithm_from_string(const std::string& s) {
  for (BenchAlgorithm a :
       {BenchAlgorithm::NewtonFull, BenchAlgorithm::NewtonLS, BenchAlgorithm::BisectionDeriv,
        BenchAlgorithm::BisectionWidth, BenchAlgorithm::SortBaseline}) {
    if (s == to_string(a)) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

/// Seeded random-instance description for the two experiment presets.
///
/// l1ball:  x ~ N(0, sigma^2)^n projected onto the unit 1-norm ball;
///          lambda0 from the largest magnitude among ceil(sqrt(n) ln n)
///          coordinates sampled without replacement (falling back to the
///          full-vector maximum if the sample is all zero).
/// sumlog:  x ~ U[-1,1]^n, alpha ~ U[-2,-0.5], projected onto the epigraph
///          of the negative sum-log; lambda0 = sqrt(n).
struct ExperimentSpec {
  Experiment experiment = Experiment::L1Ball;
  std::vector<std::size_t> dimensions;
  std::vector<double> sigmas;  ///< l1ball only
  std::optional<long> trials;  ///< default: 1e5 per cell, 500 once n >= 1e6
  std::uint64_t seed = 0;
  std::vector<BenchAlgorithm> algorithms;
  int threads = 1;
};

[[nodiscard]] inline ExperimentSpec experiment_preset(Experiment e, std::uint64_t seed) {
  ExperimentSpec s;
  s.experiment = e;
  s.seed = seed;
  if (e == Experiment::L1Ball) {
    s.dimensions = {20, 1000, 1000000};
    s.sigmas = {0.1, 0.05, 0.01, 0.005};
    s.algorithms = {BenchAlgorithm::SortBaseline, BenchAlgorithm::NewtonFull,
                    BenchAlgorithm::BisectionWidth};
  } else {
    s.dimensions = {1, 1000, 1000000};
    s.algorithms = {BenchAlgorithm::NewtonFull, BenchAlgorithm::BisectionDeriv,
                    BenchAlgorithm::BisectionWidth};
  }
  return s;
}

struct BenchRow {
  std::string experiment;
  std::size_t n = 0;
  std::optional<double> sigma;
  std::string algorithm;
  long trials = 0;
  double mean_seconds = 0.0;
  double mean_iters = 0.0;
  /// max over root-branch trials of the root-equation residual
  /// |f(point) - alpha| (level) resp. |f(point) - lambda* - alpha| (epi).
  double max_residual = 0.0;
  /// max inf-norm deviation from the first algorithm's output; for the
  /// sumlog experiment this is measured on lambda*.
  std::optional<double> agreement;
};

namespace detail {

struct CellAccum {
  double seconds = 0.0;
  long iters = 0;
  double max_residual = 0.0;
  double agreement = 0.0;
  long trials = 0;
};

// Solver presets. The 1-norm derivative is piecewise affine, so the full
// Newton step runs unregularized at the tight tolerance; the bisection width
// is chosen so that its point lands within the ball feasibility slack.
inline SolverConfig l1ball_solver_config(double lambda0) {
  SolverConfig cfg;
  cfg.lambda0 = lambda0;
  cfg.delta = 1e-15;
  cfg.eps = EpsSchedule{0.0, 0.5};
  cfg.bisection_width = 1e-13;
  cfg.max_iters = 200;
  return cfg;
}

inline SolverConfig sumlog_solver_config(double lambda0) {
  SolverConfig cfg;
  cfg.lambda0 = lambda0;
  cfg.delta = 1e-4;
  cfg.bisection_width = 1e-8;
  cfg.max_iters = 200;
  return cfg;
}

struct TrialOutcome {
  double lambda_star = 0.0;
  double residual = 0.0;
  long iterations = 0;
};

inline TrialOutcome run_root_solver(const ScalarObjective& obj, const SolverConfig& cfg,
                                    BenchAlgorithm algo) {
  SolverResult r;
  switch (algo) {
    case BenchAlgorithm::NewtonFull:
      r = newton_fullstep(obj, cfg);
      break;
    case BenchAlgorithm::NewtonLS:
      r = newton_linesearch(obj, cfg);
      break;
    case BenchAlgorithm::BisectionDeriv:
    case BenchAlgorithm::BisectionWidth: {
      const auto br = bracket(obj, cfg.lambda0);
      if (!br) throw std::runtime_error("bench: bracketing failed");
      const bool deriv = algo == BenchAlgorithm::BisectionDeriv;
      r = bisection(obj, br->lo, br->hi,
                    deriv ? BisectionTol::DerivTol : BisectionTol::WidthTol,
                    deriv ? cfg.delta : cfg.bisection_width, 400);
      r.iterations += br->evaluations;
      break;
    }
    case BenchAlgorithm::SortBaseline:
      throw std::logic_error("sort baseline is not a root solver");
  }
  return {r.lambda_star, r.residual, r.iterations};
}

}  // namespace detail

/// Runs the seeded experiment. Every algorithm consumes the identical
/// instance stream: instance coordinates come from the (seed, cell, trial)
/// substream and the lambda0 heuristic from a separate substream, so adding
/// or removing algorithms never shifts what any other algorithm sees.
/// Timing covers the solve and the projected point only; cells and
/// algorithms run sequentially.
inline std::vector<BenchRow> run_bench(const ExperimentSpec& spec) {
  std::vector<BenchRow> rows;
  if (spec.algorithms.empty()) return rows;
  const bool l1 = spec.experiment == Experiment::L1Ball;
  const std::vector<double> sigmas = l1 ? spec.sigmas : std::vector<double>{0.0};

  for (std::size_t ni = 0; ni < spec.dimensions.size(); ++ni) {
    const std::size_t n = spec.dimensions[ni];
    for (std::size_t si = 0; si < sigmas.size(); ++si) {
      const double sigma = sigmas[si];
      const long trials = spec.trials.value_or(n >= 1000000 ? 500 : 100000);
      const std::uint64_t cell = stream_id(l1 ? 1 : 2, ni, si);

      try {
        const ProxFunctionPtr f = l1 ? make_prox_function("l1:scale=1", n)
                                     : make_prox_function("neglog", n);
        std::vector<double> x(n), out(n), ref(n);
        std::vector<bool> seen(l1 ? n : 0, false);
        std::vector<std::size_t> picked;
        std::vector<detail::CellAccum> acc(spec.algorithms.size());
        double ref_lambda = 0.0;

        for (long t = 0; t < trials; ++t) {
          // instance substream: coordinates, then alpha (sumlog)
          Rng inst(spec.seed, stream_id(cell, 3, static_cast<std::uint64_t>(t)));
          double alpha = 1.0;
          double norm1 = 0.0;
          if (l1) {
            for (auto& v : x) {
              v = inst.gaussian(sigma);
              norm1 += std::abs(v);
            }
          } else {
            for (auto& v : x) v = inst.uniform(-1.0, 1.0);
            alpha = inst.uniform(-2.0, -0.5);
          }

          // lambda0 heuristic on its own substream
          double lambda0 = std::sqrt(static_cast<double>(n));
          if (l1) {
            Rng pick(spec.seed, stream_id(cell, 4, static_cast<std::uint64_t>(t)));
            const auto k = static_cast<std::size_t>(std::ceil(
                std::sqrt(static_cast<double>(n)) * std::log(static_cast<double>(n))));
            picked.clear();
            double best = 0.0;
            for (std::size_t drawn = 0; drawn < std::min(std::max<std::size_t>(k, 1), n);) {
              const auto j = static_cast<std::size_t>(pick.next_u64() % n);
              if (seen[j]) continue;
              seen[j] = true;
              picked.push_back(j);
              best = std::max(best, std::abs(x[j]));
              ++drawn;
            }
            for (std::size_t j : picked) seen[j] = false;
            if (best == 0.0) {
              for (double v : x) best = std::max(best, std::abs(v));
            }
            lambda0 = best;
          }

          ScalarObjective obj;
          obj.kind = l1 ? ObjectiveKind::Level : ObjectiveKind::Epi;
          obj.function = f;
          obj.base_point.assign(x.begin(), x.end());
          obj.alpha = alpha;

          for (std::size_t ai = 0; ai < spec.algorithms.size(); ++ai) {
            const BenchAlgorithm algo = spec.algorithms[ai];
            detail::CellAccum& a = acc[ai];
            double lambda_star = 0.0;
            double residual = 0.0;

            const auto t0 = std::chrono::steady_clock::now();
            if (algo == BenchAlgorithm::SortBaseline) {
              l1_ball_sort_project_into(x, 1.0, out);
              double n1 = 0.0;
              for (double v : out) n1 += std::abs(v);
              residual = norm1 <= 1.0 ? 0.0 : std::abs(n1 - 1.0);
            } else if (l1 && norm1 <= 1.0) {
              std::copy(x.begin(), x.end(), out.begin());  // already inside the ball
            } else {
              const SolverConfig cfg = l1 ? detail::l1ball_solver_config(lambda0)
                                          : detail::sumlog_solver_config(lambda0);
              const detail::TrialOutcome o = detail::run_root_solver(obj, cfg, algo);
              lambda_star = o.lambda_star;
              residual = o.residual;
              a.iters += o.iterations;
              f->prox_into(x, lambda_star, out);
            }
            const auto t1 = std::chrono::steady_clock::now();

            a.seconds += std::chrono::duration<double>(t1 - t0).count();
            a.max_residual = std::max(a.max_residual, residual);
            ++a.trials;
            if (ai == 0) {
              std::copy(out.begin(), out.end(), ref.begin());
              ref_lambda = lambda_star;
            } else {
              const double dev = l1 ? inf_norm_diff(out, ref)
                                    : std::abs(lambda_star - ref_lambda);
              a.agreement = std::max(a.agreement, dev);
            }
          }
        }

        for (std::size_t ai = 0; ai < spec.algorithms.size(); ++ai) {
          BenchRow row;
          row.experiment = to_string(spec.experiment);
          row.n = n;
          if (l1) row.sigma = sigma;
          row.algorithm = to_string(spec.algorithms[ai]);
          row.trials = acc[ai].trials;
          row.mean_seconds = trials > 0 ? acc[ai].seconds / double(trials) : 0.0;
          row.mean_iters = trials > 0 ? double(acc[ai].iters) / double(trials) : 0.0;
          row.max_residual = acc[ai].max_residual;
          if (ai > 0 && trials > 0) row.agreement = acc[ai].agreement;
          rows.push_back(std::move(row));
        }
      } catch (const std::bad_alloc&) {
        BenchRow row;
        row.experiment = to_string(spec.experiment);
        row.n = n;
        if (l1) row.sigma = sigma;
        row.algorithm = "(skipped: out of memory)";
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace epiproj
