// epiproj - epigraphical and level-set projections via proximal maps
// Copyright 2026 The epiproj authors
// Licensed under Apache 2.0

#pragma once

#include <utility>
#include <vector>

#include "epiproj/prox_function.hpp"

namespace epiproj {

/// Moreau envelope e_lambda f(x) = min_u f(u) + (1/2 lambda) ||x - u||^2.
[[nodiscard]] inline double moreau_envelope(const ProxFunction& f, VecView x, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("moreau_envelope: lambda must be positive");
  const ProxCurve c = f.prox_curve(x, lambda);
  return c.value + c.sqdist / (2.0 * lambda);
}

/// Gradient of the envelope in x: (x - P_lambda f(x)) / lambda.
[[nodiscard]] inline std::vector<double> envelope_gradient(const ProxFunction& f, VecView x,
                                                           double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("envelope_gradient: lambda must be positive");
  std::vector<double> g(x.size());
  f.prox_into(x, lambda, g);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = (x[i] - g[i]) / lambda;
  return g;
}

/// Proximal value function eta(lambda) = f(P_lambda f(x)) for lambda > 0,
/// extended by f(P_{cl dom f}(x)) for lambda <= 0 (possibly +inf).
[[nodiscard]] inline double proximal_value(const ProxFunction& f, VecView x, double lambda) {
  if (lambda > 0.0) return f.prox_curve(x, lambda).value;
  return f.domain_projection(x).value;
}

/// Antiderivative device: phi(lambda) = -lambda e_lambda f(x) for lambda > 0,
/// with the squared-distance value at 0 and the linear extension below. Its
/// derivative on the positive axis is -eta(lambda). When the projection onto
/// cl(dom f) falls outside dom f, the extension below 0 is +inf.
[[nodiscard]] inline double phi_bar(const ProxFunction& f, VecView x, double lambda) {
  if (lambda > 0.0) {
    const ProxCurve c = f.prox_curve(x, lambda);
    return -lambda * c.value - 0.5 * c.sqdist;
  }
  const ProxEvaluation dp = f.domain_projection(x);
  const double half_sqdist = 0.5 * squared_distance(x, dp.point);
  if (lambda == 0.0) return -half_sqdist;
  if (!is_finite(dp.value)) return infinity();
  return -lambda * dp.value - half_sqdist;
}

enum class ObjectiveKind { Level, Epi };

/// The scalar objective theta whose positive critical point is the proximal
/// parameter of the level-set or epigraphical projection of base_point.
struct ScalarObjective {
  ObjectiveKind kind = ObjectiveKind::Epi;
  ProxFunctionPtr function;
  std::vector<double> base_point;
  double alpha = 0.0;
  /// Level only: true when the catalog's known infimum certifies that some
  /// x with f(x) < alpha exists. Otherwise feasibility is caller-asserted.
  bool strict_feasibility_known = false;
};

[[nodiscard]] inline ScalarObjective make_epi_objective(ProxFunctionPtr f,
                                                        std::vector<double> base_point,
                                                        double alpha) {
  f->validate_base_point(base_point);
  return {ObjectiveKind::Epi, std::move(f), std::move(base_point), alpha, false};
}

[[nodiscard]] inline ScalarObjective make_level_objective(ProxFunctionPtr f,
                                                          std::vector<double> base_point,
                                                          double alpha) {
  f->validate_base_point(base_point);
  bool certified = false;
  if (const auto inf = f->infimum()) {
    if (!(alpha > *inf)) {
      throw std::invalid_argument("level " + std::to_string(alpha) +
                                  " is not strictly above inf f; the level set is empty "
                                  "or has no interior value");
    }
    certified = true;
  }
  return {ObjectiveKind::Level, std::move(f), std::move(base_point), alpha, certified};
}

/// theta, theta' and a Bouligand element of theta'' at one lambda > 0.
struct ThetaSample {
  double lambda = 0.0;
  double value = 0.0;
  double derivative = 0.0;
  double bsub = 0.0;
};

/// theta_Level(lambda) = phi(lambda) + alpha*lambda
/// theta_Epi(lambda)   = phi(lambda) + alpha*lambda + lambda^2/2
/// Defined on all of R; +inf propagates from phi below 0.
[[nodiscard]] inline double theta_value(const ScalarObjective& obj, double lambda) {
  double v = phi_bar(*obj.function, obj.base_point, lambda) + obj.alpha * lambda;
  if (obj.kind == ObjectiveKind::Epi) v += 0.5 * lambda * lambda;
  return v;
}

[[nodiscard]] inline ThetaSample theta_sample(const ScalarObjective& obj, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("theta derivative is defined for lambda > 0 only");
  }
  const ProxCurve c = obj.function->prox_curve(obj.base_point, lambda);
  ThetaSample s;
  s.lambda = lambda;
  s.value = -lambda * c.value - 0.5 * c.sqdist + obj.alpha * lambda;
  s.derivative = -c.value + obj.alpha;
  s.bsub = -c.slope;
  if (obj.kind == ObjectiveKind::Epi) {
    s.value += 0.5 * lambda * lambda;
    s.derivative += lambda;
    s.bsub += 1.0;
  }
  return s;
}

}  // namespace epiproj
