// epiproj - epigraphical and level-set projections via proximal maps
// Copyright 2026 The epiproj authors
// Licensed under Apache 2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epiproj/common.hpp"

namespace epiproj {

/// Prox output together with the function value there and the parameter used.
struct ProxEvaluation {
  std::vector<double> point;
  double value = 0.0;  ///< f(point); +inf only for domain projections
  double lambda = 0.0;
};

/// One fused pass over a prox point P = P_lambda f(x):
///   value  = f(P)
///   sqdist = ||x - P||^2
///   slope  = an element of the Bouligand subdifferential of lambda -> f(P).
struct ProxCurve {
  double value = 0.0;
  double sqdist = 0.0;
  double slope = 0.0;
};

/// A closed proper convex function with a closed-form proximal map.
///
/// Everything the root solvers consume is reachable through four
/// capabilities: eval, prox, domain_projection and prox_value_slope.
/// prox_curve bundles them into the single pass the solvers iterate on;
/// the default falls back to materializing the prox point.
class ProxFunction {
 public:
  virtual ~ProxFunction() = default;

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }

  /// Round-trippable textual form, e.g. "l1:scale=2".
  [[nodiscard]] virtual std::string descriptor() const = 0;

  [[nodiscard]] double eval(VecView u) const {
    check_dim(u);
    return do_eval(u);
  }

  [[nodiscard]] ProxEvaluation prox(VecView x, double lambda) const {
    check_dim(x);
    check_lambda(lambda);
    ProxEvaluation r;
    r.point.resize(dim_);
    do_prox(x, lambda, r.point);
    r.value = do_eval(r.point);
    r.lambda = lambda;
    return r;
  }

  void prox_into(VecView x, double lambda, VecSpan out) const {
    check_dim(x);
    check_dim(out);
    check_lambda(lambda);
    do_prox(x, lambda, out);
  }

  /// Euclidean projection onto cl(dom f); the lambda = 0 extension of prox.
  [[nodiscard]] ProxEvaluation domain_projection(VecView x) const {
    check_dim(x);
    ProxEvaluation r;
    r.point.resize(dim_);
    do_domain_projection(x, r.point);
    r.value = do_eval(r.point);  // may be +inf on the domain boundary
    r.lambda = 0.0;
    return r;
  }

  void domain_projection_into(VecView x, VecSpan out) const {
    check_dim(x);
    check_dim(out);
    do_domain_projection(x, out);
  }

  /// One Bouligand element of lambda -> f(P_lambda f(x)); always <= 0.
  [[nodiscard]] double prox_value_slope(VecView x, double lambda) const {
    check_dim(x);
    check_lambda(lambda);
    return do_prox_value_slope(x, lambda);
  }

  [[nodiscard]] virtual ProxCurve prox_curve(VecView x, double lambda) const {
    check_dim(x);
    check_lambda(lambda);
    std::vector<double> p(dim_);
    do_prox(x, lambda, p);
    ProxCurve c;
    c.value = do_eval(p);
    c.sqdist = squared_distance(x, p);
    c.slope = do_prox_value_slope(x, lambda);
    return c;
  }

  /// inf f when the catalog knows it (-inf for functions unbounded below).
  [[nodiscard]] virtual std::optional<double> infimum() const { return std::nullopt; }

  /// Members defined only at specific base points reject others here.
  virtual void validate_base_point(VecView x) const { check_dim(x); }

 protected:
  ProxFunction(std::string name, std::size_t dim) : name_(std::move(name)), dim_(dim) {
    if (dim_ == 0) throw std::invalid_argument(name_ + ": dimension must be positive");
  }

  void check_dim(VecView v) const {
    if (v.size() != dim_) {
      throw std::invalid_argument(name_ + ": expected dimension " + std::to_string(dim_) +
                                  ", got " + std::to_string(v.size()));
    }
  }

  static void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !is_finite(lambda)) {
      throw std::invalid_argument("prox parameter must be positive and finite");
    }
  }

  virtual double do_eval(VecView u) const = 0;
  virtual void do_prox(VecView x, double lambda, VecSpan out) const = 0;
  virtual void do_domain_projection(VecView x, VecSpan out) const = 0;
  virtual double do_prox_value_slope(VecView x, double lambda) const = 0;

 private:
  std::string name_;
  std::size_t dim_;
};

using ProxFunctionPtr = std::shared_ptr<const ProxFunction>;

}  // namespace epiproj
