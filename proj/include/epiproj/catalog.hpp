// epiproj - epigraphical and level-set projections via proximal maps
// Copyright 2026 The epiproj authors
// Licensed under Apache 2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "epiproj/prox_function.hpp"

namespace epiproj {

/// c * ||.||_1 with c > 0. Prox is the soft threshold at c*lambda.
///
/// At the kinks |x_i| = c*lambda of lambda -> f(P_lambda f(x)) the slope uses
/// the strictly-active set {i : |x_i| > c*lambda}, i.e. the right-hand slope.
class ScaledL1Norm final : public ProxFunction {
 public:
  ScaledL1Norm(double scale, std::size_t dim)
      : ProxFunction("l1", dim), scale_(scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("l1: scale must be positive");
  }

  [[nodiscard]] double scale() const { return scale_; }
  [[nodiscard]] std::string descriptor() const override;
  [[nodiscard]] std::optional<double> infimum() const override { return 0.0; }

  [[nodiscard]] ProxCurve prox_curve(VecView x, double lambda) const override {
    check_dim(x);
    check_lambda(lambda);
    const double th = scale_ * lambda;
    StableSum value, sq;
    double slope = 0.0;
    for (double xi : x) {
      const double a = std::abs(xi);
      const double t = a - th;
      if (t > 0.0) {
        value.add(t);
        sq.add(th * th);
        slope -= 1.0;
      } else {
        sq.add(a * a);
      }
    }
    return {scale_ * value.value(), sq.value(), scale_ * scale_ * slope};
  }

 protected:
  double do_eval(VecView u) const override {
    StableSum s;
    for (double ui : u) s.add(std::abs(ui));
    return scale_ * s.value();
  }

  void do_prox(VecView x, double lambda, VecSpan out) const override {
    const double th = scale_ * lambda;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double shrunk = std::abs(x[i]) - th;
      out[i] = shrunk > 0.0 ? std::copysign(shrunk, x[i]) : 0.0;
    }
  }

  void do_domain_projection(VecView x, VecSpan out) const override {
    std::copy(x.begin(), x.end(), out.begin());
  }

  double do_prox_value_slope(VecView x, double lambda) const override {
    return prox_curve(x, lambda).slope;
  }

 private:
  double scale_;
};

/// Indicator of the unit box [-1,1]^n. Prox is the clamp, for every lambda.
class UnitBoxIndicator final : public ProxFunction {
 public:
  explicit UnitBoxIndicator(std::size_t dim) : ProxFunction("box", dim) {}

  [[nodiscard]] std::string descriptor() const override;
  [[nodiscard]] std::optional<double> infimum() const override { return 0.0; }

  [[nodiscard]] ProxCurve prox_curve(VecView x, double lambda) const override {
    check_dim(x);
    check_lambda(lambda);
    StableSum sq;
    for (double xi : x) {
      const double d = std::abs(xi) > 1.0 ? std::abs(xi) - 1.0 : 0.0;
      sq.add(d * d);
    }
    return {0.0, sq.value(), 0.0};
  }

 protected:
  double do_eval(VecView u) const override {
    for (double ui : u) {
      if (std::abs(ui) > 1.0) return infinity();
    }
    return 0.0;
  }

  void do_prox(VecView x, double lambda, VecSpan out) const override {
    (void)lambda;
    do_domain_projection(x, out);
  }

  void do_domain_projection(VecView x, VecSpan out) const override {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::clamp(x[i], -1.0, 1.0);
  }

  double do_prox_value_slope(VecView, double) const override { return 0.0; }
};

/// c * ||.||_1 + indicator of [-1,1]^n, coordinatewise
///   P_lambda f(x)_i = min{max{|x_i| - c*lambda, 0}, 1} * sgn(x_i).
///
/// The slope counts coordinates with 0 < |x_i| - c*lambda < 1 strictly; at
/// the box kink |x_i| - c*lambda = 1 this picks the flat (left-hand)
/// Bouligand element, the one under which the full Newton step can cycle.
class ScaledAbsBox final : public ProxFunction {
 public:
  ScaledAbsBox(double scale, std::size_t dim)
      : ProxFunction("absbox", dim), scale_(scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("absbox: scale must be positive");
  }

  [[nodiscard]] double scale() const { return scale_; }
  [[nodiscard]] std::string descriptor() const override;
  [[nodiscard]] std::optional<double> infimum() const override { return 0.0; }

  [[nodiscard]] ProxCurve prox_curve(VecView x, double lambda) const override {
    check_dim(x);
    check_lambda(lambda);
    const double th = scale_ * lambda;
    StableSum value, sq;
    double slope = 0.0;
    for (double xi : x) {
      const double a = std::abs(xi);
      const double d = a - th;
      const double t = std::clamp(d, 0.0, 1.0);
      value.add(t);
      sq.add((a - t) * (a - t));
      if (d > 0.0 && d < 1.0) slope -= 1.0;
    }
    return {scale_ * value.value(), sq.value(), scale_ * scale_ * slope};
  }

 protected:
  double do_eval(VecView u) const override {
    StableSum s;
    for (double ui : u) {
      if (std::abs(ui) > 1.0) return infinity();
      s.add(std::abs(ui));
    }
    return scale_ * s.value();
  }

  void do_prox(VecView x, double lambda, VecSpan out) const override {
    const double th = scale_ * lambda;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double t = std::clamp(std::abs(x[i]) - th, 0.0, 1.0);
      out[i] = std::copysign(t, x[i]);
    }
  }

  void do_domain_projection(VecView x, VecSpan out) const override {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::clamp(x[i], -1.0, 1.0);
  }

  double do_prox_value_slope(VecView x, double lambda) const override {
    return prox_curve(x, lambda).slope;
  }

 private:
  double scale_;
};

/// -sum_i log(x_i) on the open positive orthant.
///   P_lambda f(x)_i = (x_i + sqrt(x_i^2 + 4 lambda)) / 2,
/// evaluated through the conjugate-root form for x_i < 0 to avoid
/// cancellation. At x = 0, lambda > 0 this is exactly sqrt(lambda).
class NegLog final : public ProxFunction {
 public:
  explicit NegLog(std::size_t dim) : ProxFunction("neglog", dim) {}

  [[nodiscard]] std::string descriptor() const override;
  [[nodiscard]] std::optional<double> infimum() const override { return -infinity(); }

  static double prox1(double x, double lambda) {
    const double s = std::sqrt(x * x + 4.0 * lambda);
    return x >= 0.0 ? 0.5 * (x + s) : (2.0 * lambda) / (s - x);
  }

  [[nodiscard]] ProxCurve prox_curve(VecView x, double lambda) const override {
    check_dim(x);
    check_lambda(lambda);
    StableSum value, sq, slope;
    for (double xi : x) {
      const double y = prox1(xi, lambda);
      value.add(-std::log(y));
      const double d = xi - y;
      sq.add(d * d);
      slope.add(-1.0 / (lambda + y * y));
    }
    return {value.value(), sq.value(), slope.value()};
  }

 protected:
  double do_eval(VecView u) const override {
    StableSum s;
    for (double ui : u) {
      if (!(ui > 0.0)) return infinity();
      s.add(-std::log(ui));
    }
    return s.value();
  }

  void do_prox(VecView x, double lambda, VecSpan out) const override {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = prox1(x[i], lambda);
  }

  void do_domain_projection(VecView x, VecSpan out) const override {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i], 0.0);
  }

  double do_prox_value_slope(VecView x, double lambda) const override {
    StableSum slope;
    for (double xi : x) {
      const double y = prox1(xi, lambda);
      slope.add(-1.0 / (lambda + y * y));
    }
    return slope.value();
  }
};

/// -sum_i sqrt(x_i) on the nonnegative orthant, exposed at the base point 0
/// only, where P_lambda f(0)_i = (lambda/2)^(2/3). Other base points have no
/// closed-form prox in this catalog and are rejected.
class NegSqrt final : public ProxFunction {
 public:
  explicit NegSqrt(std::size_t dim) : ProxFunction("negsqrt", dim) {}

  [[nodiscard]] std::string descriptor() const override;
  [[nodiscard]] std::optional<double> infimum() const override { return -infinity(); }

  void validate_base_point(VecView x) const override {
    check_dim(x);
    for (double xi : x) {
      if (xi != 0.0) {
        throw std::invalid_argument("negsqrt: prox is available at the base point 0 only");
      }
    }
  }

  [[nodiscard]] ProxCurve prox_curve(VecView x, double lambda) const override {
    validate_base_point(x);
    check_lambda(lambda);
    const double n = static_cast<double>(dim());
    const double y = prox_at_zero(lambda);
    const double r = std::cbrt(0.5 * lambda);            // (lambda/2)^(1/3)
    return {-n * r, n * y * y, -n * r / (3.0 * lambda)};
  }

  static double prox_at_zero(double lambda) {
    const double h = 0.5 * lambda;
    return std::cbrt(h * h);
  }

 protected:
  double do_eval(VecView u) const override {
    StableSum s;
    for (double ui : u) {
      if (ui < 0.0) return infinity();
      s.add(-std::sqrt(ui));
    }
    return s.value();
  }

  void do_prox(VecView x, double lambda, VecSpan out) const override {
    validate_base_point(x);
    const double y = prox_at_zero(lambda);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = y;
  }

  void do_domain_projection(VecView x, VecSpan out) const override {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i], 0.0);
  }

  double do_prox_value_slope(VecView x, double lambda) const override {
    return prox_curve(x, lambda).slope;
  }
};

/// (1/2) ||.||^2. Prox is the scaling x / (1 + lambda).
class SquaredNorm final : public ProxFunction {
 public:
  explicit SquaredNorm(std::size_t dim) : ProxFunction("quad", dim) {}

  [[nodiscard]] std::string descriptor() const override;
  [[nodiscard]] std::optional<double> infimum() const override { return 0.0; }

  [[nodiscard]] ProxCurve prox_curve(VecView x, double lambda) const override {
    check_dim(x);
    check_lambda(lambda);
    const double nx = squared_norm(x);
    const double s = 1.0 + lambda;
    const double ratio = lambda / s;
    return {0.5 * nx / (s * s), nx * ratio * ratio, -nx / (s * s * s)};
  }

 protected:
  double do_eval(VecView u) const override { return 0.5 * squared_norm(u); }

  void do_prox(VecView x, double lambda, VecSpan out) const override {
    const double inv = 1.0 / (1.0 + lambda);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * inv;
  }

  void do_domain_projection(VecView x, VecSpan out) const override {
    std::copy(x.begin(), x.end(), out.begin());
  }

  double do_prox_value_slope(VecView x, double lambda) const override {
    const double s = 1.0 + lambda;
    return -squared_norm(x) / (s * s * s);
  }
};

namespace detail {

// Shortest decimal form that parses back to the same double.
inline std::string format_number(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

struct Descriptor {
  std::string family;
  std::map<std::string, std::string> params;
};

inline Descriptor parse_descriptor(std::string_view text) {
  Descriptor d;
  const auto colon = text.find(':');
  d.family = std::string(text.substr(0, colon));
  if (colon == std::string_view::npos) return d;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
      throw std::invalid_argument("bad descriptor parameter '" + std::string(item) +
                                  "' (expected key=value)");
    }
    d.params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  return d;
}

inline double parse_positive(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !(v > 0.0)) {
    throw std::invalid_argument("descriptor parameter " + key + "=" + text +
                                " must be a positive number");
  }
  return v;
}

}  // namespace detail

inline std::string ScaledL1Norm::descriptor() const {
  return "l1:scale=" + detail::format_number(scale_) + ",n=" + std::to_string(dim());
}
inline std::string UnitBoxIndicator::descriptor() const {
  return "box:n=" + std::to_string(dim());
}
inline std::string ScaledAbsBox::descriptor() const {
  return "absbox:scale=" + detail::format_number(scale_) + ",n=" + std::to_string(dim());
}
inline std::string NegLog::descriptor() const { return "neglog:n=" + std::to_string(dim()); }
inline std::string NegSqrt::descriptor() const { return "negsqrt:n=" + std::to_string(dim()); }
inline std::string SquaredNorm::descriptor() const { return "quad:n=" + std::to_string(dim()); }

/// Builds a catalog member from a textual descriptor such as "l1:scale=1" or
/// "neglog:n=1000". When `dim` is nonzero it must agree with any n=...
/// parameter; when zero, the descriptor must carry the dimension.
inline ProxFunctionPtr make_prox_function(std::string_view descriptor, std::size_t dim = 0) {
  const auto d = detail::parse_descriptor(descriptor);

  std::size_t n = dim;
  double scale = 1.0;
  bool scale_given = false;
  for (const auto& [key, value] : d.params) {
    if (key == "n") {
      const auto parsed = static_cast<std::size_t>(detail::parse_positive(key, value));
      if (dim != 0 && parsed != dim) {
        throw std::invalid_argument("descriptor dimension n=" + value +
                                    " does not match the input dimension " +
                                    std::to_string(dim));
      }
      n = parsed;
    } else if (key == "scale") {
      scale = detail::parse_positive(key, value);
      scale_given = true;
    } else {
      throw std::invalid_argument("unknown descriptor parameter '" + key + "'");
    }
  }
  if (n == 0) {
    throw std::invalid_argument("descriptor '" + std::string(descriptor) +
                                "' needs a dimension (n=... or an input vector)");
  }
  if (scale_given && d.family != "l1" && d.family != "absbox") {
    throw std::invalid_argument("'" + d.family + "' does not take a scale parameter");
  }

  if (d.family == "l1") return std::make_shared<ScaledL1Norm>(scale, n);
  if (d.family == "box") return std::make_shared<UnitBoxIndicator>(n);
  if (d.family == "absbox") return std::make_shared<ScaledAbsBox>(scale, n);
  if (d.family == "neglog") return std::make_shared<NegLog>(n);
  if (d.family == "negsqrt") return std::make_shared<NegSqrt>(n);
  if (d.family == "quad") return std::make_shared<SquaredNorm>(n);
  throw std::invalid_argument("unknown catalog member '" + d.family + "'");
}

}  // namespace epiproj
