// epiproj - epigraphical and level-set projections via proximal maps
// Copyright 2026 The epiproj authors
// Licensed under Apache 2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "epiproj/catalog.hpp"
#include "epiproj/envelope.hpp"
#include "epiproj/oracles.hpp"
#include "epiproj/rng.hpp"

namespace epiproj {

struct PropertyReport {
  std::string property;
  std::string instance;
  bool pass = true;
  double worst_slack = infinity();  ///< recorded even on pass
  long samples = 0;
};

namespace detail {

// Draws member-appropriate sample points; the fixed-base-point member is
// always sampled at the origin, which is the only point its prox serves.
struct MemberSampler {
  const ProxFunction& f;

  [[nodiscard]] bool fixed_base() const { return f.name() == "negsqrt"; }

  [[nodiscard]] std::vector<double> point(Rng& rng) const {
    std::vector<double> x(f.dim());
    if (fixed_base()) return x;
    for (auto& v : x) v = rng.uniform(-3.0, 3.0);
    return x;
  }

  [[nodiscard]] std::vector<double> domain_point(Rng& rng) const {
    std::vector<double> x(f.dim());
    const std::string& n = f.name();
    for (auto& v : x) {
      if (n == "box" || n == "absbox") {
        v = rng.uniform(-1.0, 1.0);
      } else if (n == "neglog") {
        v = rng.uniform(0.05, 3.0);
      } else if (n == "negsqrt") {
        v = rng.uniform(0.0, 3.0);
      } else {
        v = rng.uniform(-3.0, 3.0);
      }
    }
    return x;
  }

  // Kink locations of lambda -> f(P_lambda f(x)) for the piecewise members.
  [[nodiscard]] std::vector<double> kink_lambdas(VecView x) const {
    std::vector<double> kinks;
    const std::string& n = f.name();
    double scale = 1.0;
    if (n == "l1") scale = static_cast<const ScaledL1Norm&>(f).scale();
    if (n == "absbox") scale = static_cast<const ScaledAbsBox&>(f).scale();
    if (n == "l1" || n == "absbox") {
      for (double xi : x) {
        kinks.push_back(std::abs(xi) / scale);
        if (n == "absbox") kinks.push_back((std::abs(xi) - 1.0) / scale);
      }
    }
    return kinks;
  }
};

struct SlackTracker {
  double worst = infinity();
  bool pass = true;
  long samples = 0;

  void check(double slack, double floor) {
    worst = std::min(worst, slack);
    if (!(slack >= floor)) pass = false;
  }
};

inline Rng property_rng(std::uint64_t seed, std::uint64_t property_id,
                        std::uint64_t member_id, std::uint64_t trial) {
  return Rng(seed, stream_id(property_id, member_id, trial));
}

}  // namespace detail

/// Runs every calculus/prox property against the given members. Reports are
/// ordered by (property, member) and deterministic in the seed; trials may
/// be spread over `threads` workers.
inline std::vector<PropertyReport> run_property_suite(
    const std::vector<ProxFunctionPtr>& members, std::uint64_t seed, long trials,
    int threads = 1) {
  if (trials < 1) throw std::invalid_argument("run_property_suite: trials must be >= 1");

  struct Task {
    std::string property;
    std::function<void(const ProxFunctionPtr&, std::uint64_t, long, detail::SlackTracker&)> run;
  };

  using detail::MemberSampler;
  using detail::SlackTracker;

  std::vector<Task> tasks;

  // f(t u + (1-t) v) <= t f(u) + (1-t) f(v) on sampled domain points.
  tasks.push_back({"convexity", [&](const ProxFunctionPtr& f, std::uint64_t pid, long T,
                                    SlackTracker& out) {
    MemberSampler s{*f};
    std::vector<double> mid(f->dim());
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      const auto u = s.domain_point(rng);
      const auto v = s.domain_point(rng);
      const double w = rng.uniform01();
      for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = w * u[i] + (1.0 - w) * v[i];
      const double fu = f->eval(u), fv = f->eval(v), fm = f->eval(mid);
      const double slack =
          w * fu + (1.0 - w) * fv + 1e-12 * (1.0 + std::abs(fu) + std::abs(fv)) - fm;
      out.check(slack, 0.0);
      ++out.samples;
    }
  }});

  // (x - P)/lambda is a subgradient of f at P: subgradient inequality on
  // sampled domain points.
  tasks.push_back({"prox-optimality", [&](const ProxFunctionPtr& f, std::uint64_t pid, long T,
                                          SlackTracker& out) {
    MemberSampler s{*f};
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      const auto x = s.point(rng);
      const double lambda = rng.uniform(0.2, 3.0);
      const ProxEvaluation pe = f->prox(x, lambda);
      const auto u = s.domain_point(rng);
      double inner = 0.0, gnorm = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double gi = (x[i] - pe.point[i]) / lambda;
        inner += gi * (u[i] - pe.point[i]);
        gnorm += gi * gi;
      }
      const double fu = f->eval(u);
      const double scale = 1.0 + std::abs(pe.value) + std::abs(fu) + std::sqrt(gnorm);
      out.check(fu - pe.value - inner + 1e-9 * scale, 0.0);
      ++out.samples;
    }
  }});

  // Closed-form prox against the discretized minimization (1-d members).
  tasks.push_back({"grid-agreement", [&](const ProxFunctionPtr& f, std::uint64_t pid, long T,
                                         SlackTracker& out) {
    if (f->dim() != 1) return;
    MemberSampler s{*f};
    const long n = std::min<long>(T, 10);
    for (long t = 0; t < n; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      const auto x = s.point(rng);
      const double lambda = rng.uniform(0.3, 3.0);
      const GridSpec grid = default_grid(*f, x, lambda, 1000000);
      const auto gp = grid_prox(*f, x, lambda, grid);
      const double cell =
          (grid.intervals[0][1] - grid.intervals[0][0]) / double(grid.effective_resolution(1) - 1);
      const ProxEvaluation pe = f->prox(x, lambda);
      out.check(2.0 * cell - std::abs(pe.point[0] - gp[0]), 0.0);
      ++out.samples;
    }
  }});

  // ||P(x) - P(y)|| <= ||x - y||.
  tasks.push_back({"prox-nonexpansive", [&](const ProxFunctionPtr& f, std::uint64_t pid, long T,
                                            SlackTracker& out) {
    MemberSampler s{*f};
    if (s.fixed_base()) return;
    std::vector<double> px(f->dim()), py(f->dim());
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      const auto x = s.point(rng);
      const auto y = s.point(rng);
      const double lambda = rng.uniform(0.1, 4.0);
      f->prox_into(x, lambda, px);
      f->prox_into(y, lambda, py);
      const double slack = std::sqrt(squared_distance(x, y)) + 1e-12 -
                           std::sqrt(squared_distance(px, py));
      out.check(slack, 0.0);
      ++out.samples;
    }
  }});

  // P_lambda f(x) -> P_{cl dom f}(x) with nonincreasing error as lambda -> 0.
  tasks.push_back({"prox-limit-lambda0", [&](const ProxFunctionPtr& f, std::uint64_t pid,
                                             long T, SlackTracker& out) {
    MemberSampler s{*f};
    std::vector<double> p(f->dim()), dp(f->dim());
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      const auto x = s.point(rng);
      f->domain_projection_into(x, dp);
      double prev = infinity();
      for (double lambda : {1e-2, 1e-4, 1e-6, 1e-8}) {
        f->prox_into(x, lambda, p);
        const double err = std::sqrt(squared_distance(p, dp));
        out.check(prev - err + 1e-12, 0.0);
        prev = err;
      }
      ++out.samples;
    }
  }});

  // P_lambda(-log)(0) = sqrt(lambda) exactly (1e-14 relative).
  tasks.push_back({"sqrt-lambda-exact", [&](const ProxFunctionPtr& f, std::uint64_t pid, long T,
                                            SlackTracker& out) {
    if (f->name() != "neglog") return;
    std::vector<double> zero(f->dim(), 0.0), p(f->dim());
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      const double lambda = rng.uniform(1e-4, 10.0);
      f->prox_into(zero, lambda, p);
      const double want = std::sqrt(lambda);
      for (double pi : p) out.check(1e-14 - std::abs(pi - want) / want, 0.0);
      ++out.samples;
    }
  }});

  // Bouligand slope against the central secant of f(P_lambda f(x)) taken
  // inside one smooth piece; |slope - secant| <= 10 (1 + |slope|) h.
  tasks.push_back({"slope-secant", [&](const ProxFunctionPtr& f, std::uint64_t pid, long T,
                                       SlackTracker& out) {
    MemberSampler s{*f};
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      const auto x = s.point(rng);
      const auto kinks = s.kink_lambdas(x);
      double lambda = 0.0;
      for (int attempt = 0; attempt < 200; ++attempt) {
        lambda = rng.uniform(0.2, 3.0);
        bool clear = true;
        for (double k : kinks) clear = clear && std::abs(lambda - k) > 5e-4;
        if (clear) break;
      }
      const double slope = f->prox_value_slope(x, lambda);
      for (double h : {1e-4, 1e-5, 1e-6}) {
        const double secant =
            (f->prox_curve(x, lambda + h).value - f->prox_curve(x, lambda - h).value) /
            (2.0 * h);
        out.check(10.0 * (1.0 + std::abs(slope)) * h - std::abs(slope - secant), 0.0);
      }
      ++out.samples;
    }
  }});

  // Central difference of phi matches -eta: |D_h phi + eta| <= 10 h.
  tasks.push_back({"phibar-derivative", [&](const ProxFunctionPtr& f, std::uint64_t pid, long T,
                                            SlackTracker& out) {
    MemberSampler s{*f};
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      const auto x = s.point(rng);
      const double lambda = rng.uniform(0.15, 3.0);
      const double eta = proximal_value(*f, x, lambda);
      for (double h : {1e-3, 1e-4, 1e-5}) {
        const double diff = finite_diff(
            [&](double l) { return phi_bar(*f, x, l); }, lambda, h);
        out.check(10.0 * h - std::abs(diff + eta), 0.0);
      }
      ++out.samples;
    }
  }});

  // Envelope gradient against a directional finite difference in x.
  tasks.push_back({"envelope-gradient-fd", [&](const ProxFunctionPtr& f, std::uint64_t pid,
                                               long T, SlackTracker& out) {
    MemberSampler s{*f};
    if (s.fixed_base()) return;
    const double h = 1e-6;
    std::vector<double> up(f->dim()), dn(f->dim());
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      const auto x = s.point(rng);
      const double lambda = rng.uniform(0.5, 3.0);
      std::vector<double> d(f->dim());
      double nd = 0.0;
      for (auto& v : d) {
        v = rng.gaussian();
        nd += v * v;
      }
      nd = std::sqrt(nd);
      if (nd == 0.0) continue;
      for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] /= nd;
        up[i] = x[i] + h * d[i];
        dn[i] = x[i] - h * d[i];
      }
      const double fd =
          (moreau_envelope(*f, up, lambda) - moreau_envelope(*f, dn, lambda)) / (2.0 * h);
      const auto g = envelope_gradient(*f, x, lambda);
      double gd = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) gd += g[i] * d[i];
      out.check(1e-5 - std::abs(fd - gd), 0.0);
      ++out.samples;
    }
  }});

  // Two-sided prox-value bounds and the squared-distance bound between two
  // parameters; slack floor -1e-10.
  tasks.push_back({"key-lemma", [&](const ProxFunctionPtr& f, std::uint64_t pid, long T,
                                    SlackTracker& out) {
    MemberSampler s{*f};
    std::vector<double> pl(f->dim()), pm(f->dim());
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      const auto x = s.point(rng);
      double lambda = rng.uniform(0.1, 4.0);
      double mu = rng.uniform(0.1, 4.0);
      if (lambda == mu) mu += 0.5;
      f->prox_into(x, lambda, pl);
      f->prox_into(x, mu, pm);
      const double fl = f->eval(pl), fm = f->eval(pm);
      const double dl = squared_distance(x, pl), dm = squared_distance(x, pm);
      const double cross = squared_distance(pl, pm);
      const double mid = fl - fm;
      out.check(mid - (dm - dl + cross) / (2.0 * mu), -1e-10);
      out.check((dm - dl - cross) / (2.0 * lambda) - mid, -1e-10);
      out.check((mu - lambda) / (lambda + mu) * (dm - dl) - cross, -1e-10);
      ++out.samples;
    }
  }});

  // eta decreasing, ||x - P_lambda f(x)|| increasing.
  tasks.push_back({"eta-monotone", [&](const ProxFunctionPtr& f, std::uint64_t pid, long T,
                                       SlackTracker& out) {
    MemberSampler s{*f};
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      const auto x = s.point(rng);
      double lambda = rng.uniform(0.05, 4.0);
      double mu = rng.uniform(0.05, 4.0);
      if (lambda > mu) std::swap(lambda, mu);
      if (lambda == mu) mu += 0.25;
      const ProxCurve cl = f->prox_curve(x, lambda);
      const ProxCurve cm = f->prox_curve(x, mu);
      out.check(cl.value - cm.value + 1e-12, 0.0);
      out.check(std::sqrt(cm.sqdist) - std::sqrt(cl.sqdist) + 1e-12, 0.0);
      ++out.samples;
    }
  }});

  // e_lambda f(x) nonincreasing in lambda, bounded by f(x) on dom f, and
  // increasing to f(x) as lambda -> 0 (gap at 1e-8 at most half the gap at
  // 1e-2).
  tasks.push_back({"envelope-monotone-limit", [&](const ProxFunctionPtr& f, std::uint64_t pid,
                                                  long T, SlackTracker& out) {
    MemberSampler s{*f};
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      const auto x = s.domain_point(rng);
      const double fx = f->eval(x);
      const double tol = 1e-12 * (1.0 + std::abs(fx));
      double prev = -infinity();
      double first_gap = 0.0, last_gap = 0.0;
      bool first = true;
      for (double lambda : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
        const double e = moreau_envelope(*f, x, lambda);
        out.check(e - prev + tol, 0.0);  // nondecreasing as lambda decreases
        out.check(fx - e + tol, 0.0);    // bounded above by f(x)
        prev = e;
        last_gap = fx - e;
        if (first) {
          first_gap = last_gap;
          first = false;
        }
      }
      out.check(0.5 * first_gap - last_gap + 1e-12, 0.0);
      ++out.samples;
    }
  }});

  // Curvature elements: >= 1 in epigraph mode, >= 0 in level mode.
  tasks.push_back({"bsub-floor", [&](const ProxFunctionPtr& f, std::uint64_t pid, long T,
                                     SlackTracker& out) {
    MemberSampler s{*f};
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      ScalarObjective epi{ObjectiveKind::Epi, f, s.point(rng), rng.uniform(-2.0, 2.0), false};
      ScalarObjective lev{ObjectiveKind::Level, f, epi.base_point, 1.0, false};
      const double lambda = rng.uniform(1e-3, 5.0);
      out.check(theta_sample(epi, lambda).bsub - 1.0 + 1e-12, 0.0);
      out.check(theta_sample(lev, lambda).bsub + 1e-12, 0.0);
      ++out.samples;
    }
  }});

  // Fused one-pass kernels against the materialized route; this is the
  // remainder identity eta = e_lambda f - (1/2 lambda)||x - P||^2 checked
  // across the two evaluation paths (1e-12 relative).
  tasks.push_back({"envelope-remainder", [&](const ProxFunctionPtr& f, std::uint64_t pid,
                                             long T, SlackTracker& out) {
    MemberSampler s{*f};
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      const auto x = s.point(rng);
      const double lambda = rng.uniform(0.05, 4.0);
      const ProxCurve c = f->prox_curve(x, lambda);
      const ProxEvaluation pe = f->prox(x, lambda);
      const double sq = squared_distance(x, pe.point);
      out.check(1e-12 * (1.0 + std::abs(pe.value)) - std::abs(c.value - pe.value), 0.0);
      out.check(1e-12 * (1.0 + sq) - std::abs(c.sqdist - sq), 0.0);
      ++out.samples;
    }
  }});

  // theta' nondecreasing on an increasing lambda grid.
  tasks.push_back({"theta-prime-monotone", [&](const ProxFunctionPtr& f, std::uint64_t pid,
                                               long T, SlackTracker& out) {
    MemberSampler s{*f};
    for (long t = 0; t < T; ++t) {
      Rng rng = detail::property_rng(seed, pid, 0, t);
      ScalarObjective epi{ObjectiveKind::Epi, f, s.point(rng), rng.uniform(-2.0, 2.0), false};
      double lambda = rng.uniform(0.01, 0.2);
      double prev = -infinity();
      for (int i = 0; i < 12; ++i) {
        const double d = theta_sample(epi, lambda).derivative;
        out.check(d - prev + 1e-12, 0.0);
        prev = d;
        lambda *= 1.7;
      }
      ++out.samples;
    }
  }});

  std::vector<PropertyReport> reports(tasks.size() * members.size());
  parallel_for(tasks.size() * members.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t idx = b; idx < e; ++idx) {
      const std::size_t ti = idx / members.size();
      const std::size_t mi = idx % members.size();
      detail::SlackTracker tracker;
      const std::uint64_t pid = stream_id(0x9 + ti, mi);
      tasks[ti].run(members[mi], pid, trials, tracker);
      PropertyReport& r = reports[idx];
      r.property = tasks[ti].property;
      r.instance = members[mi]->descriptor();
      r.pass = tracker.pass;
      r.worst_slack = tracker.samples == 0 ? 0.0 : tracker.worst;
      r.samples = tracker.samples;
    }
  });
  return reports;
}

/// Default member set covering every catalog family.
inline std::vector<ProxFunctionPtr> default_property_members() {
  return {
      make_prox_function("l1:scale=1,n=4"),   make_prox_function("l1:scale=2,n=2"),
      make_prox_function("box:n=3"),          make_prox_function("absbox:scale=1,n=1"),
      make_prox_function("absbox:scale=2,n=1"), make_prox_function("neglog:n=1"),
      make_prox_function("neglog:n=3"),       make_prox_function("negsqrt:n=1"),
      make_prox_function("quad:n=3"),
  };
}

/// Test hook: wraps a member and perturbs its prox output, so the suite has
/// a negative control.
class CorruptedProx final : public ProxFunction {
 public:
  explicit CorruptedProx(ProxFunctionPtr inner)
      : ProxFunction(inner->name(), inner->dim()), inner_(std::move(inner)) {}

  [[nodiscard]] std::string descriptor() const override {
    return inner_->descriptor() + ",corrupted";
  }
  [[nodiscard]] std::optional<double> infimum() const override { return inner_->infimum(); }
  void validate_base_point(VecView x) const override { inner_->validate_base_point(x); }

 protected:
  double do_eval(VecView u) const override { return inner_->eval(u); }

  void do_prox(VecView x, double lambda, VecSpan out) const override {
    inner_->prox_into(x, lambda, out);
    out[0] += 1e-3 * (1.0 + std::abs(out[0]));
  }

  void do_domain_projection(VecView x, VecSpan out) const override {
    inner_->domain_projection_into(x, out);
  }

  double do_prox_value_slope(VecView x, double lambda) const override {
    return inner_->prox_value_slope(x, lambda);
  }

 private:
  ProxFunctionPtr inner_;
};

}  // namespace epiproj
