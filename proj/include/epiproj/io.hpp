// epiproj - epigraphical and level-set projections via proximal maps
// Copyright 2026 The epiproj authors
// Licensed under Apache 2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "epiproj/bench.hpp"
#include "epiproj/projections.hpp"
#include "epiproj/properties.hpp"

namespace epiproj {

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace detail

[[nodiscard]] inline nlohmann::json to_json(const SolverResult& r, bool include_trace) {
  nlohmann::json j{{"status", to_string(r.status)},
                   {"iterations", r.iterations},
                   {"lambda_star", r.lambda_star},
                   {"residual", r.residual},
                   {"linesearch_saturated", r.linesearch_saturated}};
  if (!r.cycle_orbit.empty()) j["cycle_orbit"] = r.cycle_orbit;
  if (include_trace) {
    auto arr = nlohmann::json::array();
    for (const auto& t : r.trace) {
      arr.push_back({{"lambda", t.lambda},
                     {"theta_prime", t.theta_prime},
                     {"bsub", t.bsub},
                     {"step", t.step}});
    }
    j["trace"] = arr;
  }
  return j;
}

[[nodiscard]] inline nlohmann::json to_json(const ProjectionResult& r,
                                            const std::string& function_descriptor,
                                            const std::string& mode, double alpha,
                                            const std::string& solver_name,
                                            bool include_trace = false) {
  nlohmann::json j{{"schema_version", kSchemaVersion},
                   {"function", function_descriptor},
                   {"mode", mode},
                   {"alpha", alpha},
                   {"branch", r.branch == ProjectionBranch::DomainCase ? "domain" : "root"},
                   {"lambda_star", r.lambda_star},
                   {"residual", r.residual},
                   {"point", r.point},
                   {"converged", r.succeeded()}};
  j["ordinate"] = r.ordinate ? nlohmann::json(*r.ordinate) : nlohmann::json(nullptr);
  if (r.solver) {
    auto s = to_json(*r.solver, include_trace);
    s["name"] = solver_name;
    j["solver"] = std::move(s);
  } else {
    j["solver"] = nullptr;
  }
  return j;
}

/// CSV with one row per (experiment, n, sigma, algorithm) cell. Apart from
/// mean_seconds, all columns are deterministic for a fixed (spec, seed).
[[nodiscard]] inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out =
      "schema_version,experiment,n,sigma,algorithm,trials,mean_seconds,mean_iters,"
      "max_residual,agreement_inf\n";
  for (const auto& r : rows) {
    out += std::to_string(kSchemaVersion);
    out += ',';
    out += r.experiment;
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    if (r.sigma) out += detail::fmt("%.17g", *r.sigma);
    out += ',';
    out += r.algorithm;
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += detail::fmt("%.6e", r.mean_seconds);
    out += ',';
    out += detail::fmt("%.17g", r.mean_iters);
    out += ',';
    out += detail::fmt("%.17g", r.max_residual);
    out += ',';
    if (r.agreement) out += detail::fmt("%.17g", *r.agreement);
    out += '\n';
  }
  return out;
}

[[nodiscard]] inline std::string property_csv(const std::vector<PropertyReport>& reports) {
  std::string out = "schema_version,property,instance,pass,worst_slack,samples\n";
  for (const auto& r : reports) {
    out += std::to_string(kSchemaVersion);
    out += ',';
    out += r.property;
    out += ',';
    out += '"' + r.instance + '"';
    out += ',';
    out += r.pass ? "true" : "false";
    out += ',';
    out += detail::fmt("%.17g", r.worst_slack);
    out += ',';
    out += std::to_string(r.samples);
    out += '\n';
  }
  return out;
}

[[nodiscard]] inline std::string property_table(const std::vector<PropertyReport>& reports) {
  std::string out;
  std::size_t wp = 8, wi = 8;
  for (const auto& r : reports) {
    wp = std::max(wp, r.property.size());
    wi = std::max(wi, r.instance.size());
  }
  char line[256];
  for (const auto& r : reports) {
    std::snprintf(line, sizeof(line), "%-*s  %-*s  %s  worst_slack=%- .3e  samples=%ld\n",
                  int(wp), r.property.c_str(), int(wi), r.instance.c_str(),
                  r.pass ? "pass" : "FAIL", r.worst_slack, r.samples);
    out += line;
  }
  return out;
}

// ---- vectors: JSON arrays and length-prefixed little-endian f64 streams ----

[[nodiscard]] inline std::vector<double> parse_vector_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("vector: expected a JSON array");
  std::vector<double> x;
  x.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw std::invalid_argument("vector: expected numeric entries");
    x.push_back(v.get<double>());
  }
  return x;
}

inline void write_vector_binary(std::ostream& os, VecView x) {
  auto put_u64 = [&](std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xFF);
    os.write(b, 8);
  };
  put_u64(x.size());
  for (double d : x) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(d));
    std::memcpy(&bits, &d, 8);
    put_u64(bits);
  }
}

[[nodiscard]] inline std::vector<double> read_vector_binary(std::istream& is) {
  auto get_u64 = [&]() {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw std::runtime_error("binary vector: truncated stream");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  };
  const std::uint64_t count = get_u64();
  if (count > (1ull << 32)) throw std::runtime_error("binary vector: implausible length");
  std::vector<double> x(count);
  for (auto& d : x) {
    const std::uint64_t bits = get_u64();
    std::memcpy(&d, &bits, 8);
  }
  return x;
}

}  // namespace epiproj
