// epiproj - epigraphical and level-set projections via proximal maps
// Copyright 2026 The epiproj authors
// Licensed under Apache 2.0
//
// Subcommands:
//   project  one projection onto an epigraph or level set, result as JSON
//   bench    seeded experiment presets, results as CSV
//   verify   property suite over the catalog, nonzero exit on any failure

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "epiproj/bench.hpp"
#include "epiproj/catalog.hpp"
#include "epiproj/io.hpp"
#include "epiproj/projections.hpp"
#include "epiproj/properties.hpp"

namespace {

constexpr int kExitSolverFailure = 1;
constexpr int kExitUsage = 2;

std::vector<double> load_vector(const std::string& inline_json, const std::string& file,
                                const std::string& format) {
  if (!inline_json.empty()) return epiproj::parse_vector_json(inline_json);
  if (file.empty()) throw std::invalid_argument("no input vector: pass --x or --x-file");
  if (file == "-") {
    if (format == "f64") return epiproj::read_vector_binary(std::cin);
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return epiproj::parse_vector_json(ss.str());
  }
  std::ifstream in(file, format == "f64" ? std::ios::binary : std::ios::in);
  if (!in) throw std::runtime_error("cannot open " + file);
  if (format == "f64") return epiproj::read_vector_binary(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return epiproj::parse_vector_json(ss.str());
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

epiproj::SolverChoice parse_solver(const std::string& s) {
  using epiproj::SolverChoice;
  for (SolverChoice c : {SolverChoice::NewtonLineSearch, SolverChoice::NewtonFullStep,
                         SolverChoice::BisectionDeriv, SolverChoice::BisectionWidth}) {
    if (s == to_string(c)) return c;
  }
  throw std::invalid_argument("unknown solver '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projections onto epigraphs and level sets of prox-friendly convex functions"};
  app.require_subcommand(1);

  // ---- project ----
  auto* project = app.add_subcommand("project", "project one point");
  std::string p_f, p_mode = "epi", p_x, p_xfile, p_format = "json", p_out, p_solver = "newton_ls";
  std::string p_point_out;
  double p_alpha = 0.0;
  bool p_trace = false;
  epiproj::SolverConfig p_cfg;
  project->add_option("--f", p_f, "catalog member descriptor, e.g. l1:scale=1")->required();
  project->add_option("--mode", p_mode, "epi|level")->check(CLI::IsMember({"epi", "level"}));
  project->add_option("--alpha", p_alpha, "level value / epigraph ordinate")->required();
  project->add_option("--x", p_x, "input vector as inline JSON array");
  project->add_option("--x-file", p_xfile, "input vector file ('-' for stdin)");
  project->add_option("--format", p_format, "input vector format")
      ->check(CLI::IsMember({"json", "f64"}));
  project->add_option("--solver", p_solver,
                      "newton_ls|newton_full|bisection_deriv|bisection_width");
  project->add_option("--lambda0", p_cfg.lambda0, "initial proximal parameter");
  project->add_option("--delta", p_cfg.delta, "derivative stopping tolerance");
  project->add_option("--width", p_cfg.bisection_width, "bisection width tolerance");
  project->add_option("--max-iters", p_cfg.max_iters, "iteration cap");
  project->add_option("--out", p_out, "write the result JSON to a file");
  project->add_option("--point-out", p_point_out,
                      "also write the projected point as a binary f64 stream");
  project->add_flag("--trace", p_trace, "record the solver iterates in the output");

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "seeded experiment presets");
  std::string b_experiment = "l1ball", b_out;
  std::vector<std::size_t> b_dims;
  std::vector<double> b_sigmas;
  std::vector<std::string> b_algos;
  long b_trials = -1;
  std::uint64_t b_seed = 42;
  int b_threads = 1;
  bench->add_option("--experiment", b_experiment, "l1ball|sumlog")
      ->check(CLI::IsMember({"l1ball", "sumlog"}));
  bench->add_option("--dims", b_dims, "dimensions to run");
  bench->add_option("--sigmas", b_sigmas, "Gaussian sigmas (l1ball)");
  bench->add_option("--trials", b_trials, "trials per cell");
  bench->add_option("--seed", b_seed, "instance stream seed");
  bench->add_option("--algorithms", b_algos,
                    "subset of newton_full newton_ls bisection_deriv bisection_width "
                    "sort_baseline");
  bench->add_option("--threads", b_threads, "worker threads (timing stays sequential)");
  bench->add_option("--out", b_out, "write the CSV to a file");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run the property suite");
  std::uint64_t v_seed = 42;
  long v_trials = 100;
  int v_threads = 1;
  std::string v_out;
  bool v_corrupt = false;
  verify->add_option("--seed", v_seed, "sampling seed");
  verify->add_option("--trials", v_trials, "trials per (property, member)");
  verify->add_option("--threads", v_threads, "worker threads");
  verify->add_option("--out", v_out, "write the report CSV to a file");
  auto* corrupt_flag =
      verify->add_flag("--corrupt-prox", v_corrupt, "negative control: perturb every prox");
  corrupt_flag->group("");  // test hook, hidden from --help

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*project) {
      const auto x = load_vector(p_x, p_xfile, p_format);
      const auto f = epiproj::make_prox_function(p_f, x.size());
      const auto choice = parse_solver(p_solver);
      p_cfg.record_trace = p_trace;
      const epiproj::ProjectionResult r =
          p_mode == "epi" ? epiproj::project_epigraph(f, x, p_alpha, p_cfg, choice)
                          : epiproj::project_level_set(f, x, p_alpha, p_cfg, choice);
      const auto j = epiproj::to_json(r, f->descriptor(), p_mode, p_alpha, p_solver, p_trace);
      emit(j.dump(2), p_out);
      if (!p_point_out.empty()) {
        std::ofstream pf(p_point_out, std::ios::binary);
        if (!pf) throw std::runtime_error("cannot write " + p_point_out);
        epiproj::write_vector_binary(pf, r.point);
      }
      return r.succeeded() ? 0 : kExitSolverFailure;
    }

    if (*bench) {
      epiproj::ExperimentSpec spec = epiproj::experiment_preset(
          b_experiment == "l1ball" ? epiproj::Experiment::L1Ball
                                   : epiproj::Experiment::SumLogEpi,
          b_seed);
      if (!b_dims.empty()) spec.dimensions = b_dims;
      if (!b_sigmas.empty()) spec.sigmas = b_sigmas;
      if (b_trials >= 0) spec.trials = b_trials;
      spec.threads = b_threads;
      if (!b_algos.empty()) {
        spec.algorithms.clear();
        for (const auto& a : b_algos) {
          spec.algorithms.push_back(epiproj::bench_algorithm_from_string(a));
        }
      }
      emit(epiproj::bench_csv(epiproj::run_bench(spec)), b_out);
      return 0;
    }

    if (*verify) {
      auto members = epiproj::default_property_members();
      if (v_corrupt) {
        for (auto& m : members) m = std::make_shared<epiproj::CorruptedProx>(m);
      }
      const auto reports = epiproj::run_property_suite(members, v_seed, v_trials, v_threads);
      if (v_out.empty()) {
        std::cout << epiproj::property_table(reports);
      } else {
        emit(epiproj::property_csv(reports), v_out);
      }
      bool all_pass = true;
      for (const auto& r : reports) all_pass = all_pass && r.pass;
      std::cout << (all_pass ? "all properties passed" : "PROPERTY FAILURES") << std::endl;
      return all_pass ? 0 : kExitSolverFailure;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitSolverFailure;
  }
  return 0;
}
