// Command-line harness: convergence tables, stability runs, exact matrix
// dumps and sparsity statistics for the Bernstein dual-Petrov-Galerkin solver.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "bdpg/experiments.hpp"

namespace {

struct Options {
  std::vector<double> alphas;
  double kappa = 1.0;
  std::vector<int> degrees;
  std::vector<double> taus;
  std::vector<int> steps;
  double t_final = 1.0;
  int example = 1;
  int quad = 8;
  int grid = 100;
  std::string out;
  std::vector<double> times;
  std::string pattern_out;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--alpha", o.alphas, "fractional order (repeatable)");
  cmd->add_option("--kappa", o.kappa, "diffusion coefficient")->capture_default_str();
  cmd->add_option("--n", o.degrees, "spatial degree N (repeatable)");
  auto* tau = cmd->add_option("--tau", o.taus, "time step (repeatable)");
  auto* steps = cmd->add_option("--steps", o.steps, "number of steps M = T/tau (repeatable)");
  tau->excludes(steps);
  cmd->add_option("--t-final", o.t_final, "final time T")->capture_default_str();
  cmd->add_option("--example", o.example, "example id")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  cmd->add_option("--quad", o.quad, "Gauss-Legendre points")->capture_default_str();
  cmd->add_option("--grid", o.grid, "error grid size")->capture_default_str();
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_option("--times", o.times, "report times, comma separated")->delimiter(',');
}

bdpg::ExperimentSpec to_spec(const Options& o, bdpg::ExperimentKind kind,
                             std::vector<double> alphas, std::vector<int> degrees,
                             std::vector<double> taus, std::vector<double> times) {
  bdpg::ExperimentSpec s;
  s.kind = kind;
  s.example = o.example;
  s.kappa = o.kappa;
  s.t_final = o.t_final;
  s.quad_points = o.quad;
  s.grid = o.grid;
  s.alphas = o.alphas.empty() ? std::move(alphas) : o.alphas;
  s.degrees = o.degrees.empty() ? std::move(degrees) : o.degrees;
  if (!o.steps.empty()) {
    s.taus.clear();
    for (int m : o.steps) s.taus.push_back(o.t_final / m);
  } else {
    s.taus = o.taus.empty() ? std::move(taus) : o.taus;
  }
  s.times = o.times.empty() ? std::move(times) : o.times;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernstein dual-Petrov-Galerkin solver for 2D time-fractional subdiffusion"};
  app.require_subcommand(1);

  Options o;
  auto* solve_cmd = app.add_subcommand("solve", "errors of single runs at the report times");
  auto* space_cmd = app.add_subcommand("space-conv", "errors and rates as N increases");
  auto* time_cmd = app.add_subcommand("time-conv", "errors and rates as tau decreases");
  auto* stab_cmd = app.add_subcommand("stability", "energy norm history without source");
  auto* mat_cmd = app.add_subcommand("matrices", "exact C, G, P, Q, B, A as p/q CSV");
  auto* sparse_cmd = app.add_subcommand("sparsity", "assembled-system statistics");
  for (auto* cmd : {solve_cmd, space_cmd, time_cmd, stab_cmd, mat_cmd, sparse_cmd})
    add_common(cmd, o);
  sparse_cmd->add_option("--pattern", o.pattern_out,
                         "write the (row,col) pattern of the last N to this path");

  CLI11_PARSE(app, argc, argv);

  std::unique_ptr<std::ofstream> file;
  if (!o.out.empty()) {
    file = std::make_unique<std::ofstream>(o.out, std::ios::binary);
    if (!*file) {
      std::cerr << "cannot open " << o.out << '\n';
      return 1;
    }
  }
  std::ostream& out = file ? *file : std::cout;

  using bdpg::ExperimentKind;
  try {
    if (solve_cmd->parsed()) {
      const auto spec = to_spec(o, ExperimentKind::solve, {0.5}, {8}, {0.01}, {0.5, 1.0});
      bdpg::write_error_csv(out, bdpg::run_example(spec));
    } else if (space_cmd->parsed()) {
      const auto spec = to_spec(o, ExperimentKind::space_conv, {0.25, 0.5, 0.75}, {2, 4, 6, 8},
                                {0.01}, {0.5, 1.0});
      bdpg::write_rate_csv(out, bdpg::convergence_in_space(spec));
    } else if (time_cmd->parsed()) {
      const auto spec = to_spec(o, ExperimentKind::time_conv, {0.25, 0.5, 0.75}, {8},
                                {0.1, 0.05, 0.025, 0.0125, 0.00625}, {0.1, 1.0});
      bdpg::write_rate_csv(out, bdpg::convergence_in_time(spec));
    } else if (stab_cmd->parsed()) {
      auto spec = to_spec(o, ExperimentKind::stability, {0.5}, {8}, {0.01}, {1.0});
      if (stab_cmd->count("--example") == 0)
        spec.example = 2;
      const auto report = bdpg::stability_run(spec);
      bdpg::write_stability_csv(out, report);
      if (!report.violations.empty()) {
        std::cerr << report.violations.size() << " step(s) violate ||u^k||_1 <= ||u^0||\n";
        return 2;
      }
    } else if (mat_cmd->parsed()) {
      for (int n : o.degrees.empty() ? std::vector<int>{6} : o.degrees) bdpg::write_matrices(out, n);
    } else if (sparse_cmd->parsed()) {
      const std::vector<int> ns = o.degrees.empty() ? std::vector<int>{8, 10, 12, 14} : o.degrees;
      bdpg::write_sparsity_csv(out, bdpg::sparsity_report(ns));
      if (!o.pattern_out.empty()) {
        std::ofstream pat(o.pattern_out, std::ios::binary);
        bdpg::write_pattern(pat, bdpg::sparsity_pattern(ns.back()));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
