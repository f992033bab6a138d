#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bdpg/solver.hpp"

namespace bdpg {

/// Example 1: u = sin(pi x) sin(pi y) t^2, g = 0, manufactured source
///   S = (2 t^{2-alpha} / Gamma(3-alpha) + 2 kappa pi^2 t^2) sin(pi x) sin(pi y).
/// Example 2: g = x(x-1) sin(2 pi y), S = 0, no closed form; a degree-10
/// run with the same tau serves as the reference.
namespace examples {

constexpr int kReferenceDegree = 10;

double exact_solution(double x, double y, double t);
Gradient exact_gradient(double x, double y, double t);
SourceFunction manufactured_source(double alpha, double kappa);
double initial_condition_2(double x, double y);

/// Config for example 1 or 2; std::invalid_argument for other ids.
SolverConfig make_config(int example, double alpha, double kappa, int degree, double tau,
                         double t_final, int quad_points);

}  // namespace examples

enum class ExperimentKind { solve, space_conv, time_conv, stability, matrices, sparsity };

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::solve;
  int example = 1;
  std::vector<double> alphas{0.5};
  double kappa = 1.0;
  std::vector<int> degrees{8};
  std::vector<double> taus{0.01};
  double t_final = 1.0;
  int quad_points = 8;
  int grid = 100;
  std::vector<double> times{1.0};
};

struct ErrorRow {
  int example = 1;
  double alpha = 0.0;
  double kappa = 1.0;
  int degree = 0;
  double tau = 0.0;
  double t = 0.0;
  ErrorNorms errors;
};

struct RateRow {
  ErrorRow row;
  std::optional<ErrorNorms> rates;  ///< empty on the first refinement level
};

struct StabilityRow {
  int k = 0;
  double t = 0.0;
  double energy_norm = 0.0;
  double l2_norm = 0.0;
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
  double initial_l2 = 0.0;
  /// Steps k >= 1 with energy norm above initial_l2 (1 + 1e-8).
  std::vector<int> violations;
};

struct SparsityRow {
  int degree = 0;
  std::size_t order = 0;
  std::size_t bandwidth = 0;
  std::size_t nonzeros = 0;
  double density = 0.0;
};

/// Error rows for every (alpha, N, tau, t), nested in that order, each list
/// kept in the order given.
std::vector<ErrorRow> run_example(const ExperimentSpec& spec);

/// Rates across the tau list for each (alpha, N, t):
///   rate = log(E_i / E_{i-1}) / log(tau_i / tau_{i-1}).
/// Throws std::invalid_argument with fewer than two tau values.
std::vector<RateRow> convergence_in_time(const ExperimentSpec& spec);

/// Rates across the N list for each (alpha, tau, t):
///   rate = log(E_i / E_{i-1}) / log(N_{i-1} / N_i).
std::vector<RateRow> convergence_in_space(const ExperimentSpec& spec);

/// Energy and L2 norms of u^k for a single (alpha, N, tau).
StabilityReport stability_run(const ExperimentSpec& spec);

/// Statistics of the assembled system for each N. The nonzero pattern is
/// the union of the patterns of B(x)B, B(x)A and A(x)B.
std::vector<SparsityRow> sparsity_report(const std::vector<int>& degrees);

/// (row, col) pairs of the assembled system's nonzero pattern, row-major.
std::vector<std::pair<std::size_t, std::size_t>> sparsity_pattern(int degree);

/// Rate formula shared by both refinement directions.
double observed_rate(double error, double previous_error, double ratio);

// CSV output: header always present, LF line ends, floats as %.6e.
std::string format_float(double v);
void write_error_csv(std::ostream& out, const std::vector<ErrorRow>& rows);
void write_rate_csv(std::ostream& out, const std::vector<RateRow>& rows);
void write_stability_csv(std::ostream& out, const StabilityReport& report);
void write_sparsity_csv(std::ostream& out, const std::vector<SparsityRow>& rows);
void write_pattern(std::ostream& out, const std::vector<std::pair<std::size_t, std::size_t>>& pattern);

/// Exact G, P, Q, B, A and C for one degree, each preceded by "# <name> N=<n>".
void write_matrices(std::ostream& out, int degree);

}  // namespace bdpg
