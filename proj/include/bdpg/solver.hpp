#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bdpg/banded.hpp"
#include "bdpg/bernstein.hpp"
#include "bdpg/coefficient_field.hpp"
#include "bdpg/fractional_time.hpp"
#include "bdpg/operators.hpp"
#include "bdpg/quadrature.hpp"

namespace bdpg {

using SourceFunction = std::function<double(double x, double y, double t)>;
using InitialFunction = std::function<double(double x, double y)>;
using ExactFunction = std::function<double(double x, double y)>;

struct Gradient {
  double dx = 0.0;
  double dy = 0.0;
};
using ExactGradient = std::function<Gradient(double x, double y)>;

/// Problem and discretisation parameters for
///   D_t^alpha u = kappa Laplace(u) + S   on (0,1)^2 x (0,T],
///   u = g at t = 0,   u = 0 on the boundary.
struct SolverConfig {
  double alpha = 0.5;
  double kappa = 1.0;
  double tau = 0.01;
  double t_final = 1.0;
  int degree = 8;
  int quad_points = 8;  ///< base rule; RHS assembly uses max(quad_points, N+4)
  SourceFunction source;   ///< empty means S = 0
  InitialFunction initial; ///< empty means g = 0

  /// T / tau; throws std::domain_error unless it is a positive integer
  /// (relative rounding 1e-12) no larger than 10^6.
  int steps() const;
  /// alpha0 = kappa tau^alpha Gamma(2 - alpha).
  double alpha0() const;
  void validate() const;
};

/// Degree-dependent data shared by every step: B, A, the factored mass
/// matrix, and modal test functions sampled on the RHS quadrature rule.
class Discretization {
public:
  Discretization(int degree, int quad_points);

  int degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return static_cast<std::size_t>(degree_ - 1); }
  const Matrix& mass() const noexcept { return matrices_.mass; }
  const Matrix& stiffness() const noexcept { return matrices_.stiffness; }
  const QuadratureRule& rule() const noexcept { return rule_; }

  /// L_{l,m} = sum_{a,b} w_a w_b f(x_a, y_b) psi_l(x_a) psi_m(y_b).
  Matrix load(const std::function<double(double, double)>& f) const;

  /// Solve B U B^T = F for U.
  Matrix solve_mass_sandwich(const Matrix& f) const;

private:
  int degree_;
  PetrovGalerkinMatrices matrices_;
  BandLU mass_lu_;
  QuadratureRule rule_;
  Matrix weighted_modal_;  // (N-1) x n, psi_l(x_a) w_a
};

/// B-weighted projection: B U0 B^T = (g, psi_l psi_m).
CoefficientField project_initial(const InitialFunction& g, int degree, int quad_points);
CoefficientField project_initial(const InitialFunction& g, const Discretization& disc);

/// vec(B H^{k+1} B^T) + (1/mu) vec(S-load at t_{k+1}). history holds U^0..U^k.
std::vector<double> assemble_rhs(const Discretization& disc,
                                 std::span<const CoefficientField> history,
                                 const L1Weights& weights, const SourceFunction& source, int k);

/// U^{k+1} from the factored system.
CoefficientField step(const BandLU& lu, std::span<const double> rhs);

struct SolveResult {
  SolverConfig config;
  std::vector<CoefficientField> history;  ///< U^0 .. U^M
  double factor_seconds = 0.0;
  double total_seconds = 0.0;

  const CoefficientField& at_step(int k) const { return history.at(static_cast<std::size_t>(k)); }
  /// Field at time t, which must be a multiple of tau.
  const CoefficientField& at_time(double t) const;
};

SolveResult solve(const SolverConfig& config);

enum class FieldDerivative { none, dx, dy };

/// Phi(x)^T U Phi(y), optionally differentiated in x or y.
/// Throws std::domain_error outside [0,1]^2.
double evaluate_field(const CoefficientField& u, double x, double y,
                      FieldDerivative derivative = FieldDerivative::none);

struct ErrorNorms {
  double linf = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;
};

/// Discrete L-infinity (grid points 0..G in each direction) and L2 (points
/// 0..G-1, normalised by G^2) on x_i = i/G; H1 by tensor Gauss quadrature
/// with N+8 points.
ErrorNorms error_norms(const CoefficientField& u, const ExactFunction& exact,
                       const ExactGradient& exact_gradient, int grid = 100);

/// ((u,u) + alpha0 (grad u, grad u))^{1/2}.
double energy_norm(const CoefficientField& u, double alpha0);

/// Continuous L2 norm of the field.
double l2_norm(const CoefficientField& u);

}  // namespace bdpg
