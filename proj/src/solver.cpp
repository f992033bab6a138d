#include "bdpg/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bdpg/dual_basis.hpp"
#include "bdpg/errors.hpp"

namespace bdpg {

namespace {

constexpr int kMaxSteps = 1'000'000;

BandMatrix tridiagonal_band(const Matrix& m) { return BandMatrix::from_dense(m, 1, 1); }

// B X = F column by column.
Matrix solve_columns(const BandLU& lu, const Matrix& f) {
  Matrix x(f.rows(), f.cols());
  std::vector<double> col(f.rows());
  for (std::size_t j = 0; j < f.cols(); ++j) {
    for (std::size_t i = 0; i < f.rows(); ++i) col[i] = f(i, j);
    const std::vector<double> s = lu.solve(col);
    for (std::size_t i = 0; i < f.rows(); ++i) x(i, j) = s[i];
  }
  return x;
}

// Interior Bernstein values (or derivatives) phi_1..phi_{N-1} at x.
std::vector<double> interior(int degree, double x, bool derivative) {
  std::vector<double> v =
      derivative ? eval_bernstein_derivative(degree, x) : eval_bernstein(degree, x);
  return std::vector<double>(v.begin() + 1, v.end() - 1);
}

// Rows: sample points; columns: interior trial functions.
Matrix sample_trial(int degree, std::span<const double> points, bool derivative) {
  Matrix s(points.size(), static_cast<std::size_t>(degree - 1));
  for (std::size_t a = 0; a < points.size(); ++a) {
    const std::vector<double> v = interior(degree, points[a], derivative);
    for (std::size_t i = 0; i < v.size(); ++i) s(a, i) = v[i];
  }
  return s;
}

// Values of the field at all (x_a, y_b): Sx U Sy^T.
Matrix field_on(const Matrix& sx, const CoefficientField& u, const Matrix& sy) {
  return sx * u.coeffs() * sy.transpose();
}

}  // namespace

int SolverConfig::steps() const {
  if (!(tau > 0.0) || !(t_final > 0.0))
    throw std::domain_error("tau and T must be positive");
  const double ratio = t_final / tau;
  if (!(ratio <= kMaxSteps + 0.5))
    throw std::domain_error("T/tau exceeds the step limit of 10^6");
  const double m = std::round(ratio);
  if (m < 1.0 || std::abs(ratio - m) > 1e-12 * m)
    throw std::domain_error("T/tau = " + std::to_string(ratio) + " is not a positive integer");
  return static_cast<int>(m);
}

double SolverConfig::alpha0() const {
  return kappa * std::pow(tau, alpha) * std::tgamma(2.0 - alpha);
}

void SolverConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
  if (!(kappa > 0.0)) throw std::domain_error("kappa must be positive");
  if (degree < 2) throw std::domain_error("spatial degree must be at least 2");
  if (quad_points < 1) throw std::domain_error("quadrature point count must be positive");
  steps();
}

Discretization::Discretization(int degree, int quad_points)
    : degree_(degree),
      matrices_(petrov_galerkin_matrices(degree)),
      mass_lu_(tridiagonal_band(matrices_.mass)),
      rule_(gauss_legendre_rule(std::max(quad_points, degree + 4))) {
  const std::size_t q = order();
  weighted_modal_ = Matrix(q, rule_.size());
  for (std::size_t a = 0; a < rule_.size(); ++a) {
    const std::vector<double> psi = eval_modal_basis(degree, rule_.nodes[a]);
    for (std::size_t l = 0; l < q; ++l) weighted_modal_(l, a) = psi[l] * rule_.weights[a];
  }
}

Matrix Discretization::load(const std::function<double(double, double)>& f) const {
  const std::size_t n = rule_.size();
  Matrix samples(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const double v = f(rule_.nodes[a], rule_.nodes[b]);
      if (!std::isfinite(v))
        throw EvaluationError("non-finite value at (" + std::to_string(rule_.nodes[a]) + ", " +
                              std::to_string(rule_.nodes[b]) + ")");
      samples(a, b) = v;
    }
  return weighted_modal_ * samples * weighted_modal_.transpose();
}

Matrix Discretization::solve_mass_sandwich(const Matrix& f) const {
  const Matrix x = solve_columns(mass_lu_, f);
  return solve_columns(mass_lu_, x.transpose()).transpose();
}

CoefficientField project_initial(const InitialFunction& g, int degree, int quad_points) {
  return project_initial(g, Discretization(degree, quad_points));
}

CoefficientField project_initial(const InitialFunction& g, const Discretization& disc) {
  if (!g) return CoefficientField(disc.order());
  return CoefficientField(disc.solve_mass_sandwich(disc.load(g)));
}

std::vector<double> assemble_rhs(const Discretization& disc,
                                 std::span<const CoefficientField> history,
                                 const L1Weights& weights, const SourceFunction& source, int k) {
  const CoefficientField h = history_combination(history, weights, k);
  if (h.order() != disc.order()) throw DimensionError("history does not match discretization");
  const Matrix& b = disc.mass();
  Matrix f = b * h.coeffs() * b.transpose();
  if (source) {
    const double t = (k + 1) * weights.tau;
    Matrix s;
    try {
      s = disc.load([&](double x, double y) { return source(x, y, t); });
    } catch (const EvaluationError& e) {
      throw EvaluationError(std::string("source ") + e.what() + " at t = " + std::to_string(t));
    }
    s *= 1.0 / weights.mu;
    f += s;
  }
  return vec(f);
}

CoefficientField step(const BandLU& lu, std::span<const double> rhs) {
  const std::vector<double> u = lu.solve(rhs);
  const auto q = static_cast<std::size_t>(std::llround(std::sqrt(double(u.size()))));
  return CoefficientField(unvec(u, q, q));
}

const CoefficientField& SolveResult::at_time(double t) const {
  const double ratio = t / config.tau;
  const double k = std::round(ratio);
  if (k < 0 || std::abs(ratio - k) > 1e-9 * std::max(1.0, k) ||
      k >= static_cast<double>(history.size()))
    throw std::domain_error("time " + std::to_string(t) + " is not a computed step");
  return history[static_cast<std::size_t>(k)];
}

SolveResult solve(const SolverConfig& config) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  config.validate();
  const int steps = config.steps();

  const Discretization disc(config.degree, config.quad_points);
  const L1Weights weights = l1_weights(config.alpha, config.tau, steps);
  const BandLU lu(assemble_system(disc.mass(), disc.stiffness(), config.alpha0()));
  const auto factored = clock::now();

  SolveResult result;
  result.config = config;
  result.history.reserve(static_cast<std::size_t>(steps) + 1);
  result.history.push_back(project_initial(config.initial, disc));
  for (int k = 0; k < steps; ++k) {
    const std::vector<double> rhs =
        assemble_rhs(disc, result.history, weights, config.source, k);
    result.history.push_back(step(lu, rhs));
  }
  const auto done = clock::now();
  result.factor_seconds = std::chrono::duration<double>(factored - start).count();
  result.total_seconds = std::chrono::duration<double>(done - start).count();
  return result;
}

double evaluate_field(const CoefficientField& u, double x, double y, FieldDerivative derivative) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw std::domain_error("point (" + std::to_string(x) + ", " + std::to_string(y) +
                            ") outside the unit square");
  const int n = u.degree();
  const std::vector<double> px = interior(n, x, derivative == FieldDerivative::dx);
  const std::vector<double> py = interior(n, y, derivative == FieldDerivative::dy);
  double s = 0.0;
  for (std::size_t i = 0; i < px.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < py.size(); ++j) row += u(i, j) * py[j];
    s += px[i] * row;
  }
  return s;
}

ErrorNorms error_norms(const CoefficientField& u, const ExactFunction& exact,
                       const ExactGradient& exact_gradient, int grid) {
  if (grid < 1) throw std::domain_error("grid size must be positive");
  const int n = u.degree();
  ErrorNorms e;

  std::vector<double> points(static_cast<std::size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) points[i] = static_cast<double>(i) / grid;
  const Matrix s = sample_trial(n, points, false);
  const Matrix values = field_on(s, u, s);
  double sum_sq = 0.0;
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j) {
      const double d = exact(points[i], points[j]) - values(i, j);
      e.linf = std::max(e.linf, std::abs(d));
      if (i < grid && j < grid) sum_sq += d * d;
    }
  e.l2 = std::sqrt(sum_sq) / grid;

  const QuadratureRule rule = gauss_legendre_rule(n + 8);
  const Matrix v = sample_trial(n, rule.nodes, false);
  const Matrix dv = sample_trial(n, rule.nodes, true);
  const Matrix f = field_on(v, u, v);
  const Matrix fx = field_on(dv, u, v);
  const Matrix fy = field_on(v, u, dv);
  double h1 = 0.0;
  for (std::size_t a = 0; a < rule.size(); ++a)
    for (std::size_t b = 0; b < rule.size(); ++b) {
      const double x = rule.nodes[a], y = rule.nodes[b];
      const Gradient g = exact_gradient(x, y);
      const double d0 = exact(x, y) - f(a, b);
      const double dx = g.dx - fx(a, b);
      const double dy = g.dy - fy(a, b);
      h1 += rule.weights[a] * rule.weights[b] * (d0 * d0 + dx * dx + dy * dy);
    }
  e.h1 = std::sqrt(h1);
  return e;
}

double energy_norm(const CoefficientField& u, double alpha0) {
  if (!(alpha0 >= 0.0)) throw std::domain_error("alpha0 must be non-negative");
  const int n = u.degree();
  const QuadratureRule rule = gauss_legendre_rule(n + 2);
  const Matrix v = sample_trial(n, rule.nodes, false);
  const Matrix dv = sample_trial(n, rule.nodes, true);
  const Matrix f = field_on(v, u, v);
  const Matrix fx = field_on(dv, u, v);
  const Matrix fy = field_on(v, u, dv);
  double s = 0.0;
  for (std::size_t a = 0; a < rule.size(); ++a)
    for (std::size_t b = 0; b < rule.size(); ++b)
      s += rule.weights[a] * rule.weights[b] *
           (f(a, b) * f(a, b) + alpha0 * (fx(a, b) * fx(a, b) + fy(a, b) * fy(a, b)));
  return std::sqrt(s);
}

double l2_norm(const CoefficientField& u) { return energy_norm(u, 0.0); }

}  // namespace bdpg
