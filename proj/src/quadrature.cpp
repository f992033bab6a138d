#include "bdpg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bdpg/errors.hpp"

namespace bdpg {

namespace {

// P_n(z) and P_n'(z) by the three-term recurrence.
std::pair<double, double> legendre(int n, double z) {
  double p0 = 1.0, p1 = z;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (z * p1 - p0) / (z * z - 1.0)};
}

void check_finite(double v, double x, double y) {
  if (!std::isfinite(v))
    throw EvaluationError("integrand not finite at (" + std::to_string(x) + ", " +
                          std::to_string(y) + ")");
}

}  // namespace

QuadratureRule gauss_legendre_rule(int n) {
  if (n < 1 || n > 64)
    throw std::domain_error("Gauss-Legendre point count " + std::to_string(n) +
                            " outside [1, 64]");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, d] = legendre(n, z);
      dp = d;
      const double dz = p / d;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    dp = legendre(n, z).second;
    const double w = 1.0 / ((1.0 - z * z) * dp * dp);  // 2/(...) halved for [0,1]
    // z > 0 here; map the pair +-z onto [0,1] symmetrically.
    rule.nodes[i] = 0.5 * (1.0 - z);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + z);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;
  return rule;
}

double integrate_1d(const std::function<double(double)>& f, const QuadratureRule& rule) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = f(rule.nodes[i]);
    check_finite(v, rule.nodes[i], 0.0);
    s += rule.weights[i] * v;
  }
  return s;
}

double integrate_2d(const std::function<double(double, double)>& f, const QuadratureRule& rule) {
  double s = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    double inner = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double v = f(rule.nodes[i], rule.nodes[j]);
      check_finite(v, rule.nodes[i], rule.nodes[j]);
      inner += rule.weights[i] * v;
    }
    s += rule.weights[j] * inner;
  }
  return s;
}

}  // namespace bdpg
