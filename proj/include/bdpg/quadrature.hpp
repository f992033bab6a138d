#pragma once

#include <functional>
#include <vector>

namespace bdpg {

/// Gauss-Legendre rule on [0,1]. Exact for polynomials of degree <= 2n-1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// 1 <= n <= 64, otherwise std::domain_error.
QuadratureRule gauss_legendre_rule(int n);

/// sum_i w_i f(x_i). Throws EvaluationError if f returns a non-finite value.
double integrate_1d(const std::function<double(double)>& f, const QuadratureRule& rule);

/// Tensor-product rule on [0,1]^2.
double integrate_2d(const std::function<double(double, double)>& f, const QuadratureRule& rule);

}  // namespace bdpg
