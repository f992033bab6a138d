#pragma once

#include <span>
#include <vector>

#include "bdpg/rational.hpp"

namespace bdpg {

/// Exact binomial coefficient C(n, k). Throws std::domain_error unless 0 <= k <= n.
BigInt binomial(long n, long k);

/// Values phi_0(x) .. phi_N(x) of the degree-N Bernstein basis on [0,1].
/// Throws std::domain_error for x outside [0,1] or N < 0.
std::vector<double> eval_bernstein(int degree, double x);

/// Exact values of the Bernstein basis at a rational abscissa in [0,1].
std::vector<Rational> eval_bernstein(int degree, const Rational& x);

/// phi'_i(x) for i = 0..N via the three-term recurrence
///   phi'_i = (N-i+1) phi_{i-1} - (N-2i) phi_i - (i+1) phi_{i+1}.
std::vector<double> eval_bernstein_derivative(int degree, double x);

enum class Derivative { none = 0, first = 1 };

/// sum_i coeffs[i] phi_i(x), or its first derivative. The degree is coeffs.size() - 1.
double eval_in_basis(std::span<const double> coeffs, double x, Derivative order = Derivative::none);

/// Same, with the degree stated explicitly; throws DimensionError when
/// coeffs.size() != degree + 1.
double eval_in_basis(int degree, std::span<const double> coeffs, double x,
                     Derivative order = Derivative::none);

}  // namespace bdpg
