#include "bdpg/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bdpg/errors.hpp"

namespace bdpg {

namespace {

void check_degree(int degree) {
  if (degree < 0) throw std::domain_error("Bernstein degree must be non-negative");
}

void check_abscissa(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("abscissa " + std::to_string(x) + " outside [0,1]");
}

}  // namespace

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n)
    throw std::domain_error("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                            ") undefined");
  k = std::min(k, n - k);
  BigInt c = 1;
  for (long i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;  // exact: c is C(n-k+i, i) after this line
  }
  return c;
}

std::vector<double> eval_bernstein(int degree, double x) {
  check_degree(degree);
  check_abscissa(x);
  const int n = degree;
  std::vector<double> phi(n + 1, 0.0);
  if (x == 0.0) {
    phi[0] = 1.0;
    return phi;
  }
  if (x == 1.0) {
    phi[n] = 1.0;
    return phi;
  }
  // Walk outward from the end whose leading power does not underflow.
  if (x <= 0.5) {
    const double ratio = x / (1.0 - x);
    phi[0] = std::pow(1.0 - x, n);
    for (int i = 0; i < n; ++i) phi[i + 1] = phi[i] * ratio * (n - i) / (i + 1);
  } else {
    const double ratio = (1.0 - x) / x;
    phi[n] = std::pow(x, n);
    for (int i = n; i > 0; --i) phi[i - 1] = phi[i] * ratio * i / (n - i + 1);
  }
  return phi;
}

std::vector<Rational> eval_bernstein(int degree, const Rational& x) {
  check_degree(degree);
  if (x < 0 || x > 1) throw std::domain_error("rational abscissa outside [0,1]");
  std::vector<Rational> phi(degree + 1);
  const Rational one_minus = 1 - x;
  for (int i = 0; i <= degree; ++i) {
    Rational v = Rational(binomial(degree, i));
    for (int p = 0; p < i; ++p) v *= x;
    for (int p = 0; p < degree - i; ++p) v *= one_minus;
    phi[i] = v;
  }
  return phi;
}

std::vector<double> eval_bernstein_derivative(int degree, double x) {
  const std::vector<double> phi = eval_bernstein(degree, x);
  const int n = degree;
  std::vector<double> d(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    double v = -(n - 2.0 * i) * phi[i];
    if (i > 0) v += (n - i + 1.0) * phi[i - 1];
    if (i < n) v -= (i + 1.0) * phi[i + 1];
    d[i] = v;
  }
  return d;
}

double eval_in_basis(std::span<const double> coeffs, double x, Derivative order) {
  if (coeffs.empty()) throw DimensionError("eval_in_basis: empty coefficient vector");
  return eval_in_basis(static_cast<int>(coeffs.size()) - 1, coeffs, x, order);
}

double eval_in_basis(int degree, std::span<const double> coeffs, double x, Derivative order) {
  if (degree < 0 || coeffs.size() != static_cast<std::size_t>(degree) + 1)
    throw DimensionError("eval_in_basis: expected " + std::to_string(degree + 1) +
                         " coefficients, got " + std::to_string(coeffs.size()));
  const std::vector<double> values = order == Derivative::none
                                         ? eval_bernstein(degree, x)
                                         : eval_bernstein_derivative(degree, x);
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += coeffs[i] * values[i];
  return s;
}

}  // namespace bdpg
