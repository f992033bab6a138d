#include "bdpg/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bdpg/bernstein.hpp"
#include "bdpg/dual_basis.hpp"
#include "bdpg/errors.hpp"
#include "bdpg/quadrature.hpp"

namespace bdpg {

namespace {

void check_modal_degree(int degree) {
  if (degree < 2) throw std::domain_error("operator matrices require degree >= 2");
}

// psi_i expanded in the Bernstein basis: G C, converted once.
Matrix modal_in_bernstein(int degree) {
  return (transform_G(degree) * dual_coefficient_matrix(degree)).to_double();
}

Matrix quadrature_pairing(int degree, Derivative order) {
  const int n = degree;
  const Matrix r = modal_in_bernstein(n);
  const QuadratureRule rule = gauss_legendre_rule(n + 4);
  Matrix out(n - 1, n - 1);
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double x = rule.nodes[k];
    const std::vector<double> basis =
        order == Derivative::none ? eval_bernstein(n, x) : eval_bernstein_derivative(n, x);
    const std::vector<double> psi = r * basis;
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n - 1; ++j) out(i, j) += rule.weights[k] * psi[i] * basis[j + 1];
  }
  return out;
}

}  // namespace

BernsteinDerivative bernstein_derivative_matrix(int degree) {
  check_modal_degree(degree);
  const int n = degree;
  BernsteinDerivative out{RationalMatrix(n - 1, n - 1), Rational(n), Rational(-n)};
  for (int r = 0; r < n - 1; ++r) {
    const int i = r + 1;  // 1-based trial index
    if (r > 0) out.D(r, r - 1) = n - i + 1;
    out.D(r, r) = 2 * i - n;
    if (r < n - 2) out.D(r, r + 1) = -(i + 1);
  }
  return out;
}

RationalMatrix transform_G(int degree) {
  check_modal_degree(degree);
  const ModalCoefficients m = modal_coefficients(degree);
  RationalMatrix g(degree - 1, degree + 1);
  for (int i = 0; i < degree - 1; ++i) {
    g(i, i) = 1;
    g(i, i + 1) = m.a[i];
    g(i, i + 2) = m.b[i];
  }
  return g;
}

RationalMatrix dual_derivative_matrix(int degree) {
  if (degree < 1) throw std::domain_error("dual derivative matrix requires degree >= 1");
  const int n = degree;
  RationalMatrix p(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    Rational v = Rational((n + 1) * binomial(n + 1, i + 1));
    if (i % 2 == 0) v = -v;
    if (i == 0) v += n;
    if (i == 1) v += 1;
    p(i, 0) = v;
  }
  for (int i = 0; i <= n; ++i) p(i, n) = -p(n - i, 0);
  for (int i = 0; i <= n; ++i) {
    if (i - 1 > 0) p(i, i - 1) = i;
    if (i > 0 && i < n) p(i, i) = n - 2 * i;
    if (i + 1 < n) p(i, i + 1) = i - n;
  }
  return p;
}

RationalMatrix modal_derivative_matrix(int degree) {
  check_modal_degree(degree);
  RationalMatrix q = transform_G(degree) * dual_derivative_matrix(degree);
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j)
      if ((j + 1 < i || j > i + 3) && q(i, j) != 0)
        throw ConsistencyError("Q(" + std::to_string(i) + "," + std::to_string(j) +
                               ") outside the (1,3) band");
  return q;
}

RationalMatrix mass_matrix(int degree) {
  const RationalMatrix g = transform_G(degree);
  const int q = degree - 1;
  RationalMatrix b(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) b(i, j) = g(i, j + 1);
  return b;
}

RationalMatrix stiffness_matrix(int degree) {
  const int n = degree;
  const int q = n - 1;
  const RationalMatrix qm = modal_derivative_matrix(n);
  const BernsteinDerivative der = bernstein_derivative_matrix(n);
  RationalMatrix a(q, q);
  // [q_1 .. q_{N-1}] D^T
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      Rational s = 0;
      for (int m = std::max(0, j - 1); m <= std::min(q - 1, j + 1); ++m)
        s += qm(i, m + 1) * der.D(j, m);
      a(i, j) = s;
    }
  // Boundary parts of d; for N = 2 both land in the single column.
  for (int i = 0; i < q; ++i) {
    a(i, 0) += der.first_phi0 * qm(i, 0);
    a(i, q - 1) += der.last_phiN * qm(i, n);
  }

  const Matrix oracle = quadrature_stiffness_matrix(n);
  const Matrix r = modal_in_bernstein(n);
  for (int i = 0; i < q; ++i) {
    double row_scale = 0.0;
    for (std::size_t k = 0; k < r.cols(); ++k) row_scale += std::abs(r(i, k));
    const double tol =
        std::max(1e-10, 1e3 * std::numeric_limits<double>::epsilon() * n * n * row_scale);
    for (int j = 0; j < q; ++j)
      if (std::abs(to_double(a(i, j)) - oracle(i, j)) > tol)
        throw ConsistencyError("stiffness entry (" + std::to_string(i) + "," +
                               std::to_string(j) + ") disagrees with quadrature");
  }
  return a;
}

Matrix quadrature_mass_matrix(int degree) {
  check_modal_degree(degree);
  return quadrature_pairing(degree, Derivative::none);
}

Matrix quadrature_stiffness_matrix(int degree) {
  check_modal_degree(degree);
  return quadrature_pairing(degree, Derivative::first);
}

PetrovGalerkinMatrices petrov_galerkin_matrices(int degree) {
  return {degree, mass_matrix(degree).to_double(), stiffness_matrix(degree).to_double()};
}

}  // namespace bdpg
