#pragma once

#include <vector>

#include "bdpg/bernstein.hpp"
#include "bdpg/rational.hpp"

namespace bdpg {

/// Coefficients c_{i,j} expressing the dual Bernstein polynomials in the
/// Bernstein basis: dual_i(x) = sum_j c_{i,j} phi_j(x). Exact, (N+1)x(N+1).
/// The matrix is bisymmetric with every row and column summing to N+1.
RationalMatrix dual_coefficient_matrix(int degree);

/// Exact Gram matrix of the Bernstein basis,
///   m_{i,j} = int_0^1 phi_i phi_j = C(N,i) C(N,j) / ((2N+1) C(2N,i+j)).
RationalMatrix bernstein_gram_matrix(int degree);

/// dual_0(x) .. dual_N(x). Uses a per-degree floating-point copy of C.
std::vector<double> eval_dual_basis(int degree, double x);

struct DualBoundaryValues {
  std::vector<double> at0;  ///< dual_i(0) = (-1)^i (N+1) C(N+1, i+1)
  std::vector<double> at1;  ///< dual_i(1) = (-1)^(N-i) (N+1) C(N+1, i)
};

DualBoundaryValues dual_boundary_values(int degree);

/// Weights of the modal test functions
///   psi_i = dual_i + a_i dual_{i+1} + b_i dual_{i+2},   0 <= i <= N-2,
/// chosen so that every psi_i vanishes at both ends of [0,1].
struct ModalCoefficients {
  int degree = 0;
  std::vector<Rational> a;  ///< (2i+4)/(N-i+1)
  std::vector<Rational> b;  ///< (i+2)(i+3)/((N-i)(N-i+1))
};

/// Throws std::domain_error for N < 2.
ModalCoefficients modal_coefficients(int degree);

/// psi_0(x) .. psi_{N-2}(x) (order none) or their derivatives (order first).
/// The derivative is taken through the modal derivative matrix Q acting on
/// dual values.
std::vector<double> eval_modal_basis(int degree, double x, Derivative order = Derivative::none);

/// Exact modal values at a rational abscissa, psi = G C phi.
std::vector<Rational> eval_modal_basis(int degree, const Rational& x);

}  // namespace bdpg
