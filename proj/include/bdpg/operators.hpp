#pragma once

#include "bdpg/matrix.hpp"
#include "bdpg/rational.hpp"

namespace bdpg {

/// Derivative of the interior Bernstein vector Phi = [phi_1 .. phi_{N-1}]:
///   Phi' = D Phi + d,   d = N [phi_0, 0, ..., 0, -phi_N]^T.
/// For N = 2 the single entry of d is N (phi_0 - phi_N).
struct BernsteinDerivative {
  RationalMatrix D;       ///< (N-1)x(N-1), tridiag(N-i+1, 2i-N, -(i+1)) for 1-based i
  Rational first_phi0;    ///< coefficient of phi_0 in d[0]
  Rational last_phiN;     ///< coefficient of phi_N in d[N-2]
};

BernsteinDerivative bernstein_derivative_matrix(int degree);

/// Psi = G DualPsi. (N-1)x(N+1), three diagonals: 1, a_i, b_i.
RationalMatrix transform_G(int degree);

/// DualPsi' = P DualPsi. (N+1)x(N+1); dense only in the first and last columns.
RationalMatrix dual_derivative_matrix(int degree);

/// Psi' = Q DualPsi with Q = G P. (N-1)x(N+1), (1,3)-banded.
/// Throws ConsistencyError if the band structure does not hold.
RationalMatrix modal_derivative_matrix(int degree);

/// B_{i,j} = int phi_{j+1} psi_i, the columns 1..N-1 of G. Tridiagonal.
RationalMatrix mass_matrix(int degree);

/// A_{i,j} = int phi'_{j+1} psi'_i, assembled as
///   [q_1 .. q_{N-1}] D^T + N ([q_0 | 0 .. 0] - [0 .. 0 | q_N]).
/// Every entry is cross-checked against Gauss quadrature of the defining
/// integral; a mismatch throws ConsistencyError.
RationalMatrix stiffness_matrix(int degree);

/// Quadrature of int phi_{j+1} psi_i (order none) or int phi'_{j+1} psi'_i
/// (order first), with psi expanded directly in the Bernstein basis.
/// Independent of the G/P/Q construction; used as the oracle for B and A.
Matrix quadrature_mass_matrix(int degree);
Matrix quadrature_stiffness_matrix(int degree);

/// Floating-point B and A for the solver.
struct PetrovGalerkinMatrices {
  int degree = 0;
  Matrix mass;
  Matrix stiffness;
};

PetrovGalerkinMatrices petrov_galerkin_matrices(int degree);

}  // namespace bdpg
