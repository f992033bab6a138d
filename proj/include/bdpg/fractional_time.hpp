#pragma once

#include <span>
#include <vector>

#include "bdpg/coefficient_field.hpp"

namespace bdpg {

/// L1 discretisation of the Caputo derivative of order alpha in (0,1):
///   D^alpha u(t_{k+1}) ~ mu (u^{k+1} - (1-b_1) u^k
///                              - sum_{j=1}^{k-1} (b_j - b_{j+1}) u^{k-j} - b_k u^0),
/// with b_j = (j+1)^{1-alpha} - j^{1-alpha} and mu = 1 / (tau^alpha Gamma(2-alpha)).
struct L1Weights {
  double alpha = 0.5;
  double tau = 0.0;
  double mu = 0.0;
  std::vector<double> b;  ///< b_0 .. b_M

  /// Coefficient of u^{k-j} in the history term H^{k+1}, for 0 <= j <= k.
  double history_coefficient(int k, int j) const;
};

/// Throws std::domain_error unless 0 < alpha < 1, tau > 0, steps >= 1.
L1Weights l1_weights(double alpha, double tau, int steps);

/// H^{k+1} = (1-b_1) U^k + sum_{j=1}^{k-1} (b_j - b_{j+1}) U^{k-j} + b_k U^0
/// for k >= 1, and U^0 for k = 0. history holds U^0 .. U^k.
CoefficientField history_combination(std::span<const CoefficientField> history,
                                     const L1Weights& weights, int k);

/// mu (u^{k+1} - H^{k+1}) for scalar samples u^0 .. u^{k+1}.
double l1_caputo(std::span<const double> samples, const L1Weights& weights, int k);

}  // namespace bdpg
