#pragma once

#include <cstddef>
#include <utility>

#include "bdpg/matrix.hpp"

namespace bdpg {

/// Tensor-product Bernstein coefficients U of a field
///   u_N(x,y) = Phi(x)^T U Phi(y),   Phi = [phi_1 .. phi_{N-1}],
/// so u_N vanishes on the boundary of the unit square by construction.
/// Row index pairs with x, column index with y.
class CoefficientField {
public:
  CoefficientField() = default;
  explicit CoefficientField(std::size_t order) : coeffs_(order, order) {}
  explicit CoefficientField(Matrix coeffs);

  /// q = N - 1.
  std::size_t order() const noexcept { return coeffs_.rows(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.rows()) + 1; }

  const Matrix& coeffs() const noexcept { return coeffs_; }
  Matrix& coeffs() noexcept { return coeffs_; }

  double operator()(std::size_t i, std::size_t j) const { return coeffs_(i, j); }
  double& operator()(std::size_t i, std::size_t j) { return coeffs_(i, j); }

  friend bool operator==(const CoefficientField&, const CoefficientField&) = default;

private:
  Matrix coeffs_;
};

}  // namespace bdpg
