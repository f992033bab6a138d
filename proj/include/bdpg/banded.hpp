#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "bdpg/matrix.hpp"

namespace bdpg {

/// Square matrix with `lower` sub-diagonals and `upper` super-diagonals.
/// Each row's band is stored contiguously: row i keeps columns
/// i-lower .. i+upper at offsets 0 .. lower+upper.
class BandMatrix {
public:
  BandMatrix() = default;
  BandMatrix(std::size_t n, std::size_t lower, std::size_t upper);

  std::size_t order() const noexcept { return n_; }
  std::size_t lower() const noexcept { return lower_; }
  std::size_t upper() const noexcept { return upper_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept {
    return j + lower_ >= i && j <= i + upper_;
  }

  /// Entry (i,j); zero outside the band.
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return in_band(i, j) ? data_[index(i, j)] : 0.0;
  }

  /// Writable entry; throws std::out_of_range outside the band.
  double& at(std::size_t i, std::size_t j);

  double max_abs() const;
  std::vector<double> multiply(std::span<const double> x) const;
  Matrix to_dense() const;

  /// Largest |i-j| over entries that are actually nonzero.
  std::pair<std::size_t, std::size_t> measured_bandwidth() const;
  std::size_t nonzeros() const;

  static BandMatrix from_dense(const Matrix& m, std::size_t lower, std::size_t upper);

private:
  friend class BandLU;
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return i * stride_ + (j + lower_ - i);
  }

  std::size_t n_ = 0;
  std::size_t lower_ = 0;
  std::size_t upper_ = 0;
  std::size_t stride_ = 1;
  std::vector<double> data_;
};

/// Doolittle LU without pivoting, in place within the band (L has unit
/// diagonal and `lower` sub-diagonals, U has `upper` super-diagonals).
/// Immutable once built; concurrent solve() calls are safe.
class BandLU {
public:
  /// Throws SingularMatrixError when |pivot| < 1e-13 * max|M|.
  explicit BandLU(BandMatrix m);

  std::size_t order() const noexcept { return lu_.order(); }

  /// Throws DimensionError on length mismatch.
  std::vector<double> solve(std::span<const double> rhs) const;

  /// Dense L and U, for inspection.
  Matrix lower_factor() const;
  Matrix upper_factor() const;

private:
  BandMatrix lu_;
};

inline BandLU band_lu_factorize(BandMatrix m) { return BandLU(std::move(m)); }

inline std::vector<double> band_lu_solve(const BandLU& lu, std::span<const double> rhs) {
  return lu.solve(rhs);
}

/// Bandwidths (lower, upper) of the nonzero pattern of a dense matrix.
std::pair<std::size_t, std::size_t> bandwidth(const Matrix& m);

/// M = B(x)B + alpha0 (B(x)A + A(x)B) for the column-major vec of U, i.e.
/// M vec(U) = vec(B U B^T + alpha0 (A U B^T + B U A^T)).
/// Throws DimensionError unless A and B are square of equal order.
BandMatrix assemble_system(const Matrix& mass, const Matrix& stiffness, double alpha0);

}  // namespace bdpg
