#include "bdpg/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bdpg/errors.hpp"

namespace bdpg {

BandMatrix::BandMatrix(std::size_t n, std::size_t lower, std::size_t upper)
    : n_(n),
      lower_(lower),
      upper_(upper),
      stride_(lower + upper + 1),
      data_(n * (lower + upper + 1), 0.0) {}

double& BandMatrix::at(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_ || !in_band(i, j))
    throw std::out_of_range("band entry (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside storage");
  return data_[index(i, j)];
}

double BandMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> BandMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw DimensionError("band multiply: length mismatch");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > lower_ ? i - lower_ : 0;
    const std::size_t hi = std::min(n_ - 1, i + upper_);
    double s = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) s += data_[index(i, j)] * x[j];
    y[i] = s;
  }
  return y;
}

Matrix BandMatrix::to_dense() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

std::pair<std::size_t, std::size_t> BandMatrix::measured_bandwidth() const {
  std::size_t lo = 0, up = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = (i > lower_ ? i - lower_ : 0); j <= std::min(n_ - 1, i + upper_); ++j)
      if (data_[index(i, j)] != 0.0) {
        if (j < i) lo = std::max(lo, i - j);
        else up = std::max(up, j - i);
      }
  return {lo, up};
}

std::size_t BandMatrix::nonzeros() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = (i > lower_ ? i - lower_ : 0); j <= std::min(n_ - 1, i + upper_); ++j)
      if (data_[index(i, j)] != 0.0) ++count;
  return count;
}

BandMatrix BandMatrix::from_dense(const Matrix& m, std::size_t lower, std::size_t upper) {
  if (m.rows() != m.cols()) throw DimensionError("band matrix must be square");
  BandMatrix b(m.rows(), lower, upper);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (b.in_band(i, j)) b.data_[b.index(i, j)] = m(i, j);
      else if (m(i, j) != 0.0)
        throw std::invalid_argument("dense entry outside the requested band");
    }
  return b;
}

BandLU::BandLU(BandMatrix m) : lu_(std::move(m)) {
  const std::size_t n = lu_.n_;
  const std::size_t p = lu_.lower_;
  const std::size_t q = lu_.upper_;
  const double threshold = 1e-13 * lu_.max_abs();
  auto& a = lu_.data_;
  for (std::size_t k = 0; k < n; ++k) {
    const double pivot = a[lu_.index(k, k)];
    if (!(std::abs(pivot) >= threshold) || pivot == 0.0) throw SingularMatrixError(k, pivot);
    const std::size_t row_end = std::min(n - 1, k + p);
    const std::size_t col_end = std::min(n - 1, k + q);
    const double* pivot_row = &a[lu_.index(k, k)];
    for (std::size_t i = k + 1; i <= row_end; ++i) {
      double& lik = a[lu_.index(i, k)];
      lik /= pivot;
      if (lik == 0.0) continue;
      double* row = &a[lu_.index(i, k)];
      // row[c] and pivot_row[c] both address column k + c.
      for (std::size_t c = 1; c <= col_end - k; ++c) row[c] -= lik * pivot_row[c];
    }
  }
}

std::vector<double> BandLU::solve(std::span<const double> rhs) const {
  const std::size_t n = lu_.n_;
  if (rhs.size() != n)
    throw DimensionError("band solve: rhs length " + std::to_string(rhs.size()) +
                         " != order " + std::to_string(n));
  std::vector<double> x(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i > lu_.lower_ ? i - lu_.lower_ : 0;
    double s = x[i];
    for (std::size_t j = lo; j < i; ++j) s -= lu_.data_[lu_.index(i, j)] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t hi = std::min(n - 1, i + lu_.upper_);
    double s = x[i];
    for (std::size_t j = i + 1; j <= hi; ++j) s -= lu_.data_[lu_.index(i, j)] * x[j];
    x[i] = s / lu_.data_[lu_.index(i, i)];
  }
  return x;
}

Matrix BandLU::lower_factor() const {
  Matrix l = identity(order());
  for (std::size_t i = 0; i < order(); ++i)
    for (std::size_t j = 0; j < i; ++j) l(i, j) = lu_(i, j);
  return l;
}

Matrix BandLU::upper_factor() const {
  Matrix u(order(), order());
  for (std::size_t i = 0; i < order(); ++i)
    for (std::size_t j = i; j < order(); ++j) u(i, j) = lu_(i, j);
  return u;
}

std::pair<std::size_t, std::size_t> bandwidth(const Matrix& m) {
  std::size_t lo = 0, up = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) {
        if (j < i) lo = std::max(lo, i - j);
        else up = std::max(up, j - i);
      }
  return {lo, up};
}

BandMatrix assemble_system(const Matrix& mass, const Matrix& stiffness, double alpha0) {
  const std::size_t q = mass.rows();
  if (mass.cols() != q || stiffness.rows() != q || stiffness.cols() != q)
    throw DimensionError("assemble_system: mass and stiffness must be square of equal order");
  if (!(alpha0 >= 0.0)) throw std::domain_error("alpha0 must be non-negative");

  const auto [bl, bu] = bandwidth(mass);
  const auto [al, au] = bandwidth(stiffness);
  // bw(Y (x) X) = bw(X) + q bw(Y) on each side.
  const std::size_t lower = std::max({bl + q * bl, al + q * bl, bl + q * al});
  const std::size_t upper = std::max({bu + q * bu, au + q * bu, bu + q * au});
  const std::size_t n = q * q;
  BandMatrix m(n, std::min(lower, n ? n - 1 : 0), std::min(upper, n ? n - 1 : 0));

  const std::size_t reach = std::max({bl, bu, al, au});
  auto span_of = [&](std::size_t i) {
    return std::pair(i > reach ? i - reach : 0, std::min(q - 1, i + reach));
  };
  // Row (l + q m) of M against column (i + q j): x indices l,i; y indices m,j.
  for (std::size_t ym = 0; ym < q; ++ym) {
    const auto [j0, j1] = span_of(ym);
    for (std::size_t yj = j0; yj <= j1; ++yj) {
      const double b_y = mass(ym, yj), a_y = stiffness(ym, yj);
      if (b_y == 0.0 && a_y == 0.0) continue;
      for (std::size_t xl = 0; xl < q; ++xl) {
        const auto [i0, i1] = span_of(xl);
        for (std::size_t xi = i0; xi <= i1; ++xi) {
          const double b_x = mass(xl, xi), a_x = stiffness(xl, xi);
          const double v = b_y * b_x + alpha0 * (b_y * a_x + a_y * b_x);
          if (v != 0.0) m.at(xl + q * ym, xi + q * yj) = v;
        }
      }
    }
  }
  return m;
}

}  // namespace bdpg
