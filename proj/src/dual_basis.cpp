#include "bdpg/dual_basis.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "bdpg/operators.hpp"

namespace bdpg {

namespace {

void check_degree(int degree) {
  if (degree < 0) throw std::domain_error("degree must be non-negative");
}

void check_modal_degree(int degree) {
  if (degree < 2) throw std::domain_error("modal basis requires degree >= 2");
}

Rational sign(int power) { return power % 2 == 0 ? Rational(1) : Rational(-1); }

// Direct evaluation of c_{i,j}; valid for every (i,j) but only called on the
// fundamental region i <= j, i + j <= N.
Rational dual_coefficient(int n, int i, int j) {
  BigInt sum = 0;
  for (int r = 0; r <= std::min(i, j); ++r) {
    sum += BigInt(2 * r + 1) * binomial(n + r + 1, n - i) * binomial(n - r, n - i) *
           binomial(n + r + 1, n - j) * binomial(n - r, n - j);
  }
  return sign(i + j) * Rational(sum) / Rational(binomial(n, i) * binomial(n, j));
}

struct Tables {
  Matrix dual;              // C
  Matrix modal;             // G C   (psi in the Bernstein basis)
  Matrix modal_derivative;  // Q     (psi' in the dual basis)
};

std::shared_ptr<const Tables> tables_for(int degree) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const Tables>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(degree); it != cache.end()) return it->second;
  }
  auto t = std::make_shared<Tables>();
  const RationalMatrix c = dual_coefficient_matrix(degree);
  t->dual = c.to_double();
  if (degree >= 2) {
    t->modal = (transform_G(degree) * c).to_double();
    t->modal_derivative = modal_derivative_matrix(degree).to_double();
  }
  std::lock_guard lock(mutex);
  return cache.emplace(degree, std::move(t)).first->second;
}

}  // namespace

RationalMatrix dual_coefficient_matrix(int degree) {
  check_degree(degree);
  const int n = degree;
  RationalMatrix c(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = i; i + j <= n; ++j) c(i, j) = dual_coefficient(n, i, j);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      int p = std::min(i, j), q = std::max(i, j);
      if (p + q > n) std::tie(p, q) = std::pair(n - q, n - p);
      if (p != i || q != j) c(i, j) = c(p, q);
    }
  return c;
}

RationalMatrix bernstein_gram_matrix(int degree) {
  check_degree(degree);
  const int n = degree;
  RationalMatrix m(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      m(i, j) = Rational(binomial(n, i) * binomial(n, j)) /
                Rational(BigInt(2 * n + 1) * binomial(2 * n, i + j));
  return m;
}

std::vector<double> eval_dual_basis(int degree, double x) {
  const std::vector<double> phi = eval_bernstein(degree, x);
  return tables_for(degree)->dual * phi;
}

DualBoundaryValues dual_boundary_values(int degree) {
  check_degree(degree);
  const int n = degree;
  DualBoundaryValues v;
  v.at0.resize(n + 1);
  v.at1.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    v.at0[i] = to_double(sign(i) * Rational((n + 1) * binomial(n + 1, i + 1)));
    v.at1[i] = to_double(sign(n - i) * Rational((n + 1) * binomial(n + 1, i)));
  }
  return v;
}

ModalCoefficients modal_coefficients(int degree) {
  check_modal_degree(degree);
  const int n = degree;
  ModalCoefficients m;
  m.degree = n;
  for (int i = 0; i <= n - 2; ++i) {
    m.a.emplace_back(Rational(2 * i + 4, n - i + 1));
    m.b.emplace_back(Rational((i + 2) * (i + 3), (n - i) * (n - i + 1)));
  }
  return m;
}

std::vector<double> eval_modal_basis(int degree, double x, Derivative order) {
  check_modal_degree(degree);
  const auto t = tables_for(degree);
  const std::vector<double> phi = eval_bernstein(degree, x);
  if (order == Derivative::none) return t->modal * phi;
  return t->modal_derivative * (t->dual * phi);
}

std::vector<Rational> eval_modal_basis(int degree, const Rational& x) {
  check_modal_degree(degree);
  const RationalMatrix gc = transform_G(degree) * dual_coefficient_matrix(degree);
  const std::vector<Rational> phi = eval_bernstein(degree, x);
  std::vector<Rational> psi(degree - 1);
  for (int i = 0; i < degree - 1; ++i)
    for (int j = 0; j <= degree; ++j) psi[i] += gc(i, j) * phi[j];
  return psi;
}

}  // namespace bdpg
