// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bdpg/banded.hpp"
#include "bdpg/dual_basis.hpp"
#include "bdpg/experiments.hpp"
#include "bdpg/fractional_time.hpp"
#include "bdpg/operators.hpp"

namespace {

using namespace bdpg;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void exact_algebra(Outcome& o) {
  for (int n = 0; n <= 12; ++n) {
    const RationalMatrix c = dual_coefficient_matrix(n);
    RationalMatrix gram(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        gram(i, j) = Rational(binomial(n, i) * binomial(n, j) * factorial(i + j) *
                                  factorial(2 * n - i - j),
                              factorial(2 * n + 1));
    bool sym = true, sums = true;
    for (int i = 0; i <= n; ++i) {
      Rational row = 0, col = 0;
      for (int j = 0; j <= n; ++j) {
        row += c(i, j);
        col += c(j, i);
        sym = sym && c(i, j) == c(j, i) && c(i, j) == c(n - i, n - j);
      }
      sums = sums && row == n + 1 && col == n + 1;
    }
    o.require(sym, "C bisymmetry N=" + std::to_string(n));
    o.require(sums, "C sums N=" + std::to_string(n));
    o.require(c * gram == identity_rational(n + 1), "C*Gram N=" + std::to_string(n));
    if (n < 1) continue;
    // sum_i dual_i' = 0: each column of P sums to zero.
    const RationalMatrix p = dual_derivative_matrix(n);
    for (int j = 0; j <= n; ++j) {
      Rational s = 0;
      for (int i = 0; i <= n; ++i) s += p(i, j);
      o.require(s == 0, "P column sum N=" + std::to_string(n));
    }
    if (n < 2) continue;
    const RationalMatrix q = modal_derivative_matrix(n);
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j <= n; ++j)
        if (j < i - 1 || j > i + 3)
          o.require(q(i, j) == 0, "Q band N=" + std::to_string(n));
  }
  o.detail << " N<=12 rational checks";
}

RationalMatrix table(std::size_t rows, std::size_t cols, const std::vector<Rational>& v) {
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  return m;
}

void degree_six_matrices(Outcome& o) {
  using R = Rational;
  const auto g = table(5, 7, {1, R(4, 7), R(1, 7), 0, 0, 0, 0,  //
                              0, 1, 1, R(2, 5), 0, 0, 0,        //
                              0, 0, 1, R(8, 5), 1, 0, 0,        //
                              0, 0, 0, 1, R(5, 2), R(5, 2), 0,  //
                              0, 0, 0, 0, 1, 4, 7});
  const auto p = table(7, 7, {-43, -6, 0, 0, 0, 0, 7,     //
                              148, 4, -5, 0, 0, 0, -49,   //
                              -245, 2, 2, -4, 0, 0, 147,  //
                              245, 0, 3, 0, -3, 0, -245,  //
                              -147, 0, 0, 4, -2, -2, 245, //
                              49, 0, 0, 0, 5, -4, -148,   //
                              -7, 0, 0, 0, 0, 6, 43});
  const auto q = table(5, 7, {R(46, 7), R(-24, 7), R(-18, 7), R(-4, 7), 0, 0, 0,  //
                              1, 6, R(-9, 5), -4, R(-6, 5), 0, 0,                 //
                              0, 2, R(34, 5), 0, R(-34, 5), -2, 0,                //
                              0, 0, 3, 10, R(9, 2), -15, R(-5, 2),                //
                              0, 0, 0, 4, 18, 24, -46});
  o.require(transform_G(6) == g, "G");
  o.require(dual_derivative_matrix(6) == p, "P");
  o.require(modal_derivative_matrix(6) == q, "Q");
  o.detail << " G, P, Q for N=6";
}

void operator_oracles(Outcome& o) {
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const Matrix b = mass_matrix(n).to_double();
    const Matrix a = stiffness_matrix(n).to_double();
    const Matrix qb = quadrature_mass_matrix(n);
    const Matrix qa = quadrature_stiffness_matrix(n);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        worst = std::max({worst, std::abs(b(i, j) - qb(i, j)), std::abs(a(i, j) - qa(i, j))});
  }
  o.require(worst < 1e-10, "max deviation " + sci(worst));
  o.require(stiffness_matrix(2)(0, 0) == Rational(40, 3), "A N=2");
  o.require(mass_matrix(2)(0, 0) == Rational(4, 3), "B N=2");
  o.detail << " max |A,B - quadrature| = " << sci(worst) << " for N<=10";
}

struct Cell {
  int n;
  double alpha;
  double linf;
  double h1;
  double tol;  // relative (0.05, 0.15) or factor (3)
  bool factor;
};

void table1(Outcome& o) {
  const std::vector<Cell> cells{
      {2, 0.25, 7.53e-2, 2.81e-1, 0.05, false}, {2, 0.5, 7.52e-2, 2.81e-1, 0.05, false},
      {2, 0.75, 7.49e-2, 2.81e-1, 0.05, false}, {4, 0.25, 1.74e-3, 8.91e-3, 0.15, false},
      {4, 0.5, 1.72e-3, 8.91e-3, 0.15, false},  {4, 0.75, 1.63e-3, 8.91e-3, 0.15, false},
      {6, 0.25, 1.78e-5, 1.34e-4, 3.0, true},   {6, 0.5, 3.01e-5, 1.43e-4, 3.0, true},
      {6, 0.75, 9.98e-5, 2.86e-4, 3.0, true},   {8, 0.25, 3.67e-6, 8.75e-6, 3.0, true},
      {8, 0.5, 2.25e-5, 5.15e-5, 3.0, true},    {8, 0.75, 2.79e-6, 2.54e-4, 3.0, true}};
  ExperimentSpec s;
  s.alphas = {0.25, 0.5, 0.75};
  s.degrees = {2, 4, 6, 8};
  s.taus = {0.01};
  s.times = {1.0};
  const auto rows = run_example(s);
  int passed = 0, total = 0;
  for (const Cell& c : cells) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const ErrorRow& r) {
      return r.degree == c.n && r.alpha == c.alpha;
    });
    if (it == rows.end()) {
      o.require(false, "missing row");
      continue;
    }
    const auto within = [&](double got, double want) {
      return c.factor ? (got <= want * c.tol && got >= want / c.tol)
                      : std::abs(got - want) <= c.tol * want;
    };
    for (int k = 0; k < 2; ++k) {
      const double got = k == 0 ? it->errors.linf : it->errors.h1;
      const double want = k == 0 ? c.linf : c.h1;
      ++total;
      if (within(got, want)) {
        ++passed;
      } else {
        o.require(false, std::string(k == 0 ? "Linf" : "H1") + " N=" + std::to_string(c.n) +
                             " alpha=" + sci(c.alpha) + ": " + sci(got) + " vs " + sci(want));
      }
    }
  }
  o.detail << " " << passed << "/" << total << " cells within tolerance";
}

void table2(Outcome& o) {
  ExperimentSpec s;
  s.alphas = {0.25, 0.5, 0.75};
  s.degrees = {8};
  s.taus = {1.0 / 80, 1.0 / 160};
  s.times = {1.0};
  const auto rates = convergence_in_time(s);
  const std::vector<std::pair<double, double>> published{{0.25, 1.65}, {0.5, 1.49}, {0.75, 1.25}};
  for (const auto& [alpha, want] : published) {
    const auto it = std::find_if(rates.begin(), rates.end(), [&](const RateRow& r) {
      return r.row.alpha == alpha && r.rates.has_value();
    });
    if (it == rates.end()) {
      o.require(false, "missing rate");
      continue;
    }
    const double rate = it->rates->h1;
    o.detail << " alpha=" << alpha << ":" << sci(rate);
    o.require(std::abs(rate - want) <= 0.12, "rate vs table alpha=" + sci(alpha));
    o.require(std::abs(rate - (2 - alpha)) <= 0.12, "rate vs 2-alpha alpha=" + sci(alpha));
  }
  ExperimentSpec m10;
  m10.alphas = {0.5};
  m10.degrees = {8};
  m10.taus = {0.1};
  m10.times = {1.0};
  const double h1 = run_example(m10).front().errors.h1;
  o.detail << " H1(M=10)=" << sci(h1);
  o.require(std::abs(h1 - 1.55e-3) <= 0.25 * 1.55e-3, "H1 at M=10");
}

void stability(Outcome& o) {
  int runs = 0;
  double worst = 0.0;
  for (double alpha : {0.25, 0.5, 0.75})
    for (double tau : {0.05, 0.01})
      for (int n : {6, 8}) {
        ExperimentSpec s;
        s.example = 2;
        s.alphas = {alpha};
        s.taus = {tau};
        s.degrees = {n};
        const auto report = stability_run(s);
        ++runs;
        for (std::size_t k = 1; k < report.rows.size(); ++k)
          worst = std::max(worst, report.rows[k].energy_norm / report.initial_l2);
        o.require(report.violations.empty(),
                  "alpha=" + sci(alpha) + " tau=" + sci(tau) + " N=" + std::to_string(n));
      }
  o.detail << " " << runs << " runs, max ||u^k||_1/||u^0|| = " << sci(worst);
}

void l1_consistency(Outcome& o) {
  std::vector<double> errors;
  const std::vector<int> ms{40, 80, 160};
  for (double alpha : {0.25, 0.5, 0.75}) {
    errors.clear();
    for (int m : ms) {
      const double tau = 1.0 / m;
      const auto w = l1_weights(alpha, tau, m);
      std::vector<double> u(m + 1);
      for (int k = 0; k <= m; ++k) u[k] = (k * tau) * (k * tau);
      const double exact = 2.0 / std::tgamma(3 - alpha);
      errors.push_back(std::abs(l1_caputo(u, w, m - 1) - exact));
    }
    for (std::size_t i = 1; i < errors.size(); ++i) {
      const double rate = std::log(errors[i - 1] / errors[i]) / std::log(2.0);
      o.require(std::abs(rate - (2 - alpha)) <= 0.1, "rate alpha=" + sci(alpha) + " " + sci(rate));
      if (i + 1 == errors.size()) o.detail << " alpha=" << alpha << ":" << sci(rate);
    }
  }
}

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

double relative_error(const BandMatrix& m, const std::vector<double>& b) {
  const auto x = BandLU(m).solve(b);
  const Eigen::VectorXd ref = to_eigen(m.to_dense()).partialPivLu().solve(
      Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size())));
  double num = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) num = std::max(num, std::abs(x[i] - ref[i]));
  return num / ref.cwiseAbs().maxCoeff();
}

void linear_algebra(Outcome& o) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> size(1, 200), band(0, 12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = size(rng), p = band(rng), q = band(rng);
    BandMatrix m(n, p, q);
    for (std::size_t i = 0; i < n; ++i) {
      double off = 0.0;
      for (std::size_t j = (i > p ? i - p : 0); j <= std::min(n - 1, i + q); ++j)
        if (j != i) {
          m.at(i, j) = u(rng);
          off += std::abs(m(i, j));
        }
      m.at(i, i) = off + 1.0;
    }
    std::vector<double> b(n);
    for (double& v : b) v = u(rng);
    worst = std::max(worst, relative_error(m, b));
  }
  for (int n = 2; n <= 12; ++n) {
    const auto pg = petrov_galerkin_matrices(n);
    const BandMatrix m = assemble_system(pg.mass, pg.stiffness, 0.0792665);
    std::vector<double> b(m.order());
    for (double& v : b) v = u(rng);
    worst = std::max(worst, relative_error(m, b));
  }
  o.require(worst < 1e-10, "solve deviation " + sci(worst));
  double kron_worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const auto pg = petrov_galerkin_matrices(n);
    const double alpha0 = 0.35;
    const Matrix got = assemble_system(pg.mass, pg.stiffness, alpha0).to_dense();
    const Matrix ref = kron(pg.mass, pg.mass) +
                       alpha0 * (kron(pg.mass, pg.stiffness) + kron(pg.stiffness, pg.mass));
    for (std::size_t i = 0; i < ref.rows(); ++i)
      for (std::size_t j = 0; j < ref.cols(); ++j)
        kron_worst = std::max(kron_worst, std::abs(got(i, j) - ref(i, j)));
  }
  o.require(kron_worst < 1e-13, "kron deviation " + sci(kron_worst));
  o.detail << " solve rel err " << sci(worst) << ", kron err " << sci(kron_worst);
}

void sparsity(Outcome& o) {
  const auto rows = sparsity_report({8, 10, 12, 14});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    o.detail << " N=" << rows[i].degree << ":" << sci(rows[i].density);
    if (i > 0) o.require(rows[i].density < rows[i - 1].density, "not decreasing");
  }
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact basis algebra", 10, exact_algebra},
      {2, "N=6 transformation matrices", 1, degree_six_matrices},
      {3, "operator quadrature oracles", 5, operator_oracles},
      {4, "spatial convergence table", 120, table1},
      {5, "temporal convergence table", 300, table2},
      {6, "unconditional stability", 60, stability},
      {7, "L1 consistency", 5, l1_consistency},
      {8, "banded linear algebra", 10, linear_algebra},
      {9, "sparsity report", 5, sparsity},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < c.limit_seconds, "runtime over " + sci(c.limit_seconds) + " s");
    if (!o.ok) ++failed;
    std::printf("%s %d %s (%.2f s):%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed;
}
