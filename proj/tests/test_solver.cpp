#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "bdpg/errors.hpp"
#include "bdpg/experiments.hpp"
#include "bdpg/solver.hpp"

namespace bdpg {
namespace {

constexpr double kPi = std::numbers::pi;

double bern(int n, int i, double x) {
  if (i < 0 || i > n) return 0.0;
  return eval_bernstein(n, x)[i];
}

// Second derivative through the degree-reduction identity.
double bern2(int n, int i, double x) {
  return n * (n - 1) * (bern(n - 2, i - 2, x) - 2 * bern(n - 2, i - 1, x) + bern(n - 2, i, x));
}

TEST(ProjectInitial, ZeroFunctionGivesZeroField) {
  const auto u = project_initial([](double, double) { return 0.0; }, 6, 8);
  EXPECT_EQ(u.order(), 5u);
  EXPECT_EQ(u.coeffs().max_abs(), 0.0);
  const auto empty = project_initial(InitialFunction{}, 6, 8);
  EXPECT_EQ(empty.coeffs().max_abs(), 0.0);
}

TEST(ProjectInitial, ReproducesTrialSpaceMembers) {
  for (int n = 4; n <= 10; ++n) {
    const auto u = project_initial([n](double x, double y) { return bern(n, 2, x) * bern(n, 3, y); },
                                   n, 8);
    for (std::size_t i = 0; i < u.order(); ++i)
      for (std::size_t j = 0; j < u.order(); ++j)
        EXPECT_NEAR(u(i, j), (i == 1 && j == 2) ? 1.0 : 0.0, 1e-11) << n;
  }
}

TEST(ProjectInitial, SmoothFunctionIsApproximatedWell) {
  const auto u = project_initial(examples::initial_condition_2, 12, 8);
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const double x = d(rng), y = d(rng);
    EXPECT_NEAR(evaluate_field(u, x, y), examples::initial_condition_2(x, y), 1e-5);
  }
}

TEST(EvaluateField, VanishesOnBoundaryExactly) {
  CoefficientField u(7);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) u(i, j) = d(rng);
  std::uniform_real_distribution<double> s(0.0, 1.0);
  for (int t = 0; t < 250; ++t) {
    const double r = s(rng);
    EXPECT_EQ(evaluate_field(u, 0.0, r), 0.0);
    EXPECT_EQ(evaluate_field(u, 1.0, r), 0.0);
    EXPECT_EQ(evaluate_field(u, r, 0.0), 0.0);
    EXPECT_EQ(evaluate_field(u, r, 1.0), 0.0);
  }
}

TEST(EvaluateField, SingleCoefficientAndDerivatives) {
  const int n = 6;
  CoefficientField u(n - 1);
  u(1, 3) = 2.0;
  for (double x : {0.2, 0.5, 0.9})
    for (double y : {0.1, 0.6}) {
      EXPECT_NEAR(evaluate_field(u, x, y), 2.0 * bern(n, 2, x) * bern(n, 4, y), 1e-15);
      EXPECT_NEAR(evaluate_field(u, x, y, FieldDerivative::dx),
                  2.0 * eval_bernstein_derivative(n, x)[2] * bern(n, 4, y), 1e-13);
      EXPECT_NEAR(evaluate_field(u, x, y, FieldDerivative::dy),
                  2.0 * bern(n, 2, x) * eval_bernstein_derivative(n, y)[4], 1e-13);
    }
  EXPECT_THROW(evaluate_field(u, 1.5, 0.5), std::domain_error);
}

TEST(EvaluateField, SymmetricFieldHasZeroSlopeAtCentre) {
  const int n = 8;
  CoefficientField u(n - 1);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) u(i, j) = 1.0 + std::min(i, 6 - i) + std::min(j, 6 - j);
  EXPECT_NEAR(evaluate_field(u, 0.5, 0.3, FieldDerivative::dx), 0.0, 1e-13);
  EXPECT_NEAR(evaluate_field(u, 0.3, 0.5, FieldDerivative::dy), 0.0, 1e-13);
}

TEST(ErrorNorms, ZeroFieldAgainstSineProduct) {
  const CoefficientField zero(3);
  const auto exact = [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); };
  const auto grad = [](double x, double y) {
    return Gradient{kPi * std::cos(kPi * x) * std::sin(kPi * y),
                    kPi * std::sin(kPi * x) * std::cos(kPi * y)};
  };
  const auto e = error_norms(zero, exact, grad, 100);
  EXPECT_NEAR(e.linf, 1.0, 1e-15);
  EXPECT_NEAR(e.l2, 0.5, 1e-12);
  EXPECT_NEAR(e.h1, std::sqrt(0.25 + kPi * kPi / 2), 1e-8);
}

TEST(ErrorNorms, FieldAgainstItselfIsZero) {
  CoefficientField u(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) u(i, j) = std::sin(1.0 + i * j);
  const auto e = error_norms(
      u, [&](double x, double y) { return evaluate_field(u, x, y); },
      [&](double x, double y) {
        return Gradient{evaluate_field(u, x, y, FieldDerivative::dx),
                        evaluate_field(u, x, y, FieldDerivative::dy)};
      },
      40);
  EXPECT_LT(e.linf, 1e-14);
  EXPECT_LT(e.l2, 1e-14);
  EXPECT_LT(e.h1, 1e-13);
}

TEST(EnergyNorm, ReducesToL2AtZeroAlpha) {
  const int n = 4;
  CoefficientField u(n - 1);
  u(0, 0) = 1.0;  // phi_1(x) phi_1(y), phi_1 = 4x(1-x)^3
  // ||phi_1||^2 = 16 * B(3, 7) = 16 * 2! 6! / 9! = 4/63
  EXPECT_NEAR(energy_norm(u, 0.0), 4.0 / 63, 1e-14);
  EXPECT_EQ(energy_norm(u, 0.0), l2_norm(u));
  EXPECT_GT(energy_norm(u, 0.5), l2_norm(u));
  EXPECT_THROW(energy_norm(u, -1.0), std::domain_error);
}

TEST(AssembleRhs, FirstStepWithoutSourceIsMassProduct) {
  const Discretization disc(6, 8);
  const auto u0 = project_initial(examples::initial_condition_2, disc);
  const std::vector<CoefficientField> h{u0};
  const auto w = l1_weights(0.5, 0.1, 10);
  const auto rhs = assemble_rhs(disc, h, w, SourceFunction{}, 0);
  const auto want = kron(disc.mass(), disc.mass()) * std::span<const double>(vec(u0.coeffs()));
  ASSERT_EQ(rhs.size(), want.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) EXPECT_NEAR(rhs[i], want[i], 1e-14);
}

TEST(AssembleRhs, ZeroHistoryAndSourceGiveZero) {
  const Discretization disc(5, 8);
  const std::vector<CoefficientField> h(3, CoefficientField(4));
  const auto rhs = assemble_rhs(disc, h, l1_weights(0.5, 0.1, 10),
                                [](double, double, double) { return 0.0; }, 2);
  for (double v : rhs) EXPECT_EQ(v, 0.0);
}

TEST(AssembleRhs, NonFiniteSourceIsReported) {
  const Discretization disc(4, 8);
  const std::vector<CoefficientField> h{CoefficientField(3)};
  EXPECT_THROW(assemble_rhs(disc, h, l1_weights(0.5, 0.1, 10),
                            [](double, double, double) { return std::numeric_limits<double>::quiet_NaN(); },
                            0),
               EvaluationError);
}

TEST(Step, RoundTripWithoutDiffusion) {
  const Discretization disc(7, 8);
  const auto u0 = project_initial(examples::initial_condition_2, disc);
  const BandLU lu(assemble_system(disc.mass(), disc.stiffness(), 0.0));
  const std::vector<CoefficientField> h{u0};
  const auto u1 = step(lu, assemble_rhs(disc, h, l1_weights(0.5, 0.1, 10), SourceFunction{}, 0));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_NEAR(u1(i, j), u0(i, j), 1e-12);
}

TEST(Solve, ZeroDataStaysZero) {
  SolverConfig c;
  c.degree = 6;
  c.tau = 0.1;
  const auto r = solve(c);
  ASSERT_EQ(r.history.size(), 11u);
  for (const auto& u : r.history) EXPECT_EQ(u.coeffs().max_abs(), 0.0);
}

TEST(Solve, LinearInTimeTrialSpaceSolutionIsReproduced) {
  // u = t phi_2(x) phi_3(y) lies in the trial space and the L1 quotient is exact for linear t.
  const int n = 5;
  const double alpha = 0.6, kappa = 0.7;
  SolverConfig c;
  c.alpha = alpha;
  c.kappa = kappa;
  c.degree = n;
  c.tau = 0.05;
  c.t_final = 0.5;
  c.source = [=](double x, double y, double t) {
    const double w = bern(n, 2, x) * bern(n, 3, y);
    const double lap = bern2(n, 2, x) * bern(n, 3, y) + bern(n, 2, x) * bern2(n, 3, y);
    return std::pow(t, 1 - alpha) / std::tgamma(2 - alpha) * w - kappa * t * lap;
  };
  const auto r = solve(c);
  for (int k = 0; k <= 10; ++k) {
    const auto& u = r.at_step(k);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        EXPECT_NEAR(u(i, j), (i == 1 && j == 2) ? k * 0.05 : 0.0, 1e-11) << k;
  }
  EXPECT_EQ(&r.at_time(0.25), &r.at_step(5));
  EXPECT_THROW(r.at_time(0.26), std::domain_error);
}

TEST(Solve, EnergyStaysBelowInitialNorm) {
  for (double alpha : {0.25, 0.5, 0.75})
    for (double tau : {0.05, 0.01})
      for (int n : {6, 8}) {
        SolverConfig c;
        c.alpha = alpha;
        c.tau = tau;
        c.degree = n;
        c.initial = examples::initial_condition_2;
        const auto r = solve(c);
        const double bound = l2_norm(r.at_step(0)) * (1 + 1e-8);
        for (int k = 1; k <= c.steps(); ++k)
          ASSERT_LE(energy_norm(r.at_step(k), c.alpha0()), bound)
              << alpha << " " << tau << " " << n << " k=" << k;
      }
}

TEST(SolverConfig, Validation) {
  SolverConfig c;
  c.tau = 0.03;
  EXPECT_THROW(c.steps(), std::domain_error);
  c.tau = 1e-7;
  EXPECT_THROW(c.steps(), std::domain_error);
  c.tau = 0.01;
  EXPECT_EQ(c.steps(), 100);
  EXPECT_NEAR(c.alpha0(), 0.1 * std::tgamma(1.5), 1e-15);
  c.degree = 1;
  EXPECT_THROW(solve(c), std::domain_error);
  c.degree = 4;
  c.alpha = 1.0;
  EXPECT_THROW(solve(c), std::domain_error);
}

}  // namespace
}  // namespace bdpg
