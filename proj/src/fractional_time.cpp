#include "bdpg/fractional_time.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bdpg/errors.hpp"

namespace bdpg {

double L1Weights::history_coefficient(int k, int j) const {
  if (j < 0 || j > k || static_cast<std::size_t>(k) >= b.size())
    throw std::out_of_range("history coefficient index");
  if (k == 0) return 1.0;
  if (j == k) return b[k];
  return b[j] - b[j + 1];
}

L1Weights l1_weights(double alpha, double tau, int steps) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("fractional order must lie in (0,1), got " + std::to_string(alpha));
  if (!(tau > 0.0)) throw std::domain_error("time step must be positive");
  if (steps < 1) throw std::domain_error("step count must be at least 1");
  L1Weights w;
  w.alpha = alpha;
  w.tau = tau;
  w.mu = 1.0 / (std::pow(tau, alpha) * std::tgamma(2.0 - alpha));
  w.b.resize(static_cast<std::size_t>(steps) + 1);
  const double e = 1.0 - alpha;
  for (int j = 0; j <= steps; ++j) w.b[j] = std::pow(j + 1.0, e) - std::pow(double(j), e);
  return w;
}

CoefficientField history_combination(std::span<const CoefficientField> history,
                                     const L1Weights& weights, int k) {
  if (k < 0 || history.size() != static_cast<std::size_t>(k) + 1)
    throw DimensionError("history must hold U^0 .. U^k");
  const std::size_t q = history.front().order();
  for (const auto& u : history)
    if (u.order() != q) throw DimensionError("history fields differ in size");

  Matrix h(q, q);
  // Fixed summation order, oldest field last.
  for (int j = 0; j <= k; ++j) {
    const double c = weights.history_coefficient(k, j);
    const auto src = history[k - j].coeffs().data();
    auto dst = h.data();
    for (std::size_t p = 0; p < dst.size(); ++p) dst[p] += c * src[p];
  }
  return CoefficientField(std::move(h));
}

double l1_caputo(std::span<const double> samples, const L1Weights& weights, int k) {
  if (k < 0 || samples.size() < static_cast<std::size_t>(k) + 2)
    throw DimensionError("l1_caputo needs samples u^0 .. u^{k+1}");
  double h = 0.0;
  for (int j = 0; j <= k; ++j) h += weights.history_coefficient(k, j) * samples[k - j];
  return weights.mu * (samples[k + 1] - h);
}

}  // namespace bdpg
