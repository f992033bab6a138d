#include "bdpg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "bdpg/dual_basis.hpp"
#include "bdpg/operators.hpp"

namespace bdpg {

namespace examples {

using std::numbers::pi;

double exact_solution(double x, double y, double t) {
  return std::sin(pi * x) * std::sin(pi * y) * t * t;
}

Gradient exact_gradient(double x, double y, double t) {
  return {pi * std::cos(pi * x) * std::sin(pi * y) * t * t,
          pi * std::sin(pi * x) * std::cos(pi * y) * t * t};
}

SourceFunction manufactured_source(double alpha, double kappa) {
  // Caputo derivative of t^2 is 2 t^{2-alpha} / Gamma(3-alpha).
  const double caputo_scale = 2.0 / std::tgamma(3.0 - alpha);
  return [=](double x, double y, double t) {
    const double space = std::sin(pi * x) * std::sin(pi * y);
    return (caputo_scale * std::pow(t, 2.0 - alpha) + 2.0 * kappa * pi * pi * t * t) * space;
  };
}

double initial_condition_2(double x, double y) { return x * (x - 1.0) * std::sin(2.0 * pi * y); }

SolverConfig make_config(int example, double alpha, double kappa, int degree, double tau,
                         double t_final, int quad_points) {
  SolverConfig c;
  c.alpha = alpha;
  c.kappa = kappa;
  c.degree = degree;
  c.tau = tau;
  c.t_final = t_final;
  c.quad_points = quad_points;
  switch (example) {
    case 1:
      c.source = manufactured_source(alpha, kappa);
      break;
    case 2:
      c.initial = initial_condition_2;
      break;
    default:
      throw std::invalid_argument("unknown example id " + std::to_string(example));
  }
  return c;
}

}  // namespace examples

namespace {

template <class T, class F>
auto parallel_map(const std::vector<T>& items, F f) {
  using R = decltype(f(items.front()));
  std::vector<std::future<R>> futures;
  futures.reserve(items.size());
  for (const T& item : items) futures.push_back(std::async(std::launch::async, f, item));
  std::vector<R> out;
  out.reserve(items.size());
  for (auto& fut : futures) out.push_back(fut.get());
  return out;
}

struct Cell {
  double alpha;
  int degree;
  double tau;
};

void check_times(const ExperimentSpec& spec) {
  if (spec.times.empty()) throw std::invalid_argument("no report times given");
  for (double t : spec.times)
    if (t < 0.0 || t > spec.t_final * (1.0 + 1e-12))
      throw std::invalid_argument("report time " + std::to_string(t) + " outside [0, T]");
}

SolverConfig config_for(const ExperimentSpec& spec, const Cell& c) {
  return examples::make_config(spec.example, c.alpha, spec.kappa, c.degree, c.tau, spec.t_final,
                               spec.quad_points);
}

ErrorNorms errors_against_field(const CoefficientField& u, const CoefficientField& reference,
                                int grid) {
  return error_norms(
      u, [&](double x, double y) { return evaluate_field(reference, x, y); },
      [&](double x, double y) {
        return Gradient{evaluate_field(reference, x, y, FieldDerivative::dx),
                        evaluate_field(reference, x, y, FieldDerivative::dy)};
      },
      grid);
}

std::vector<ErrorRow> rows_for(const ExperimentSpec& spec, const Cell& cell,
                               const SolveResult* reference) {
  const SolveResult result = solve(config_for(spec, cell));
  std::vector<ErrorRow> rows;
  for (double t : spec.times) {
    ErrorRow r{spec.example, cell.alpha, spec.kappa, cell.degree, cell.tau, t, {}};
    const CoefficientField& u = result.at_time(t);
    if (spec.example == 1) {
      r.errors = error_norms(
          u, [t](double x, double y) { return examples::exact_solution(x, y, t); },
          [t](double x, double y) { return examples::exact_gradient(x, y, t); }, spec.grid);
    } else {
      r.errors = errors_against_field(u, reference->at_time(t), spec.grid);
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<RateRow> with_rates(const std::vector<ErrorRow>& rows, bool in_time) {
  // Group by everything except the refinement parameter, keeping input order.
  std::vector<RateRow> out;
  std::map<std::tuple<double, double, double>, const ErrorRow*> previous;
  for (const ErrorRow& r : rows) {
    const auto key = in_time ? std::tuple(r.alpha, double(r.degree), r.t)
                             : std::tuple(r.alpha, r.tau, r.t);
    RateRow rr{r, std::nullopt};
    if (auto it = previous.find(key); it != previous.end()) {
      const ErrorRow& p = *it->second;
      const double ratio = in_time ? r.tau / p.tau : double(p.degree) / r.degree;
      rr.rates = ErrorNorms{observed_rate(r.errors.linf, p.errors.linf, ratio),
                            observed_rate(r.errors.l2, p.errors.l2, ratio),
                            observed_rate(r.errors.h1, p.errors.h1, ratio)};
    }
    previous[key] = &r;
    out.push_back(rr);
  }
  return out;
}

}  // namespace

std::vector<ErrorRow> run_example(const ExperimentSpec& spec) {
  if (spec.example != 1 && spec.example != 2)
    throw std::invalid_argument("unknown example id " + std::to_string(spec.example));
  check_times(spec);
  if (spec.alphas.empty() || spec.degrees.empty() || spec.taus.empty())
    throw std::invalid_argument("alpha, N and tau lists must be non-empty");

  std::map<std::pair<double, double>, SolveResult> references;
  if (spec.example == 2) {
    std::vector<Cell> ref_cells;
    for (double a : spec.alphas)
      for (double tau : spec.taus) ref_cells.push_back({a, examples::kReferenceDegree, tau});
    auto solved = parallel_map(ref_cells, [&](const Cell& c) { return solve(config_for(spec, c)); });
    for (std::size_t i = 0; i < ref_cells.size(); ++i)
      references.emplace(std::pair(ref_cells[i].alpha, ref_cells[i].tau), std::move(solved[i]));
  }

  std::vector<Cell> cells;
  for (double a : spec.alphas)
    for (int n : spec.degrees)
      for (double tau : spec.taus) cells.push_back({a, n, tau});
  const auto per_cell = parallel_map(cells, [&](const Cell& c) {
    const SolveResult* ref = spec.example == 2 ? &references.at({c.alpha, c.tau}) : nullptr;
    return rows_for(spec, c, ref);
  });
  std::vector<ErrorRow> rows;
  for (const auto& block : per_cell) rows.insert(rows.end(), block.begin(), block.end());
  return rows;
}

double observed_rate(double error, double previous_error, double ratio) {
  return std::log(error / previous_error) / std::log(ratio);
}

std::vector<RateRow> convergence_in_time(const ExperimentSpec& spec) {
  if (spec.taus.size() < 2) throw std::invalid_argument("time convergence needs at least two step sizes");
  return with_rates(run_example(spec), true);
}

std::vector<RateRow> convergence_in_space(const ExperimentSpec& spec) {
  if (spec.degrees.size() < 2) throw std::invalid_argument("space convergence needs at least two degrees");
  return with_rates(run_example(spec), false);
}

StabilityReport stability_run(const ExperimentSpec& spec) {
  if (spec.alphas.size() != 1 || spec.degrees.size() != 1 || spec.taus.size() != 1)
    throw std::invalid_argument("stability run takes exactly one alpha, N and tau");
  SolverConfig config = config_for(spec, {spec.alphas[0], spec.degrees[0], spec.taus[0]});
  config.source = nullptr;
  const SolveResult result = solve(config);
  const double alpha0 = config.alpha0();

  StabilityReport report;
  report.initial_l2 = l2_norm(result.history.front());
  for (std::size_t k = 0; k < result.history.size(); ++k) {
    StabilityRow row{static_cast<int>(k), static_cast<double>(k) * config.tau,
                     energy_norm(result.history[k], alpha0), l2_norm(result.history[k])};
    if (k > 0 && row.energy_norm > report.initial_l2 * (1.0 + 1e-8))
      report.violations.push_back(row.k);
    report.rows.push_back(row);
  }
  return report;
}

std::vector<std::pair<std::size_t, std::size_t>> sparsity_pattern(int degree) {
  const Matrix b = mass_matrix(degree).to_double();
  const Matrix a = stiffness_matrix(degree).to_double();
  const std::size_t q = b.rows();
  std::set<std::pair<std::size_t, std::size_t>> pattern;
  for (std::size_t ym = 0; ym < q; ++ym)
    for (std::size_t yj = 0; yj < q; ++yj)
      for (std::size_t xl = 0; xl < q; ++xl)
        for (std::size_t xi = 0; xi < q; ++xi) {
          const bool nz = (b(ym, yj) != 0.0 && b(xl, xi) != 0.0) ||
                          (b(ym, yj) != 0.0 && a(xl, xi) != 0.0) ||
                          (a(ym, yj) != 0.0 && b(xl, xi) != 0.0);
          if (nz) pattern.emplace(xl + q * ym, xi + q * yj);
        }
  return {pattern.begin(), pattern.end()};
}

std::vector<SparsityRow> sparsity_report(const std::vector<int>& degrees) {
  std::vector<SparsityRow> rows;
  for (int n : degrees) {
    const auto pattern = sparsity_pattern(n);
    SparsityRow r;
    r.degree = n;
    r.order = static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n - 1);
    for (const auto& [i, j] : pattern) r.bandwidth = std::max(r.bandwidth, i > j ? i - j : j - i);
    r.nonzeros = pattern.size();
    r.density = static_cast<double>(r.nonzeros) / (static_cast<double>(r.order) * r.order);
    rows.push_back(r);
  }
  return rows;
}

std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

namespace {

void write_error_fields(std::ostream& out, const ErrorRow& r) {
  out << r.example << ',' << format_float(r.alpha) << ',' << format_float(r.kappa) << ','
      << r.degree << ',' << format_float(r.tau) << ',' << format_float(r.t) << ','
      << format_float(r.errors.linf) << ',' << format_float(r.errors.l2) << ','
      << format_float(r.errors.h1);
}

constexpr const char* kErrorHeader = "example,alpha,kappa,N,tau,t,linf,l2,h1";

}  // namespace

void write_error_csv(std::ostream& out, const std::vector<ErrorRow>& rows) {
  out << kErrorHeader << '\n';
  for (const ErrorRow& r : rows) {
    write_error_fields(out, r);
    out << '\n';
  }
}

void write_rate_csv(std::ostream& out, const std::vector<RateRow>& rows) {
  out << kErrorHeader << ",rate_linf,rate_l2,rate_h1\n";
  for (const RateRow& r : rows) {
    write_error_fields(out, r.row);
    if (r.rates)
      out << ',' << format_float(r.rates->linf) << ',' << format_float(r.rates->l2) << ','
          << format_float(r.rates->h1);
    else
      out << ",,,";
    out << '\n';
  }
}

void write_stability_csv(std::ostream& out, const StabilityReport& report) {
  out << "k,t,energy_norm,l2_norm\n";
  for (const StabilityRow& r : report.rows)
    out << r.k << ',' << format_float(r.t) << ',' << format_float(r.energy_norm) << ','
        << format_float(r.l2_norm) << '\n';
}

void write_sparsity_csv(std::ostream& out, const std::vector<SparsityRow>& rows) {
  out << "N,order,bandwidth,nnz,density\n";
  for (const SparsityRow& r : rows)
    out << r.degree << ',' << r.order << ',' << r.bandwidth << ',' << r.nonzeros << ','
        << format_float(r.density) << '\n';
}

void write_pattern(std::ostream& out,
                   const std::vector<std::pair<std::size_t, std::size_t>>& pattern) {
  out << "row,col\n";
  for (const auto& [i, j] : pattern) out << i << ',' << j << '\n';
}

void write_matrices(std::ostream& out, int degree) {
  const auto block = [&](const char* name, const RationalMatrix& m) {
    out << "# " << name << " N=" << degree << '\n' << m.to_csv();
  };
  block("C", dual_coefficient_matrix(degree));
  block("G", transform_G(degree));
  block("P", dual_derivative_matrix(degree));
  block("Q", modal_derivative_matrix(degree));
  block("B", mass_matrix(degree));
  block("A", stiffness_matrix(degree));
}

}  // namespace bdpg
