#include "laplaceqm/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "laplaceqm/error.hpp"

namespace laplaceqm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

MethodSeries evaluate_series(Method method, const PhiEvaluator& phi, const std::vector<double>& grid) {
  MethodSeries s;
  s.method = method;
  for (double xi : grid) {
    try {
      const Evaluation e = phi(xi);
      s.values.push_back(e.value);
      s.ok.push_back(std::isfinite(e.value.real()) && std::isfinite(e.value.imag()));
      s.precision_loss.push_back(e.precision_loss);
      s.errors.emplace_back(s.ok.back() ? "" : "non-finite value");
    } catch (const Error& err) {
      s.values.emplace_back(kNaN, kNaN);
      s.ok.push_back(false);
      s.precision_loss.push_back(true);
      s.errors.emplace_back(err.what());
    }
  }
  return s;
}

}  // namespace

double ComparisonReport::max_relative_deviation(std::size_t i, std::size_t j, double lo, double hi) const {
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid[k] < lo || grid[k] > hi) continue;
    const MethodSeries& a = methods[i];
    const MethodSeries& b = methods[j];
    if (!a.ok[k] || !b.ok[k]) return std::numeric_limits<double>::infinity();
    const double den = std::abs(b.values[k]);
    if (den <= 1e-12) continue;
    worst = std::max(worst, std::abs(a.values[k] - b.values[k]) / den);
  }
  return worst;
}

std::optional<double> failure_onset(const std::vector<double>& grid, const std::vector<double>& dev,
                                    double threshold, int run) {
  int streak = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const bool bad = !(dev[k] <= threshold);  // NaN counts as bad
    streak = bad ? streak + 1 : 0;
    if (streak == run) return grid[k + 1 - run];
  }
  return std::nullopt;
}

ComparisonReport cross_method_report(const ProblemSpec& spec, double E, const std::vector<double>& grid,
                                     const ContourConfig& cfg) {
  if (!is_continuum(spec.kind) || spec.kind == Kind::MorseCont)
    throw Error(ErrorCode::MethodRegimeMismatch, "cross-method reports need a non-Morse continuum kind");
  ComparisonReport rep;
  rep.problem = spec;
  rep.energy = E;
  rep.grid = grid;
  const State st = E;
  for (Method m : {Method::RealIntegral, Method::Circle, Method::Series})
    rep.methods.push_back(evaluate_series(m, make_phi_evaluator(spec, st, m, cfg), grid));

  const MethodSeries& ref = rep.methods[0];
  std::size_t peak = 0;
  double peak_abs = -1.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (ref.ok[k] && std::abs(ref.values[k]) > peak_abs) {
      peak_abs = std::abs(ref.values[k]);
      peak = k;
    }
  }

  for (const MethodSeries& m : rep.methods) {
    std::vector<double> rel(grid.size(), kNaN), norm(grid.size(), kNaN);
    const bool anchor_ok = !grid.empty() && m.ok[peak] && ref.ok[peak] && std::abs(m.values[peak]) > 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (!m.ok[k] || !ref.ok[k]) continue;
      const double den = std::abs(ref.values[k]);
      if (den > 1e-12) rel[k] = std::abs(m.values[k] - ref.values[k]) / den;
      if (anchor_ok)
        norm[k] = std::abs(m.values[k] / m.values[peak] - ref.values[k] / ref.values[peak]);
    }
    rep.failure_onset.push_back(failure_onset(grid, norm));
    rep.relative_deviation.push_back(std::move(rel));
    rep.normalized_deviation.push_back(std::move(norm));
  }
  return rep;
}

ResidualReport ode_residual_sweep(const CanonicalODE& ode, const PhiFunction& phi,
                                  const std::vector<double>& grid, double h) {
  ResidualReport rep;
  for (double xi : grid) {
    const cplx fm = phi(xi - h), f0 = phi(xi), fp = phi(xi + h);
    const cplx d1 = (fp - fm) / (2.0 * h);
    const cplx d2 = (fp - 2.0 * f0 + fm) / (h * h);
    const double scale = std::max({std::abs(f0), std::abs(d1), std::abs(d2)});
    const double r = std::abs(ode_residual(ode, xi, f0, d1, d2));
    const double rel = scale > 0.0 ? r / scale : (r > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    if (!(rel <= rep.max_relative)) {
      rep.max_relative = rel;
      rep.worst_xi = xi;
    }
  }
  return rep;
}

ResidualReport hermite_residual_sweep(int n, const PhiFunction& phi, const std::vector<double>& grid,
                                      double h) {
  ResidualReport rep;
  for (double xi : grid) {
    const cplx fm = phi(xi - h), f0 = phi(xi), fp = phi(xi + h);
    const cplx d1 = (fp - fm) / (2.0 * h);
    const cplx d2 = (fp - 2.0 * f0 + fm) / (h * h);
    const double scale = std::max({std::abs(f0), std::abs(d1), std::abs(d2)});
    const double r = std::abs(d2 - 2.0 * xi * d1 + 2.0 * static_cast<double>(n) * f0);
    const double rel = scale > 0.0 ? r / scale : (r > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    if (!(rel <= rep.max_relative)) {
      rep.max_relative = rel;
      rep.worst_xi = xi;
    }
  }
  return rep;
}

ResidualReport ode_residual_sweep(const ProblemSpec& spec, const State& state, Method method,
                                  const std::vector<double>& grid, double h, const ContourConfig& cfg) {
  const PhiEvaluator ev = make_phi_evaluator(spec, state, method, cfg);
  const PhiFunction phi = [&](double xi) { return ev(xi).value; };
  if (spec.kind == Kind::Sho1DHermite) return hermite_residual_sweep(std::get<QuantumNumbers>(state).n, phi, grid, h);
  return ode_residual_sweep(canonicalize(spec, state_energy(spec, state)), phi, grid, h);
}

std::vector<std::pair<QuantumNumbers, double>> spectrum_table(const ProblemSpec& spec, int n_max) {
  if (!is_bound(spec.kind)) throw Error(ErrorCode::NotBoundProblem, "not a bound problem");
  validate(spec);
  int last = n_max;
  if (spec.kind == Kind::Morse) last = std::min(n_max, morse_bound_count(spec) - 1);
  std::vector<std::pair<QuantumNumbers, double>> rows;
  for (int n = first_principal(spec); n <= last; ++n) {
    const QuantumNumbers qn = quantum_numbers(spec, n);
    rows.emplace_back(qn, bound_energy(spec, qn));
  }
  return rows;
}

double bessel_j_series(int m, double x) {
  m = std::abs(m);
  // (x/2)^m / m! sum_k (-x^2/4)^k / (k! (k+m)!) (m!)
  double lead = 1.0;
  for (int j = 1; j <= m; ++j) lead *= 0.5 * x / j;
  const double q = -0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (k + m));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return lead * sum;
}

double spherical_bessel_j_series(int l, double x) {
  // x^l / (2l+1)!! sum_k (-x^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
  double lead = 1.0;
  for (int j = 1; j <= l; ++j) lead *= x / (2.0 * j + 1.0);
  const double q = -0.5 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return lead * sum;
}

double ratio_spread(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() || a.size() != b.size()) throw Error(ErrorCode::DomainError, "ratio_spread: size mismatch");
  const cplx r0 = a[0] / b[0];
  double worst = 0.0;
  for (std::size_t i = 1; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] / b[i] - r0) / std::abs(r0));
  return worst;
}

}  // namespace laplaceqm
