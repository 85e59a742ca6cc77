#pragma once

// Cross-method comparison, ODE residual sweeps, spectra and the independent
// Bessel oracles.

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "laplaceqm/contour_eval.hpp"
#include "laplaceqm/potential_catalog.hpp"

namespace laplaceqm {

inline constexpr double kOnsetThreshold = 1e-3;
inline constexpr int kOnsetRun = 3;

struct MethodSeries {
  Method method = Method::RealIntegral;
  std::vector<cplx> values;
  std::vector<bool> ok;              // false where evaluation threw
  std::vector<bool> precision_loss;  // route's own rounding flag
  std::vector<std::string> errors;   // message per failed point (empty if ok)
};

struct ComparisonReport {
  ProblemSpec problem;
  double energy = 0.0;
  std::vector<double> grid;
  std::vector<MethodSeries> methods;  // methods[0] is the RealIntegral reference

  // Pointwise |m - r| / |r| against the reference (NaN where |r| <= 1e-12 or a
  // point failed); index matches methods, entry 0 is all zeros.
  std::vector<std::vector<double>> relative_deviation;
  // |m/m(xi*) - r/r(xi*)|, xi* = grid point of max |r|: each curve normalized
  // at the reference's peak, as in a plot normalized to the 1D integral.
  std::vector<std::vector<double>> normalized_deviation;
  std::vector<std::optional<double>> failure_onset;

  // Max pointwise relative deviation of method i vs j over grid[lo, hi].
  double max_relative_deviation(std::size_t i, std::size_t j, double xi_lo, double xi_hi) const;
};

// Reference is the real-segment integral; Circle uses cfg; Series default tol.
ComparisonReport cross_method_report(const ProblemSpec& spec, double E,
                                     const std::vector<double>& grid, const ContourConfig& cfg = {});

// Smallest grid xi that starts a run of kOnsetRun deviations above threshold
// (non-finite deviations count as above).
std::optional<double> failure_onset(const std::vector<double>& grid, const std::vector<double>& deviation,
                                    double threshold = kOnsetThreshold, int run = kOnsetRun);

struct ResidualReport {
  double max_relative = 0.0;
  double worst_xi = 0.0;
};

// Centered differences with step h at every grid point; the residual of the
// canonical equation is divided by max(|Phi|, |Phi'|, |Phi''|) (0/0 -> 0).
ResidualReport ode_residual_sweep(const CanonicalODE& ode, const PhiFunction& phi,
                                  const std::vector<double>& grid, double h);
// Phi'' - 2 xi Phi' + 2 n Phi for the Hermite route.
ResidualReport hermite_residual_sweep(int n, const PhiFunction& phi, const std::vector<double>& grid,
                                      double h);
ResidualReport ode_residual_sweep(const ProblemSpec& spec, const State& state, Method method,
                                  const std::vector<double>& grid, double h,
                                  const ContourConfig& cfg = {});

std::vector<std::pair<QuantumNumbers, double>> spectrum_table(const ProblemSpec& spec, int n_max);

// Independent ascending series (no shared code with special_fn).
double bessel_j_series(int m, double x);
double spherical_bessel_j_series(int l, double x);

// max_i |r_i - r_0| / |r_0| for r_i = a_i / b_i: how far a is from being a
// constant multiple of b.
double ratio_spread(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace laplaceqm
