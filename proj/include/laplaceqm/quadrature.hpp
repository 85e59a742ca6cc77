#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace laplaceqm {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// n-point Gauss-Legendre by Newton iteration on P_n.
const GaussRule& gauss_legendre(int n);

struct AdaptiveResult {
  std::complex<double> value;
  double error = 0.0;
  int intervals = 0;
};

// Globally adaptive 15-point Gauss-Kronrod on [a, b] (QAG-style bisection of
// the interval with the largest error estimate). Throws QuadratureFailure
// when the tolerance is out of reach within max_intervals.
AdaptiveResult integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                                  double a, double b, double rel_tol, double abs_tol = 0.0,
                                  int max_intervals = 4000, int initial_pieces = 1);

}  // namespace laplaceqm
