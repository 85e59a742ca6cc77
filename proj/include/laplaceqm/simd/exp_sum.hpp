#pragma once

// S(xi) = sum_k g_k exp(xi z_k) over a fixed node set.
//
// Every continuum quadrature in the library (circle trapezoid, real-segment
// Gauss, the Free3D arc) is this sum with xi-independent nodes z_k and weights
// g_k, so the nodes are built once per problem and the per-xi work is one pass
// of exp/sincos over structure-of-arrays data.

#include <complex>
#include <cstddef>
#include <vector>

namespace laplaceqm::simd {

struct ExpSumNodes {
  std::vector<double> re_z, im_z;
  std::vector<double> re_g, im_g;
  std::vector<double> abs_g;

  void reserve(std::size_t n);
  void push(std::complex<double> z, std::complex<double> g);
  std::size_t size() const { return re_z.size(); }
};

struct ExpSumResult {
  std::complex<double> sum;
  double abs_sum = 0.0;  // sum_k |g_k exp(xi z_k)|, the cancellation yardstick
};

enum class Kernel { Scalar, Avx2 };

const char* kernel_name(Kernel k);
bool kernel_available(Kernel k);

// Best available kernel; LAPLACEQM_KERNEL=scalar forces the reference path.
Kernel active_kernel();

ExpSumResult exp_sum(const ExpSumNodes& nodes, double xi);
ExpSumResult exp_sum(const ExpSumNodes& nodes, double xi, Kernel k);

}  // namespace laplaceqm::simd
