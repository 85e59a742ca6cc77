#pragma once

// Raw entry points of the exp-sum kernels. Plain pointers only: the AVX2
// translation unit is built with -mavx2 -mfma and must not instantiate any
// inline library code that the linker could pick for the rest of the program.

#include <cstddef>

namespace laplaceqm::simd::detail {

// Both kernels sum in blocks of this many nodes and then add the block sums,
// which keeps the rounding growth of 10^5-term sums near sqrt(n) eps.
inline constexpr std::size_t kSumBlock = 256;

// out[0] = Re S, out[1] = Im S, out[2] = sum |terms|
void exp_sum_scalar(const double* re_z, const double* im_z, const double* re_g,
                    const double* im_g, const double* abs_g, std::size_t n, double xi,
                    double* out);

#if defined(LAPLACEQM_HAVE_AVX2)
void exp_sum_avx2(const double* re_z, const double* im_z, const double* re_g,
                  const double* im_g, const double* abs_g, std::size_t n, double xi,
                  double* out);
#endif

}  // namespace laplaceqm::simd::detail
