#include <cmath>

#include "kernels.hpp"

namespace laplaceqm::simd::detail {

void exp_sum_scalar(const double* re_z, const double* im_z, const double* re_g,
                    const double* im_g, const double* abs_g, std::size_t n, double xi,
                    double* out) {
  double sr = 0.0, si = 0.0, sa = 0.0;
  for (std::size_t b0 = 0; b0 < n; b0 += kSumBlock) {
    const std::size_t b1 = b0 + kSumBlock < n ? b0 + kSumBlock : n;
    double br = 0.0, bi = 0.0, ba = 0.0;
    for (std::size_t k = b0; k < b1; ++k) {
      const double e = std::exp(xi * re_z[k]);
      const double y = xi * im_z[k];
      const double c = std::cos(y), s = std::sin(y);
      br += e * (re_g[k] * c - im_g[k] * s);
      bi += e * (re_g[k] * s + im_g[k] * c);
      ba += e * abs_g[k];
    }
    sr += br;
    si += bi;
    sa += ba;
  }
  out[0] = sr;
  out[1] = si;
  out[2] = sa;
}

}  // namespace laplaceqm::simd::detail
