#include <cstdlib>
#include <cstring>

#include "kernels.hpp"
#include "laplaceqm/simd/exp_sum.hpp"

namespace laplaceqm::simd {

void ExpSumNodes::reserve(std::size_t n) {
  re_z.reserve(n);
  im_z.reserve(n);
  re_g.reserve(n);
  im_g.reserve(n);
  abs_g.reserve(n);
}

void ExpSumNodes::push(std::complex<double> z, std::complex<double> g) {
  re_z.push_back(z.real());
  im_z.push_back(z.imag());
  re_g.push_back(g.real());
  im_g.push_back(g.imag());
  abs_g.push_back(std::abs(g));
}

const char* kernel_name(Kernel k) {
  return k == Kernel::Avx2 ? "avx2" : "scalar";
}

bool kernel_available(Kernel k) {
  if (k == Kernel::Scalar) return true;
#if defined(LAPLACEQM_HAVE_AVX2)
  static const bool has = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return has;
#else
  return false;
#endif
}

Kernel active_kernel() {
  static const Kernel chosen = [] {
    const char* env = std::getenv("LAPLACEQM_KERNEL");
    if (env && std::strcmp(env, "scalar") == 0) return Kernel::Scalar;
    return kernel_available(Kernel::Avx2) ? Kernel::Avx2 : Kernel::Scalar;
  }();
  return chosen;
}

ExpSumResult exp_sum(const ExpSumNodes& nodes, double xi) {
  return exp_sum(nodes, xi, active_kernel());
}

ExpSumResult exp_sum(const ExpSumNodes& nodes, double xi, Kernel k) {
  double out[3] = {0.0, 0.0, 0.0};
  const std::size_t n = nodes.size();
  if (n == 0) return {};
#if defined(LAPLACEQM_HAVE_AVX2)
  if (k == Kernel::Avx2 && kernel_available(Kernel::Avx2)) {
    detail::exp_sum_avx2(nodes.re_z.data(), nodes.im_z.data(), nodes.re_g.data(),
                         nodes.im_g.data(), nodes.abs_g.data(), n, xi, out);
    return {{out[0], out[1]}, out[2]};
  }
#endif
  (void)k;
  detail::exp_sum_scalar(nodes.re_z.data(), nodes.im_z.data(), nodes.re_g.data(),
                         nodes.im_g.data(), nodes.abs_g.data(), n, xi, out);
  return {{out[0], out[1]}, out[2]};
}

}  // namespace laplaceqm::simd
