#include "laplaceqm/special_fn.hpp"

#include <cmath>
#include <limits>

#include "laplaceqm/error.hpp"
#include "laplaceqm/quadrature.hpp"

namespace laplaceqm {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// Lanczos, g = 7, n = 9
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx log_gamma_right(cplx z) {
  // valid for Re z >= 1/2
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

double PolynomialCoeffs::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PolynomialCoeffs laguerre_coefficients(int N, double b) {
  PolynomialCoeffs p;
  p.degree = N;
  p.coefficients.resize(N + 1);
  double inv_fact = 1.0;
  for (int k = 0; k <= N; ++k) {
    if (k > 0) inv_fact /= k;
    double binom = 1.0;
    for (int j = 1; j <= N - k; ++j) binom *= (b + k + j) / j;
    p.coefficients[k] = ((k % 2) ? -1.0 : 1.0) * binom * inv_fact;
  }
  return p;
}

double laguerre(int N, double b, double x) { return laguerre_coefficients(N, b)(x); }

PolynomialCoeffs hermite_coefficients(int n) {
  PolynomialCoeffs p;
  p.degree = n;
  p.coefficients.assign(n + 1, 0.0);
  double c = std::ldexp(1.0, n);
  p.coefficients[n] = c;
  for (int m = 1; 2 * m <= n; ++m) {
    // c_{n-2m} = -c_{n-2m+2} (n-2m+2)(n-2m+1) / (4m)
    c = -c * (n - 2 * m + 2) * (n - 2 * m + 1) / (4.0 * m);
    p.coefficients[n - 2 * m] = c;
  }
  return p;
}

double hermite(int n, double x) { return hermite_coefficients(n)(x); }

double laguerre_hermite_identity_residual(int n, double x) {
  double scale = 1.0;  // (-4)^n n!
  for (int k = 1; k <= n; ++k) scale *= -4.0 * k;
  const double even = hermite(2 * n, x);
  const double odd = hermite(2 * n + 1, x);
  const double r_even = std::abs(even - scale * laguerre(n, -0.5, x * x)) / std::max(1.0, std::abs(even));
  const double r_odd =
      std::abs(odd - 2.0 * scale * x * laguerre(n, 0.5, x * x)) / std::max(1.0, std::abs(odd));
  return std::max(r_even, r_odd);
}

SeriesResult kummer_m_series(cplx a, cplx b, cplx z, double tol) {
  if (is_nonpositive_integer(b))
    throw Error(ErrorCode::InvalidB, "M(a, b, z) undefined for b a nonpositive integer");
  // Carried in extended precision: for imaginary z the terms grow like
  // e^{|z|} before the alternation brings the sum back down, and every bit
  // of headroom moves the onset of garbage further out.
  using lcplx = std::complex<long double>;
  const lcplx la(a.real(), a.imag()), lb(b.real(), b.imag()), lz(z.real(), z.imag());
  lcplx sum(1.0L, 0.0L), term(1.0L, 0.0L);
  long double max_term = 1.0L;
  int small = 0;
  for (int j = 0; j < 1000; ++j) {
    const long double jj = j;
    term *= (la + jj) / (lb + jj) * lz / (jj + 1.0L);
    sum += term;
    const long double at = std::abs(term);
    max_term = std::max(max_term, at);
    if (at <= tol * std::abs(sum)) {
      if (++small == 3) {
        const cplx v(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
        const double mt = static_cast<double>(max_term);
        return {v, mt, j + 2, static_cast<double>(std::numeric_limits<long double>::epsilon() * max_term)};
      }
    } else {
      small = 0;
    }
  }
  throw Error(ErrorCode::SeriesDivergence, "M series did not converge in 1000 terms");
}

cplx kummer_m(cplx a, cplx b, cplx z, double tol) { return kummer_m_series(a, b, z, tol).value; }

cplx gamma_complex(cplx z) {
  if (is_nonpositive_integer(z)) throw Error(ErrorCode::PoleError, "Gamma has a pole here");
  if (z.real() < 0.5) {
    // reflection
    return kPi / (std::sin(kPi * z) * std::exp(log_gamma_right(1.0 - z)));
  }
  return std::exp(log_gamma_right(z));
}

namespace {

// Integral form, Re(a) > 0. With t = s/(1-s),
//   int_0^1 e^{-x s/(1-s)} s^{a-1} (1-s)^{-b} ds,
// and for Re(a) < 1 the extra substitution s = u^{1/Re a} removes the
// s^{Re a - 1} singularity at the origin.
cplx tricomi_u_integral(cplx a, cplx b, double x, double rel_tol) {
  const double ra = a.real();
  const double p = ra < 1.0 ? 1.0 / ra : 1.0;
  const double logp = std::log(p);
  auto f = [&](double u) -> cplx {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double lu = std::log(u);
    const double ls = p * lu;                 // ln s
    const double one_minus_s = -std::expm1(ls);
    if (one_minus_s <= 0.0) return 0.0;
    const double s = std::exp(ls);
    const double decay = -x * s / one_minus_s;
    if (decay < -745.0) return 0.0;
    const cplx lg = decay + (a - 1.0) * ls - b * std::log(one_minus_s) + logp + (p - 1.0) * lu;
    return std::exp(lg);
  };
  const AdaptiveResult r = integrate_adaptive(f, 0.0, 1.0, rel_tol, 0.0, 20000, 16);
  return r.value / gamma_complex(a);
}

}  // namespace

cplx tricomi_u(cplx a, cplx b, double x, double rel_tol) {
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "U(a, b, x) needs x > 0");
  if (a.real() > 0.0) return tricomi_u_integral(a, b, x, rel_tol);

  // U(a) = -(b - 2a - 2 - x) U(a+1) - (a+1)(a-b+2) U(a+2), stepped down
  // from the first pair with positive real part.
  const int k = static_cast<int>(std::floor(-a.real())) + 1;
  cplx a_top = a + static_cast<double>(k);
  cplx u1 = tricomi_u_integral(a_top, b, x, rel_tol);          // U(a+k)
  cplx u2 = tricomi_u_integral(a_top + 1.0, b, x, rel_tol);    // U(a+k+1)
  for (int j = k - 1; j >= 0; --j) {
    const cplx aj = a + static_cast<double>(j);
    const cplx u0 = -(b - 2.0 * aj - 2.0 - x) * u1 - (aj + 1.0) * (aj - b + 2.0) * u2;
    u2 = u1;
    u1 = u0;
  }
  return u1;
}

cplx tricomi_u_connection(cplx a, cplx b, double x) {
  const cplx t1 = gamma_complex(1.0 - b) / gamma_complex(a - b + 1.0) * kummer_m(a, b, x);
  const cplx t2 = gamma_complex(b - 1.0) / gamma_complex(a) * std::pow(cplx(x, 0.0), 1.0 - b) *
                  kummer_m(a - b + 1.0, 2.0 - b, x);
  return t1 + t2;
}

}  // namespace laplaceqm
