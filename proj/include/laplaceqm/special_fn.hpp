#pragma once

#include <complex>
#include <vector>

namespace laplaceqm {

using cplx = std::complex<double>;

// Real polynomial in ascending-degree coefficient order.
struct PolynomialCoeffs {
  std::vector<double> coefficients;
  int degree = 0;

  double operator()(double x) const;  // Horner
};

// L_N^{(b)}: expanded Rodrigues formula,
//   c_k = (-1)^k binom(N+b, N-k) / k!
// which stays well defined for any real b (b <= -1 included).
PolynomialCoeffs laguerre_coefficients(int N, double b);
double laguerre(int N, double b, double x);

// Physicist's H_n. The coefficients (-1)^m n! / (m! (n-2m)!) 2^{n-2m} are
// integers and exact in double up to n = 40 or so.
PolynomialCoeffs hermite_coefficients(int n);
double hermite(int n, double x);

// Worst of the even and odd identities
//   H_{2n}(x)   = (-4)^n n! L_n^{(-1/2)}(x^2)
//   H_{2n+1}(x) = 2 (-4)^n n! x L_n^{(1/2)}(x^2)
// each measured as |lhs - rhs| / max(1, |lhs|).
double laguerre_hermite_identity_residual(int n, double x);

struct SeriesResult {
  cplx value;
  double max_term = 0.0;  // largest |term| seen; max_term/|value| measures cancellation
  int terms = 0;
  double roundoff = 0.0;  // working epsilon * max_term: absolute size of the rounding noise
};

// Ascending series of M(a, b, z), summed in long double; stops once three
// consecutive terms fall below tol * |sum|.
SeriesResult kummer_m_series(cplx a, cplx b, cplx z, double tol = 1e-17);
cplx kummer_m(cplx a, cplx b, cplx z, double tol = 1e-17);

cplx gamma_complex(cplx z);

// U(a, b, x) for x > 0 from the integral
//   U = 1/Gamma(a) int_0^inf e^{-x t} (1+t)^{b-a-1} t^{a-1} dt,
// mapped to (0, 1) by t = s/(1-s). The integral needs Re(a) > 0; smaller Re(a)
// is reached from U(a+1), U(a+2) through the contiguous relation in a.
cplx tricomi_u(cplx a, cplx b, double x, double rel_tol = 1e-13);

// Same function through the connection formula with two M series (b not an
// integer). Only trustworthy for moderate x because of cancellation.
cplx tricomi_u_connection(cplx a, cplx b, double x);

}  // namespace laplaceqm
