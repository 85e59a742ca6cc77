#pragma once

// Canonical Laplace-form equation
//
//     xi Phi'' + beta Phi' + (delta - lambda^2 xi) Phi = 0
//
// and the pieces of its contour-integral solution Phi(xi) = int e^{xi z} R(z) dz
// with R(z) = (z - lambda)^{alpha+ - 1} (z + lambda)^{alpha- - 1}.

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace laplaceqm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class Regime { Bound, Continuum, MorseContinuum };

// lambda is stored complex for both regimes: continuum problems use lambda = i
// (|lambda| = 1), bound problems and the Morse continuum use a real lambda.
struct CanonicalODE {
  cplx beta;
  double delta = 0.0;
  cplx lambda;
  Regime regime = Regime::Bound;
};

struct Exponents {
  cplx alpha_plus;
  cplx alpha_minus;
};

enum class CutLayout { TwoRays, CentralSegment, SingleRayPositive, SingleRayNegative };

struct PhaseConvention {
  cplx reference_point_phase{1.0, 0.0};
  CutLayout cut_layout = CutLayout::CentralSegment;
};

// Winding angles supplied by the contour code. phi1 belongs to the branch point
// -lambda (exponent alpha- - 1), phi2 to +lambda (exponent alpha+ - 1).
struct Winding {
  double phi1 = 0.0;
  double phi2 = 0.0;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> ascending);

  const std::vector<cplx>& coefficients() const { return c_; }
  // -1 for the zero polynomial
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  cplx operator()(cplx z) const;

 private:
  std::vector<cplx> c_;
};

std::pair<Polynomial, Polynomial> build_pq(const CanonicalODE& ode);

Exponents exponents(const CanonicalODE& ode);

// Dog-bone convention for the continuum: f(0+) = exp(-pi delta / 2).
PhaseConvention dogbone_convention(const CanonicalODE& ode);

cplx integrand(const CanonicalODE& ode, const Exponents& exps,
               const PhaseConvention& conv, double xi, cplx z, Winding w);

// xi Phi'' + beta Phi' + (delta - lambda^2 xi) Phi
cplx ode_residual(const CanonicalODE& ode, double xi, cplx phi, cplx dphi, cplx d2phi);

// x^{e} for x > 0 and complex e, as x^{Re e} e^{i Im e ln x}.
inline cplx real_pow(double x, cplx e) {
  const double lx = std::log(x);
  return std::exp(cplx(e.real() * lx, e.imag() * lx));
}

bool is_near_integer(double x, double tol = 1e-9);

}  // namespace laplaceqm
