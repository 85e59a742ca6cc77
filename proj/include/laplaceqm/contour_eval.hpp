#pragma once

// Evaluation routes for Phi(xi):
//   - bound states: residue at z = -lambda (Leibniz expansion, no numerics)
//   - continuum: real-segment integral, circle |z| = R with tracked winding
//     angles, and the power series from the residue at infinity
//   - Morse continuum: ray from -lambda, i.e. Gamma(a) U(a, b, xi)
//
// The continuum quadratures precompute their nodes once per (ode, config) and
// then cost one exp-sum per xi (see simd/exp_sum.hpp).

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "laplaceqm/core_laplace.hpp"
#include "laplaceqm/potential_catalog.hpp"
#include "laplaceqm/simd/exp_sum.hpp"

namespace laplaceqm {

enum class ContourKind { ClosedAroundMinusLambda, CircleRadiusR, RealSegment, RayFromMinusLambda };
enum class QuadratureRule { Trapezoid, GaussComposite };

struct ContourConfig {
  ContourKind kind = ContourKind::CircleRadiusR;
  double radius = 1.1;
  int steps = 100000;
  QuadratureRule quadrature = QuadratureRule::Trapezoid;
  double tol = 1e-13;  // series / adaptive quadrature tolerance
};

// Throws InvalidConfig when the circle parameters are out of range.
void validate(const ContourConfig& cfg);

struct Evaluation {
  cplx value;
  bool precision_loss = false;
};

// ---- bound states ---------------------------------------------------------

cplx bound_phi_residue(const CanonicalODE& ode, int N, double xi);

// 2 pi i e^{i pi (beta-1)} (2 lambda)^{beta-1} e^{-lambda xi} L_N^{(beta-1)}(2 lambda xi)
cplx bound_phi_closed_form(const CanonicalODE& ode, int N, double xi);

double hermite_phi_residue(int n, double xi);

// ---- circle phases --------------------------------------------------------

struct PhaseState {
  double theta = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

// Winding angles of the arrows from the branch points (rotated frame, points
// at -1 and +1) to the point R e^{i theta}: phi1 in [0, 2pi), phi2 in [pi, 3pi).
double phase_phi1(double theta, double R);
double phase_phi2(double theta, double R);
PhaseState phase_state(double theta, double R);

// ---- continuum routes -----------------------------------------------------

// True when alpha+ and alpha- are integers: the integrand is then entire and
// both the closed dog-bone and the residue at infinity vanish.
bool single_valued(const Exponents& exps);

// Constant in front of e^{-i xi} int_0^1 e^{2 i xi x} (1-x)^{a+-1} x^{a--1} dx:
// i (e^{-pi delta/2} -/+ e^{pi delta/2}) 2^{beta-1}, or i 2^{beta-1} for the
// single-valued case where only the segment from -i to +i is used.
cplx continuum_prefactor(const CanonicalODE& ode, const Exponents& exps);

class RealIntegralRoute {
 public:
  RealIntegralRoute(const CanonicalODE& ode, const Exponents& exps, int gauss_points = 24);
  Evaluation operator()(double xi) const;
  Evaluation operator()(double xi, simd::Kernel k) const;
  const simd::ExpSumNodes& nodes() const { return nodes_; }

 private:
  simd::ExpSumNodes nodes_;
};

class CircleRoute {
 public:
  CircleRoute(const CanonicalODE& ode, const Exponents& exps, const PhaseConvention& conv,
              const ContourConfig& cfg);
  Evaluation operator()(double xi) const;
  Evaluation operator()(double xi, simd::Kernel k) const;
  const simd::ExpSumNodes& nodes() const { return nodes_; }

 private:
  simd::ExpSumNodes nodes_;
  double reach_ = 0.0;  // max Re z on the path
};

class SeriesRoute {
 public:
  SeriesRoute(const CanonicalODE& ode, const Exponents& exps, double tol = 1e-17);
  Evaluation operator()(double xi) const;

 private:
  Exponents exps_;
  cplx beta_;
  cplx constant_;
  double tol_;
};

class MorseRayRoute {
 public:
  MorseRayRoute(const CanonicalODE& ode, const Exponents& exps, double tol = 1e-13);
  Evaluation operator()(double xi) const;

 private:
  Exponents exps_;
  cplx beta_;
  cplx constant_;
  double tol_;
};

// One-shot wrappers (each builds its route; use the classes for sweeps).
Evaluation continuum_phi_real_integral(const CanonicalODE& ode, const Exponents& exps, double xi,
                                       double tol = 1e-13);
Evaluation continuum_phi_circle(const CanonicalODE& ode, const Exponents& exps,
                                const PhaseConvention& conv, double xi, const ContourConfig& cfg);
Evaluation continuum_phi_series(const CanonicalODE& ode, const Exponents& exps, double xi,
                                double tol = 1e-17);
Evaluation morse_continuum_phi(const CanonicalODE& ode, const Exponents& exps, double xi,
                               double tol = 1e-13);

// ---- dispatch -------------------------------------------------------------

using PhiEvaluator = std::function<Evaluation(double xi)>;

bool method_compatible(Kind kind, Method method);

// Precomputes whatever the method needs; MethodRegimeMismatch on a bad pairing.
PhiEvaluator make_phi_evaluator(const ProblemSpec& spec, const State& state, Method method,
                                const ContourConfig& cfg = {});

WavefunctionGrid sample_wavefunction(const ProblemSpec& spec, const State& state,
                                     const std::vector<double>& coordinates, Method method,
                                     const ContourConfig& cfg = {});

}  // namespace laplaceqm
