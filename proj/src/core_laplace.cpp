#include "laplaceqm/core_laplace.hpp"

#include <cmath>

#include "laplaceqm/error.hpp"

namespace laplaceqm {

Polynomial::Polynomial(std::vector<cplx> ascending) : c_(std::move(ascending)) {
  while (!c_.empty() && c_.back() == cplx(0.0, 0.0)) c_.pop_back();
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc(0.0, 0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<Polynomial, Polynomial> build_pq(const CanonicalODE& ode) {
  Polynomial p({cplx(ode.delta, 0.0), ode.beta});
  Polynomial q({-ode.lambda * ode.lambda, cplx(0.0, 0.0), cplx(1.0, 0.0)});
  return {p, q};
}

Exponents exponents(const CanonicalODE& ode) {
  if (ode.lambda == cplx(0.0, 0.0))
    throw Error(ErrorCode::DegenerateLambda, "lambda = 0: the branch points coincide");
  const cplx bl = ode.beta * ode.lambda;
  const cplx two_l = 2.0 * ode.lambda;
  return {(bl + ode.delta) / two_l, (bl - ode.delta) / two_l};
}

PhaseConvention dogbone_convention(const CanonicalODE& ode) {
  return {cplx(std::exp(-0.5 * kPi * ode.delta), 0.0), CutLayout::CentralSegment};
}

cplx integrand(const CanonicalODE& ode, const Exponents& exps,
               const PhaseConvention& conv, double xi, cplx z, Winding w) {
  const double r2 = std::abs(z - ode.lambda);
  const double r1 = std::abs(z + ode.lambda);
  if (r1 == 0.0 || r2 == 0.0)
    throw Error(ErrorCode::BranchPointEvaluation, "integrand evaluated at a branch point");

  // |z-lambda|^{a+-1} e^{i phi2 (a+-1)} = exp((a+-1)(ln|z-lambda| + i phi2)), and
  // likewise for the other factor; complex exponents only ever meet real logs.
  const cplx e2 = exps.alpha_plus - 1.0;
  const cplx e1 = exps.alpha_minus - 1.0;
  const cplx log_r = e2 * cplx(std::log(r2), w.phi2) + e1 * cplx(std::log(r1), w.phi1);
  return std::exp(xi * z + log_r) * conv.reference_point_phase;
}

cplx ode_residual(const CanonicalODE& ode, double xi, cplx phi, cplx dphi, cplx d2phi) {
  return xi * d2phi + ode.beta * dphi + (ode.delta - ode.lambda * ode.lambda * xi) * phi;
}

bool is_near_integer(double x, double tol) {
  return std::abs(x - std::round(x)) <= tol;
}

}  // namespace laplaceqm
