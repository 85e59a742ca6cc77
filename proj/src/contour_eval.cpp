#include "laplaceqm/contour_eval.hpp"

#include <cmath>
#include <limits>

#include "laplaceqm/error.hpp"
#include "laplaceqm/quadrature.hpp"
#include "laplaceqm/special_fn.hpp"

namespace laplaceqm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Relative rounding-error estimate above which a value is flagged.
constexpr double kLossThreshold = 1e-3;
// e^{700} is within a factor e^9 of the largest double.
constexpr double kOverflowExponent = 700.0;

const cplx I(0.0, 1.0);

double wrap_2pi(double a) { return a < 0.0 ? a + kTwoPi : a; }

cplx gamma_ratio(const Exponents& ex, cplx beta) {
  return gamma_complex(ex.alpha_plus) * gamma_complex(ex.alpha_minus) / gamma_complex(beta);
}

void require_continuum(const CanonicalODE& ode, const char* who) {
  if (ode.regime != Regime::Continuum)
    throw Error(ErrorCode::MethodRegimeMismatch, std::string(who) + " needs a non-Morse continuum ODE");
}

}  // namespace

void validate(const ContourConfig& cfg) {
  if (cfg.kind == ContourKind::CircleRadiusR) {
    if (!(cfg.radius > 1.0)) throw Error(ErrorCode::InvalidConfig, "circle radius must exceed 1");
    if (cfg.steps < 1000) throw Error(ErrorCode::InvalidConfig, "circle needs at least 1000 steps");
  }
  if (!(cfg.tol > 0.0)) throw Error(ErrorCode::InvalidConfig, "tolerance must be positive");
}

// ---- bound states ---------------------------------------------------------

cplx bound_phi_residue(const CanonicalODE& ode, int N, double xi) {
  const Exponents ex = exponents(ode);
  if (N < 0 || std::abs(ex.alpha_minus + static_cast<double>(N)) > 1e-9)
    throw Error(ErrorCode::NonIntegerOrder, "-alpha_- is not the nonnegative integer N");

  // (1/N!) d^N/dz^N [e^{xi z} (z-lambda)^a] at z = -lambda, a = alpha+ - 1:
  //   sum_k binom(N,k)/N! xi^{N-k} e^{-lambda xi} a(a-1)...(a-k+1) (-2 lambda)^{a-k}
  // with (-2 lambda)^p = (2 lambda)^p e^{i pi p}, since arg(z - lambda) = pi there.
  const cplx a = ex.alpha_plus - 1.0;
  const cplx log_m2l = std::log(2.0 * ode.lambda) + I * kPi;
  cplx sum(0.0, 0.0);
  cplx falling(1.0, 0.0);
  double inv_kfact = 1.0;
  for (int k = 0; k <= N; ++k) {
    if (k > 0) {
      falling *= a - static_cast<double>(k - 1);
      inv_kfact /= k;
    }
    double inv_nk_fact = 1.0;  // 1/(N-k)!
    for (int j = 2; j <= N - k; ++j) inv_nk_fact /= j;
    const cplx power = std::exp((a - static_cast<double>(k)) * log_m2l);
    sum += inv_kfact * inv_nk_fact * std::pow(xi, N - k) * falling * power;
  }
  return kTwoPi * I * std::exp(-ode.lambda * xi) * sum;
}

cplx bound_phi_closed_form(const CanonicalODE& ode, int N, double xi) {
  const cplx bm1 = ode.beta - 1.0;
  const cplx constant = kTwoPi * I * std::exp(I * kPi * bm1) * std::exp(bm1 * std::log(2.0 * ode.lambda));
  const double lam = ode.lambda.real();
  return constant * std::exp(-lam * xi) * laguerre(N, bm1.real(), 2.0 * lam * xi);
}

double hermite_phi_residue(int n, double xi) { return hermite(n, xi); }

// ---- phases ---------------------------------------------------------------

// sin(phi1) = R sin(theta)/|R e^{i theta} + 1| and cos(phi1) = (R cos(theta) + 1)/|...|,
// so atan2 of the pair is the arcsine value already placed in its quadrant.
double phase_phi1(double theta, double R) {
  return wrap_2pi(std::atan2(R * std::sin(theta), R * std::cos(theta) + 1.0));
}

// The arrow from +1 starts at angle pi (the cut runs between the branch
// points), hence the offset; sin(phi2) = -R sin(theta)/|R e^{i theta} - 1|.
double phase_phi2(double theta, double R) {
  return kPi + wrap_2pi(std::atan2(R * std::sin(theta), R * std::cos(theta) - 1.0));
}

PhaseState phase_state(double theta, double R) {
  return {theta, phase_phi1(theta, R), phase_phi2(theta, R)};
}

// ---- continuum ------------------------------------------------------------

bool single_valued(const Exponents& exps) {
  auto integral = [](cplx a) { return std::abs(a.imag()) < 1e-12 && is_near_integer(a.real(), 1e-12); };
  return integral(exps.alpha_plus) && integral(exps.alpha_minus);
}

cplx continuum_prefactor(const CanonicalODE& ode, const Exponents& exps) {
  require_continuum(ode, "real-segment integral");
  const cplx two_pow = std::exp((ode.beta - 1.0) * std::log(2.0));
  if (single_valued(exps)) return I * two_pow;
  const double re = exps.alpha_plus.real();
  double sign;
  if (is_near_integer(re, 1e-12))
    sign = -1.0;
  else if (is_near_integer(re - 0.5, 1e-12))
    sign = 1.0;
  else
    throw Error(ErrorCode::DomainError, "Re(alpha+) must be an integer or half-integer");
  const double h = 0.5 * kPi * ode.delta;
  return I * (std::exp(-h) + sign * std::exp(h)) * two_pow;
}

namespace {

// One half of [0, 1], seen from its singular endpoint: t = distance to the
// endpoint in (0, 1/2], t^{e_s} the singular factor and other^{e_o} the regular
// one. For Re(e_s) < 0 the substitution t = u^p, p = 1/(Re e_s + 1) leaves a
// bounded integrand. Panels are graded geometrically towards u = 0 (50 halvings)
// and capped in length so e^{2i xi x} stays resolved up to xi ~ 50.
void add_real_half(simd::ExpSumNodes& nodes, cplx C, cplx e_s, cplx e_o, bool left, int gp) {
  const double a = e_s.real() + 1.0;
  const double p = a < 1.0 ? 1.0 / a : 1.0;
  const double U = std::pow(0.5, 1.0 / p);
  const double max_len = U / 32.0;
  const cplx u_exp = p * (e_s + 1.0) - 1.0;
  const GaussRule& rule = gauss_legendre(gp);

  auto panel = [&](double lo, double hi) {
    const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_len)));
    const double step = (hi - lo) / pieces;
    for (int j = 0; j < pieces; ++j) {
      const double plo = lo + j * step;
      const double half = 0.5 * step, mid = plo + half;
      for (int i = 0; i < gp; ++i) {
        const double u = mid + half * rule.nodes[i];
        const double t = p == 1.0 ? u : std::pow(u, p);
        const double other = 1.0 - t;
        const double x = left ? t : other;
        const cplx w = half * rule.weights[i] * p * real_pow(u, u_exp) * real_pow(other, e_o);
        nodes.push(I * (2.0 * x - 1.0), C * w);
      }
    }
  };

  double hi = U;
  for (int level = 0; level < 50; ++level) {
    const double lo = 0.5 * hi;
    panel(lo, hi);
    hi = lo;
  }
  panel(0.0, hi);
}

}  // namespace

RealIntegralRoute::RealIntegralRoute(const CanonicalODE& ode, const Exponents& exps, int gauss_points) {
  const cplx C = continuum_prefactor(ode, exps);
  if (!(exps.alpha_plus.real() > 0.0 && exps.alpha_minus.real() > 0.0))
    throw Error(ErrorCode::DomainError, "real-segment integral needs Re(alpha+-) > 0");
  // x^{alpha- - 1} is singular at x = 0, (1-x)^{alpha+ - 1} at x = 1
  add_real_half(nodes_, C, exps.alpha_minus - 1.0, exps.alpha_plus - 1.0, true, gauss_points);
  add_real_half(nodes_, C, exps.alpha_plus - 1.0, exps.alpha_minus - 1.0, false, gauss_points);
}

Evaluation RealIntegralRoute::operator()(double xi) const { return (*this)(xi, simd::active_kernel()); }

Evaluation RealIntegralRoute::operator()(double xi, simd::Kernel k) const {
  const simd::ExpSumResult r = simd::exp_sum(nodes_, xi, k);
  return {r.sum, kEps * r.abs_sum > kLossThreshold * std::abs(r.sum)};
}

CircleRoute::CircleRoute(const CanonicalODE& ode, const Exponents& exps, const PhaseConvention& conv,
                         const ContourConfig& cfg) {
  require_continuum(ode, "circle contour");
  const double R = cfg.radius;
  if (single_valued(exps)) {
    // Entire integrand: integrate from -i to +i along the arc of the circle of
    // radius R (>= 1) through both points, bulging into Re z > 0.
    if (!(R >= 1.0)) throw Error(ErrorCode::InvalidConfig, "arc radius must be at least 1");
    const double c = -std::sqrt(R * R - 1.0);
    const double tm = std::atan2(1.0, -c);
    const GaussRule& rule = gauss_legendre(24);
    const int panels = std::max(8, cfg.steps / 24);
    const double step = 2.0 * tm / panels;
    nodes_.reserve(static_cast<std::size_t>(panels) * 24);
    for (int j = 0; j < panels; ++j) {
      const double mid = -tm + (j + 0.5) * step;
      for (int i = 0; i < 24; ++i) {
        const double th = mid + 0.5 * step * rule.nodes[i];
        const cplx e = std::polar(R, th);
        const cplx z = c + e;
        const Winding w{std::arg(z + ode.lambda), std::arg(z - ode.lambda)};
        const cplx f = integrand(ode, exps, PhaseConvention{1.0, CutLayout::CentralSegment}, 0.0, z, w);
        nodes_.push(z, 0.5 * step * rule.weights[i] * I * e * f);
      }
    }
    reach_ = c + R;
    return;
  }

  validate(cfg);
  const int n = cfg.steps;
  const double dth = kTwoPi / n;
  nodes_.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double th = k * dth;
    // z = R e^{i(theta + pi/2)}; phases are measured in the frame rotated by -pi/2
    const cplx z(-R * std::sin(th), R * std::cos(th));
    const PhaseState ps = phase_state(th, R);
    const cplx f = integrand(ode, exps, conv, 0.0, z, Winding{ps.phi1, ps.phi2});
    nodes_.push(z, dth * I * z * f);
  }
  reach_ = R;
}

Evaluation CircleRoute::operator()(double xi) const { return (*this)(xi, simd::active_kernel()); }

Evaluation CircleRoute::operator()(double xi, simd::Kernel k) const {
  const simd::ExpSumResult r = simd::exp_sum(nodes_, xi, k);
  const bool loss = reach_ * xi > kOverflowExponent || kEps * r.abs_sum > kLossThreshold * std::abs(r.sum);
  return {r.sum, loss};
}

SeriesRoute::SeriesRoute(const CanonicalODE& ode, const Exponents& exps, double tol)
    : exps_(exps), beta_(ode.beta), tol_(tol) {
  require_continuum(ode, "power series");
  const cplx b = exps.alpha_plus + exps.alpha_minus;
  if (!(std::abs(b.imag()) < 1e-12 && is_near_integer(b.real(), 1e-12) && b.real() > 0.5))
    throw Error(ErrorCode::DomainError, "residue at infinity needs alpha+ + alpha- a positive integer");
  const cplx g = gamma_ratio(exps, ode.beta);
  const cplx two_beta = std::exp(ode.beta * std::log(2.0));
  if (single_valued(exps)) {
    constant_ = I * 0.5 * two_beta * g;
  } else {
    // -2 pi i times the residue at infinity
    const cplx residue_const = std::exp(-0.5 * kPi * ode.delta) *
                               (std::exp(2.0 * kPi * I * exps.alpha_plus) - 1.0) / (4.0 * kPi) * two_beta * g;
    constant_ = -kTwoPi * I * residue_const;
  }
}

Evaluation SeriesRoute::operator()(double xi) const {
  const SeriesResult s = kummer_m_series(exps_.alpha_minus, beta_, cplx(0.0, 2.0 * xi), tol_);
  const bool loss = s.roundoff > kLossThreshold * std::abs(s.value);
  return {constant_ * std::exp(cplx(0.0, -xi)) * s.value, loss};
}

MorseRayRoute::MorseRayRoute(const CanonicalODE& ode, const Exponents& exps, double tol)
    : exps_(exps), beta_(ode.beta), tol_(tol) {
  if (ode.regime != Regime::MorseContinuum)
    throw Error(ErrorCode::MethodRegimeMismatch, "ray contour is for the Morse continuum");
  // (-1)^{beta-1} := e^{i pi (beta-1)}
  constant_ = std::exp(I * kPi * (ode.beta - 1.0)) * gamma_complex(exps.alpha_minus);
}

Evaluation MorseRayRoute::operator()(double xi) const {
  if (!(xi > 0.0)) throw Error(ErrorCode::DomainError, "Morse ray route needs xi > 0");
  return {constant_ * std::exp(-0.5 * xi) * tricomi_u(exps_.alpha_minus, beta_, xi, tol_), false};
}

Evaluation continuum_phi_real_integral(const CanonicalODE& ode, const Exponents& exps, double xi,
                                       double /*tol*/) {
  return RealIntegralRoute(ode, exps)(xi);
}

Evaluation continuum_phi_circle(const CanonicalODE& ode, const Exponents& exps,
                                const PhaseConvention& conv, double xi, const ContourConfig& cfg) {
  return CircleRoute(ode, exps, conv, cfg)(xi);
}

Evaluation continuum_phi_series(const CanonicalODE& ode, const Exponents& exps, double xi, double tol) {
  return SeriesRoute(ode, exps, tol)(xi);
}

Evaluation morse_continuum_phi(const CanonicalODE& ode, const Exponents& exps, double xi, double tol) {
  return MorseRayRoute(ode, exps, tol)(xi);
}

// ---- dispatch -------------------------------------------------------------

bool method_compatible(Kind kind, Method method) {
  switch (method) {
    case Method::Residue: return is_bound(kind);
    case Method::RealIntegral:
    case Method::Circle:
    case Method::Series: return is_continuum(kind) && kind != Kind::MorseCont;
    case Method::MorseRay: return kind == Kind::MorseCont;
    case Method::ClosedForm: return true;
  }
  return false;
}

PhiEvaluator make_phi_evaluator(const ProblemSpec& spec, const State& state, Method method,
                                const ContourConfig& cfg) {
  if (!method_compatible(spec.kind, method))
    throw Error(ErrorCode::MethodRegimeMismatch, std::string("method ") + method_name(method) +
                                                     " does not apply to " + kind_name(spec.kind));
  const double E = state_energy(spec, state);

  if (method == Method::ClosedForm)
    return [spec, state](double xi) { return Evaluation{closed_form_phi(spec, state, xi), false}; };

  if (spec.kind == Kind::Sho1DHermite) {
    const int n = std::get<QuantumNumbers>(state).n;
    return [n](double xi) { return Evaluation{hermite_phi_residue(n, xi), false}; };
  }

  const CanonicalODE ode = canonicalize(spec, E);
  const Exponents ex = exponents(ode);
  switch (method) {
    case Method::Residue: {
      const int N = std::get<QuantumNumbers>(state).N;
      return [ode, N](double xi) { return Evaluation{bound_phi_residue(ode, N, xi), false}; };
    }
    case Method::RealIntegral: {
      auto route = std::make_shared<const RealIntegralRoute>(ode, ex);
      return [route](double xi) { return (*route)(xi); };
    }
    case Method::Circle: {
      auto route = std::make_shared<const CircleRoute>(ode, ex, dogbone_convention(ode), cfg);
      return [route](double xi) { return (*route)(xi); };
    }
    case Method::Series: {
      auto route = std::make_shared<const SeriesRoute>(ode, ex);
      return [route](double xi) { return (*route)(xi); };
    }
    case Method::MorseRay: {
      auto route = std::make_shared<const MorseRayRoute>(ode, ex, cfg.tol);
      return [route](double xi) { return (*route)(xi); };
    }
    default: break;
  }
  throw Error(ErrorCode::MethodRegimeMismatch, "unsupported method");
}

WavefunctionGrid sample_wavefunction(const ProblemSpec& spec, const State& state,
                                     const std::vector<double>& coordinates, Method method,
                                     const ContourConfig& cfg) {
  const PhiEvaluator phi = make_phi_evaluator(spec, state, method, cfg);
  return assemble_wavefunction(
      spec, state, coordinates, [&](double xi) { return phi(xi).value; }, method);
}

}  // namespace laplaceqm
