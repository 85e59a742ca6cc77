#include "laplaceqm/potential_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "laplaceqm/error.hpp"
#include "laplaceqm/special_fn.hpp"

namespace laplaceqm {

namespace {

struct KindInfo {
  Kind kind;
  const char* name;
};

constexpr KindInfo kKindNames[] = {
    {Kind::Sho1DEven, "sho1d_even"},         {Kind::Sho1DOdd, "sho1d_odd"},
    {Kind::Sho2D, "sho2d"},                  {Kind::Sho3D, "sho3d"},
    {Kind::Coulomb2D, "coulomb2d"},          {Kind::Coulomb3D, "coulomb3d"},
    {Kind::Morse, "morse"},                  {Kind::Sho1DHermite, "sho1d_hermite"},
    {Kind::Free2D, "free2d"},                {Kind::Free3D, "free3d"},
    {Kind::Coulomb2DCont, "coulomb2d_cont"}, {Kind::Coulomb3DCont, "coulomb3d_cont"},
    {Kind::MorseCont, "morse_cont"},
};

bool is_2d(Kind k) {
  return k == Kind::Sho2D || k == Kind::Coulomb2D || k == Kind::Free2D || k == Kind::Coulomb2DCont;
}

bool is_3d(Kind k) {
  return k == Kind::Sho3D || k == Kind::Coulomb3D || k == Kind::Free3D || k == Kind::Coulomb3DCont;
}

[[noreturn]] void regime_error(const ProblemSpec& spec, const char* what) {
  throw Error(ErrorCode::RegimeMismatch, std::string(kind_name(spec.kind)) + ": " + what);
}

const QuantumNumbers& bound_state(const ProblemSpec& spec, const State& state) {
  if (!is_bound(spec.kind)) throw Error(ErrorCode::NotBoundProblem, "not a bound problem");
  const auto* qn = std::get_if<QuantumNumbers>(&state);
  if (!qn) regime_error(spec, "bound problems take quantum numbers, not an energy");
  return *qn;
}

}  // namespace

const char* kind_name(Kind k) {
  for (const auto& e : kKindNames)
    if (e.kind == k) return e.name;
  return "?";
}

std::optional<Kind> kind_from_name(std::string_view name) {
  for (const auto& e : kKindNames)
    if (name == e.name) return e.kind;
  return std::nullopt;
}

bool is_bound(Kind k) {
  return !(k == Kind::Free2D || k == Kind::Free3D || k == Kind::Coulomb2DCont ||
           k == Kind::Coulomb3DCont || k == Kind::MorseCont);
}

bool is_continuum(Kind k) { return !is_bound(k); }

bool is_radial(Kind k) { return is_2d(k) || is_3d(k); }

void validate(const ProblemSpec& spec) {
  if (!(spec.mu > 0.0)) throw Error(ErrorCode::DomainError, "mu must be positive");
  if (!(spec.omega > 0.0)) throw Error(ErrorCode::DomainError, "omega must be positive");
  if (!(spec.a0 > 0.0)) throw Error(ErrorCode::DomainError, "a0 must be positive");
  if (!(spec.morse_a > 0.0)) throw Error(ErrorCode::DomainError, "morse a must be positive");
  if (!(spec.morse_v0 > 0.0)) throw Error(ErrorCode::DomainError, "morse V0 must be positive");
  if (spec.l < 0) throw Error(ErrorCode::DomainError, "l must be nonnegative");
}

double morse_depth(const ProblemSpec& spec) {
  return std::sqrt(2.0 * spec.mu * spec.morse_v0) / spec.morse_a;
}

int first_principal(const ProblemSpec& spec) {
  switch (spec.kind) {
    case Kind::Coulomb2D: return std::abs(spec.m) + 1;
    case Kind::Coulomb3D: return spec.l + 1;
    default: return 0;
  }
}

int morse_bound_count(const ProblemSpec& spec) {
  // n < d - 1/2  <=>  n <= ceil(d - 1/2) - 1
  const double d = morse_depth(spec);
  if (d <= 0.5) return 0;
  return static_cast<int>(std::ceil(d - 0.5));
}

QuantumNumbers quantum_numbers(const ProblemSpec& spec, int n) {
  if (!is_bound(spec.kind)) throw Error(ErrorCode::NotBoundProblem, "not a bound problem");
  const int n0 = first_principal(spec);
  if (n < n0)
    throw Error(ErrorCode::InvalidQuantumNumbers,
                "n = " + std::to_string(n) + " below the first level " + std::to_string(n0));
  if (spec.kind == Kind::Morse && !(n < morse_bound_count(spec)))
    throw Error(ErrorCode::InvalidQuantumNumbers,
                "Morse well holds no level n = " + std::to_string(n));
  return {n, n - n0};
}

CanonicalODE canonicalize(const ProblemSpec& spec, double E) {
  validate(spec);
  const double mu = spec.mu;
  const int am = std::abs(spec.m);
  const int l = spec.l;
  switch (spec.kind) {
    case Kind::Sho1DEven:
    case Kind::Sho1DOdd:
    case Kind::Sho2D:
    case Kind::Sho3D: {
      if (E < 0.0) regime_error(spec, "oscillator energies are nonnegative");
      double beta = 0.5;
      if (spec.kind == Kind::Sho1DOdd) beta = 1.5;
      if (spec.kind == Kind::Sho2D) beta = am + 1.0;
      if (spec.kind == Kind::Sho3D) beta = l + 1.5;
      return {beta, E / (2.0 * spec.omega), 0.5, Regime::Bound};
    }
    case Kind::Coulomb2D:
    case Kind::Coulomb3D: {
      if (!(E < 0.0)) regime_error(spec, "bound Coulomb states need E < 0");
      const double kappa = std::sqrt(-2.0 * mu * E);
      const double beta = spec.kind == Kind::Coulomb2D ? 2.0 * am + 1.0 : 2.0 * l + 2.0;
      return {beta, 2.0 / (spec.a0 * kappa), 1.0, Regime::Bound};
    }
    case Kind::Morse: {
      if (!(E < 0.0)) regime_error(spec, "bound Morse states need E < 0");
      const double kappa = std::sqrt(-2.0 * mu * E);
      return {2.0 * kappa / spec.morse_a + 1.0, morse_depth(spec), 0.5, Regime::Bound};
    }
    case Kind::Sho1DHermite:
      throw Error(ErrorCode::NoCanonicalForm,
                  "the Hermite route solves Phi'' - 2 xi Phi' + 2n Phi = 0, not the canonical form");
    case Kind::Free2D:
    case Kind::Free3D:
    case Kind::Coulomb2DCont:
    case Kind::Coulomb3DCont: {
      if (!(E > 0.0)) regime_error(spec, "continuum states need E > 0");
      const double k = std::sqrt(2.0 * mu * E);
      const bool two_d = spec.kind == Kind::Free2D || spec.kind == Kind::Coulomb2DCont;
      const double beta = two_d ? 2.0 * am + 1.0 : 2.0 * l + 2.0;
      const bool free = spec.kind == Kind::Free2D || spec.kind == Kind::Free3D;
      return {beta, free ? 0.0 : 2.0 / (spec.a0 * k), cplx(0.0, 1.0), Regime::Continuum};
    }
    case Kind::MorseCont: {
      if (!(E > 0.0)) regime_error(spec, "continuum states need E > 0");
      const double k = std::sqrt(2.0 * mu * E);
      return {cplx(1.0, 2.0 * k / spec.morse_a), morse_depth(spec), 0.5, Regime::MorseContinuum};
    }
  }
  throw Error(ErrorCode::InvalidConfig, "unknown problem kind");
}

double bound_energy(const ProblemSpec& spec, const QuantumNumbers& qn) {
  validate(spec);
  const QuantumNumbers checked = quantum_numbers(spec, qn.n);
  if (checked.N != qn.N)
    throw Error(ErrorCode::InvalidQuantumNumbers, "N inconsistent with n for this problem");
  const double n = qn.n;
  const double w = spec.omega;
  const double mua2 = spec.mu * spec.a0 * spec.a0;
  switch (spec.kind) {
    case Kind::Sho1DEven: return w * (2.0 * n + 0.5);
    case Kind::Sho1DOdd: return w * (2.0 * n + 1.5);
    case Kind::Sho2D: return w * (2.0 * n + std::abs(spec.m) + 1.0);
    case Kind::Sho3D: return w * (2.0 * n + spec.l + 1.5);
    case Kind::Sho1DHermite: return w * (n + 0.5);
    case Kind::Coulomb2D: return -1.0 / (2.0 * mua2 * (n - 0.5) * (n - 0.5));
    case Kind::Coulomb3D: return -1.0 / (2.0 * mua2 * n * n);
    case Kind::Morse: {
      const double s = morse_depth(spec) - n - 0.5;
      return -(spec.morse_a * spec.morse_a / (2.0 * spec.mu)) * s * s;
    }
    default: break;
  }
  throw Error(ErrorCode::NotBoundProblem, "not a bound problem");
}

std::optional<QuantumNumbers> quantization_check(const ProblemSpec& spec, double E) {
  if (!is_bound(spec.kind)) throw Error(ErrorCode::NotBoundProblem, "not a bound problem");
  double minus_alpha;
  if (spec.kind == Kind::Sho1DHermite) {
    minus_alpha = E / spec.omega - 0.5;
  } else {
    CanonicalODE ode;
    try {
      ode = canonicalize(spec, E);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::RegimeMismatch) return std::nullopt;
      throw;
    }
    minus_alpha = -exponents(ode).alpha_minus.real();
  }
  const double N = std::round(minus_alpha);
  if (N < 0.0 || std::abs(minus_alpha - N) > 1e-9) return std::nullopt;
  const int n = static_cast<int>(N) + first_principal(spec);
  if (spec.kind == Kind::Morse && !(n < morse_bound_count(spec))) return std::nullopt;
  return QuantumNumbers{n, static_cast<int>(N)};
}

double xi_of_coordinate(const ProblemSpec& spec, double E, double x) {
  switch (spec.kind) {
    case Kind::Sho1DEven:
    case Kind::Sho1DOdd:
    case Kind::Sho2D:
    case Kind::Sho3D: return spec.mu * spec.omega * x * x;
    case Kind::Sho1DHermite: return std::sqrt(spec.mu * spec.omega) * x;
    case Kind::Coulomb2D:
    case Kind::Coulomb3D: return std::sqrt(-2.0 * spec.mu * E) * x;
    case Kind::Free2D:
    case Kind::Free3D:
    case Kind::Coulomb2DCont:
    case Kind::Coulomb3DCont: return std::sqrt(2.0 * spec.mu * E) * x;
    case Kind::Morse:
    case Kind::MorseCont: return 2.0 * morse_depth(spec) * std::exp(-spec.morse_a * x);
  }
  return 0.0;
}

double coordinate_of_xi(const ProblemSpec& spec, double E, double xi) {
  switch (spec.kind) {
    case Kind::Sho1DEven:
    case Kind::Sho1DOdd:
    case Kind::Sho2D:
    case Kind::Sho3D:
      if (xi < 0.0) throw Error(ErrorCode::DomainError, "xi must be nonnegative");
      return std::sqrt(xi / (spec.mu * spec.omega));
    case Kind::Sho1DHermite: return xi / std::sqrt(spec.mu * spec.omega);
    case Kind::Coulomb2D:
    case Kind::Coulomb3D: return xi / std::sqrt(-2.0 * spec.mu * E);
    case Kind::Free2D:
    case Kind::Free3D:
    case Kind::Coulomb2DCont:
    case Kind::Coulomb3DCont: return xi / std::sqrt(2.0 * spec.mu * E);
    case Kind::Morse:
    case Kind::MorseCont:
      if (!(xi > 0.0)) throw Error(ErrorCode::DomainError, "Morse xi must be positive");
      return -std::log(xi / (2.0 * morse_depth(spec))) / spec.morse_a;
  }
  return 0.0;
}

cplx psi_prefactor(const ProblemSpec& spec, double E, double x) {
  const int am = std::abs(spec.m);
  switch (spec.kind) {
    case Kind::Sho1DEven: return 1.0;
    case Kind::Sho1DOdd: return x;
    case Kind::Sho2D:
    case Kind::Coulomb2D:
    case Kind::Free2D:
    case Kind::Coulomb2DCont: return std::pow(x, am);
    case Kind::Sho3D:
    case Kind::Coulomb3D:
    case Kind::Free3D:
    case Kind::Coulomb3DCont: return std::pow(x, spec.l);
    case Kind::Sho1DHermite: return std::exp(-0.5 * spec.mu * spec.omega * x * x);
    case Kind::Morse: {
      // xi^{kappa/a}, kappa = sqrt(-2 mu E)
      const double kappa = std::sqrt(-2.0 * spec.mu * E);
      const double lx = std::log(2.0 * morse_depth(spec)) - spec.morse_a * x;  // ln xi
      return std::exp(kappa / spec.morse_a * lx);
    }
    case Kind::MorseCont: {
      const double k = std::sqrt(2.0 * spec.mu * E);
      const double lx = std::log(2.0 * morse_depth(spec)) - spec.morse_a * x;
      return std::exp(cplx(0.0, k / spec.morse_a * lx));
    }
  }
  return 1.0;
}

double state_energy(const ProblemSpec& spec, const State& state) {
  if (is_bound(spec.kind)) return bound_energy(spec, bound_state(spec, state));
  const auto* E = std::get_if<double>(&state);
  if (!E) regime_error(spec, "continuum problems take an energy, not quantum numbers");
  if (!(*E > 0.0)) regime_error(spec, "continuum states need E > 0");
  return *E;
}

const char* method_name(Method m) {
  switch (m) {
    case Method::Residue: return "residue";
    case Method::RealIntegral: return "real";
    case Method::Circle: return "circle";
    case Method::Series: return "series";
    case Method::MorseRay: return "morse";
    case Method::ClosedForm: return "closed";
  }
  return "?";
}

std::optional<Method> method_from_name(std::string_view name) {
  for (Method m : {Method::Residue, Method::RealIntegral, Method::Circle, Method::Series,
                   Method::MorseRay, Method::ClosedForm})
    if (name == method_name(m)) return m;
  return std::nullopt;
}

WavefunctionGrid assemble_wavefunction(const ProblemSpec& spec, const State& state,
                                       const std::vector<double>& coordinates,
                                       const PhiFunction& phi, Method tag) {
  validate(spec);
  WavefunctionGrid g;
  g.problem = spec;
  g.method = tag;
  g.energy = state_energy(spec, state);
  if (is_bound(spec.kind)) g.qn = std::get<QuantumNumbers>(state);
  if (is_2d(spec.kind)) g.angular = "e^{i m phi}, m=" + std::to_string(spec.m);
  if (is_3d(spec.kind)) g.angular = "Y_l^m, l=" + std::to_string(spec.l);

  std::vector<double> xs = coordinates;
  std::sort(xs.begin(), xs.end());
  if (is_radial(spec.kind) && !xs.empty() && xs.front() < 0.0)
    throw Error(ErrorCode::DomainError, "negative radius");
  g.entries.reserve(xs.size());
  for (double x : xs) {
    WavefunctionSample s;
    s.coordinate = x;
    s.xi = xi_of_coordinate(spec, g.energy, x);
    s.phi = phi(s.xi);
    s.psi = psi_prefactor(spec, g.energy, x) * s.phi;
    g.entries.push_back(s);
  }
  return g;
}

cplx closed_form_phi(const ProblemSpec& spec, const State& state, double xi) {
  if (spec.kind == Kind::Sho1DHermite) return hermite(bound_state(spec, state).n, xi);
  const double E = state_energy(spec, state);
  const CanonicalODE ode = canonicalize(spec, E);
  const Exponents ex = exponents(ode);
  if (ode.regime == Regime::Bound) {
    const double lam = ode.lambda.real();
    const int N = bound_state(spec, state).N;
    return std::exp(-lam * xi) * laguerre(N, ode.beta.real() - 1.0, 2.0 * lam * xi);
  }
  if (ode.regime == Regime::Continuum)
    return std::exp(cplx(0.0, -xi)) * kummer_m(ex.alpha_minus, ode.beta, cplx(0.0, 2.0 * xi));
  return std::exp(-0.5 * xi) * tricomi_u(ex.alpha_minus, ode.beta, xi);
}

WavefunctionGrid assemble_wavefunction(const ProblemSpec& spec, const State& state,
                                       const std::vector<double>& coordinates) {
  return assemble_wavefunction(
      spec, state, coordinates, [&](double xi) { return closed_form_phi(spec, state, xi); },
      Method::ClosedForm);
}

}  // namespace laplaceqm
