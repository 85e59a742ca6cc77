#include <cmath>
#include <random>

#include "doctest.h"
#include "laplaceqm/contour_eval.hpp"
#include "laplaceqm/error.hpp"
#include "laplaceqm/validation.hpp"
#include "oracles.hpp"

using namespace laplaceqm;

namespace {

ProblemSpec spec(Kind k, int m = 0, int l = 0) {
  ProblemSpec s;
  s.kind = k;
  s.m = m;
  s.l = l;
  return s;
}

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1e-300, std::abs(b)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidConfig;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

TEST_CASE("bound residue") {
  SUBCASE("matches a numerical contour integral around -lambda") {
    for (Kind k : kLaguerreBoundKinds)
      for (int q = 0; q <= 2; ++q) {
        ProblemSpec s = spec(k, q, q);
        if (k == Kind::Morse) {
          s.mu = 0.5;
          s.morse_v0 = 100.0;
        }
        for (int N = 0; N <= 4; ++N) {
          const int n = first_principal(s) + N;
          const CanonicalODE c = canonicalize(s, bound_energy(s, quantum_numbers(s, n)));
          const Exponents ex = exponents(c);
          // some of these points sit on nodes of the Laguerre factor, so the
          // error is measured against the state's scale, not the local value
          std::vector<cplx> got, want;
          double scale = 0.0;
          for (double xi : {0.0, 0.2, 1.0, 3.5}) {
            got.push_back(bound_phi_residue(c, N, xi));
            want.push_back(oracle::residue_by_quadrature(ex.alpha_plus, c.lambda.real(), N, xi));
            scale = std::max(scale, std::abs(want.back()));
          }
          for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-10 * scale);
        }
      }
  }
  SUBCASE("N = 0 is a single term") {
    const CanonicalODE c = canonicalize(spec(Kind::Sho3D, 0, 2), 3.5);
    const Exponents ex = exponents(c);
    REQUIRE(std::abs(ex.alpha_minus) < 1e-14);
    for (double xi : {0.0, 0.7, 4.0}) {
      const cplx want = cplx(0, kTwoPi) * std::exp(-c.lambda * xi) *
                        std::exp((ex.alpha_plus - 1.0) * std::log(2.0 * c.lambda)) *
                        std::exp(cplx(0, kPi) * (ex.alpha_plus - 1.0));
      CHECK(close(bound_phi_residue(c, 0, xi), want, 1e-14));
    }
  }
  SUBCASE("equals the Laguerre closed form") {
    for (int N = 0; N <= 8; ++N) {
      ProblemSpec s = spec(Kind::Coulomb3D, 0, 1);
      const CanonicalODE c = canonicalize(s, bound_energy(s, quantum_numbers(s, N + 2)));
      for (double xi : linspace(0.0, 12.0, 25)) {
        const cplx a = bound_phi_residue(c, N, xi);
        const cplx b = bound_phi_closed_form(c, N, xi);
        CHECK(std::abs(a - b) <= 1e-10 * std::abs(bound_phi_closed_form(c, N, 0.0)) * std::max(1.0, std::pow(xi, N)));
      }
    }
  }
  SUBCASE("non-integer order is refused") {
    const CanonicalODE c = canonicalize(spec(Kind::Sho3D), 2.0);
    CHECK(code_of([&] { bound_phi_residue(c, 0, 1.0); }) == ErrorCode::NonIntegerOrder);
  }
}

TEST_CASE("Hermite route") {
  CHECK(hermite_phi_residue(0, 1.7) == 1.0);
  CHECK(hermite_phi_residue(3, 0.5) == doctest::Approx(8 * 0.125 - 12 * 0.5));
  // orthogonality under e^{-x^2}; trapezoid is spectrally accurate here
  const int n_pts = 4001;
  const double h = 20.0 / (n_pts - 1);
  auto inner = [&](int a, int b) {
    double s = 0.0;
    for (int i = 0; i < n_pts; ++i) {
      const double x = -10.0 + i * h;
      s += std::exp(-x * x) * hermite_phi_residue(a, x) * hermite_phi_residue(b, x);
    }
    return s * h;
  };
  for (int a = 0; a <= 6; ++a) {
    const double na = inner(a, a);
    CHECK(na == doctest::Approx(std::sqrt(kPi) * std::pow(2.0, a) * std::tgamma(a + 1.0)).epsilon(1e-10));
    for (int b = 0; b < a; ++b) CHECK(std::abs(inner(a, b)) <= 1e-6 * std::sqrt(na * inner(b, b)));
  }
}

TEST_CASE("winding angles") {
  CHECK(phase_phi1(0.0, 1.1) == 0.0);
  CHECK(phase_phi2(0.0, 1.1) == doctest::Approx(kPi));
  CHECK(phase_phi1(kPi / 2, 2.0) == doctest::Approx(std::asin(2.0 / std::sqrt(5.0))).epsilon(1e-15));
  CHECK(phase_phi2(kPi / 2, 2.0) == doctest::Approx(2 * kPi - std::asin(2.0 / std::sqrt(5.0))).epsilon(1e-15));
  SUBCASE("ranges and the geometry they encode") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> th(0.0, kTwoPi), rr(1.01, 5.0);
    for (int i = 0; i < 1000; ++i) {
      const double t = th(rng), R = rr(rng);
      const PhaseState p = phase_state(t, R);
      CHECK(p.phi1 >= 0.0);
      CHECK(p.phi1 < kTwoPi);
      CHECK(p.phi2 >= kPi);
      CHECK(p.phi2 < 3 * kPi);
      // arrow from -1 to R e^{it} points along phi1; from +1 along phi2 - pi + pi
      const cplx z = std::polar(R, t);
      CHECK(std::abs(std::polar(1.0, p.phi1) - (z + 1.0) / std::abs(z + 1.0)) <= 1e-12);
      CHECK(std::abs(std::polar(1.0, p.phi2 - kPi) - (z - 1.0) / std::abs(z - 1.0)) <= 1e-12);
    }
  }
}

TEST_CASE("continuum routes at xi = 0 reduce to the beta-function constant") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.05, 8.0);
  for (Kind k : {Kind::Coulomb2DCont, Kind::Coulomb3DCont})
    for (int q = 0; q <= 1; ++q)
      for (int t = 0; t < 10; ++t) {
        const CanonicalODE c = canonicalize(spec(k, q, q), u(rng));
        const Exponents ex = exponents(c);
        const cplx beta_fn = oracle::gamma_stirling(ex.alpha_plus) * oracle::gamma_stirling(ex.alpha_minus) /
                             oracle::gamma_stirling(c.beta);
        const cplx want = continuum_prefactor(c, ex) * beta_fn;
        CHECK(close(RealIntegralRoute(c, ex)(0.0).value, want, 1e-9));
        CHECK(close(SeriesRoute(c, ex)(0.0).value, want, 1e-9));
        CHECK(close(continuum_phi_circle(c, ex, dogbone_convention(c), 0.0, {}).value, want, 1e-6));
      }
}

TEST_CASE("continuum prefactor") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.05, 8.0);
  for (int t = 0; t < 20; ++t) {
    const CanonicalODE c = canonicalize(spec(Kind::Coulomb3DCont), u(rng));
    const cplx p = continuum_prefactor(c, exponents(c));
    // beta = 2: i (e^{-pi delta/2} - e^{pi delta/2}) * 2 = -4 i sinh(pi delta / 2)
    CHECK(close(p, cplx(0, -4.0 * std::sinh(0.5 * kPi * c.delta)), 1e-14));
  }
  const CanonicalODE c2 = canonicalize(spec(Kind::Coulomb2DCont), 1.0);
  CHECK(close(continuum_prefactor(c2, exponents(c2)),
              cplx(0, 2.0 * std::cosh(0.5 * kPi * c2.delta)), 1e-14));  // beta = 1
}

TEST_CASE("free 3D particle, l = 0: Phi = 2i sin(xi)/xi") {
  const CanonicalODE c = canonicalize(spec(Kind::Free3D), 1.0);
  const Exponents ex = exponents(c);
  const RealIntegralRoute real(c, ex);
  std::vector<cplx> got, want;
  for (double xi : linspace(0.1, 10.0, 60)) {
    got.push_back(real(xi).value);
    want.push_back(cplx(0, 2) * std::sin(xi) / xi);
  }
  CHECK(ratio_spread(got, want) <= 1e-12);
  CHECK(close(got.back(), want.back(), 1e-12));

  SUBCASE("the arc radius does not matter for an entire integrand") {
    const cplx ref = continuum_phi_circle(c, ex, dogbone_convention(c), 1.0, {ContourKind::CircleRadiusR, 1.1}).value;
    for (double R : {1.5, 2.0}) {
      ContourConfig cfg;
      cfg.radius = R;
      CHECK(close(continuum_phi_circle(c, ex, dogbone_convention(c), 1.0, cfg).value, ref, 1e-10));
    }
    CHECK(close(ref, cplx(0, 2) * std::sin(1.0), 1e-10));
  }
}

TEST_CASE("circle, real segment and series agree at moderate xi") {
  for (Kind k : {Kind::Coulomb2DCont, Kind::Coulomb3DCont}) {
    const CanonicalODE c = canonicalize(spec(k, 1, 1), 1.0);
    const Exponents ex = exponents(c);
    const RealIntegralRoute real(c, ex);
    const CircleRoute circ(c, ex, dogbone_convention(c), {});
    const SeriesRoute ser(c, ex);
    for (double xi : {0.5, 2.0, 5.0}) {
      const cplx r = real(xi).value;
      CHECK(close(circ(xi).value, r, 1e-7));
      CHECK(close(ser(xi).value, r, 1e-9));
      CHECK_FALSE(real(xi).precision_loss);
    }
  }
}

TEST_CASE("circle route keeps the zeros of the real-segment route") {
  const ProblemSpec s = spec(Kind::Coulomb3DCont);
  const auto grid = linspace(0.1, 12.0, 400);
  const auto a = sample_wavefunction(s, 1.0, grid, Method::RealIntegral);
  const auto b = sample_wavefunction(s, 1.0, grid, Method::Circle);
  const cplx phase_a = a.entries[0].psi / std::abs(a.entries[0].psi);
  const cplx phase_b = b.entries[0].psi / std::abs(b.entries[0].psi);
  int zeros = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double pa = (a.entries[i - 1].psi / phase_a).real(), qa = (a.entries[i].psi / phase_a).real();
    const double pb = (b.entries[i - 1].psi / phase_b).real(), qb = (b.entries[i].psi / phase_b).real();
    CHECK((pa * qa < 0) == (pb * qb < 0));
    zeros += pa * qa < 0;
  }
  CHECK(zeros >= 3);
}

TEST_CASE("Morse continuum ray") {
  ProblemSpec s = spec(Kind::MorseCont);
  s.mu = 0.5;
  const CanonicalODE c = canonicalize(s, 1.0);
  const Exponents ex = exponents(c);
  const MorseRayRoute ray(c, ex);
  CHECK(std::abs(ray(50.0).value) < 1e-8 * std::abs(ray(1.0).value));
  double lo = 1e300, hi = 0.0;
  for (double xi = 1e-6; xi < 1e-2; xi *= 1.5) {
    const double v = std::abs(ray(xi).value);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // U ~ c1 xi^{1-b} + c2 with |xi^{1-b}| = 1 for Re b = 1: bounded and oscillating
  CHECK(std::isfinite(hi));
  CHECK(lo > 0.0);
  CHECK(hi <= 10.0 * std::abs(ray(1.0).value));
  CHECK(code_of([&] { ray(0.0); }) == ErrorCode::DomainError);
  CHECK(close(morse_continuum_phi(c, ex, 2.0).value, ray(2.0).value, 1e-15));
}

TEST_CASE("dispatch and configuration errors") {
  CHECK(code_of([] { make_phi_evaluator(spec(Kind::Free3D), 1.0, Method::Residue); }) ==
        ErrorCode::MethodRegimeMismatch);
  CHECK(code_of([] { make_phi_evaluator(spec(Kind::Sho3D), QuantumNumbers{0, 0}, Method::Circle); }) ==
        ErrorCode::MethodRegimeMismatch);
  CHECK(code_of([] { make_phi_evaluator(spec(Kind::Coulomb3DCont), 1.0, Method::MorseRay); }) ==
        ErrorCode::MethodRegimeMismatch);
  ContourConfig bad;
  bad.radius = 1.0;
  CHECK(code_of([&] { validate(bad); }) == ErrorCode::InvalidConfig);
  bad.radius = 1.1;
  bad.steps = 999;
  CHECK(code_of([&] { validate(bad); }) == ErrorCode::InvalidConfig);
  const CanonicalODE c = canonicalize(spec(Kind::Coulomb3DCont), 1.0);
  CHECK(code_of([&] { CircleRoute(c, exponents(c), dogbone_convention(c), bad); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { SeriesRoute(canonicalize(spec(Kind::Sho3D), 2.0), exponents(canonicalize(spec(Kind::Sho3D), 2.0))); }) ==
        ErrorCode::MethodRegimeMismatch);

  for (Kind k : kAllKinds) CHECK(method_compatible(k, Method::ClosedForm));
  CHECK(method_compatible(Kind::Morse, Method::Residue));
  CHECK_FALSE(method_compatible(Kind::MorseCont, Method::Series));
  CHECK(method_compatible(Kind::MorseCont, Method::MorseRay));
}
