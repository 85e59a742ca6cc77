#include <cmath>
#include <random>

#include "doctest.h"
#include "laplaceqm/core_laplace.hpp"
#include "laplaceqm/error.hpp"
#include "laplaceqm/potential_catalog.hpp"

using namespace laplaceqm;

namespace {

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

CanonicalODE ode(cplx beta, double delta, cplx lambda, Regime r = Regime::Bound) {
  return {beta, delta, lambda, r};
}

// admissible energies per kind, drawn at random
double draw_energy(Kind k, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.05, 5.0);
  if (k == Kind::Coulomb2D || k == Kind::Coulomb3D || k == Kind::Morse) return -u(rng);
  return u(rng);
}

}  // namespace

TEST_CASE("P and Q from the canonical coefficients") {
  SUBCASE("even oscillator, E/hbar omega = 1/2") {
    auto [p, q] = build_pq(ode(0.5, 0.25, 0.5));
    CHECK(p.degree() == 1);
    CHECK(p.coefficients()[0] == cplx(0.25));
    CHECK(p.coefficients()[1] == cplx(0.5));
    CHECK(q.degree() == 2);
    CHECK(q.coefficients()[0] == cplx(-0.25));
    CHECK(q.coefficients()[1] == cplx(0.0));
    CHECK(q.coefficients()[2] == cplx(1.0));
  }
  SUBCASE("zero first-order coefficient") {
    auto [p, q] = build_pq(ode(0.0, 0.0, 1.0));
    CHECK(p.degree() == -1);
    CHECK(p(cplx(3.0, 1.0)) == cplx(0.0));
    CHECK(q(2.0) == cplx(3.0));
  }
  SUBCASE("3D free particle") {
    auto [p, q] = build_pq(ode(2.0, 0.0, cplx(0, 1), Regime::Continuum));
    CHECK(p.degree() == 1);
    CHECK(p(1.0) == cplx(2.0));
    CHECK(q(0.0) == cplx(1.0));  // z^2 + 1
    CHECK(q(cplx(0, 1)) == cplx(0.0));
  }
}

TEST_CASE("Polynomial trims and evaluates") {
  Polynomial p({1.0, 2.0, 0.0, 0.0});
  CHECK(p.degree() == 1);
  CHECK(p(3.0) == cplx(7.0));
  CHECK(Polynomial().degree() == -1);
  CHECK(Polynomial({0.0}).degree() == -1);
}

TEST_CASE("exponents") {
  SUBCASE("2D oscillator closed form") {
    for (int m = 0; m <= 3; ++m)
      for (double e : {0.3, 1.0, 2.5, 7.0}) {
        ProblemSpec s;
        s.kind = Kind::Sho2D;
        s.m = m;
        const Exponents ex = exponents(canonicalize(s, e));
        CHECK(close(ex.alpha_plus, 0.5 * (m + 1 + e), 1e-14));
        CHECK(close(ex.alpha_minus, 0.5 * (m + 1 - e), 1e-14));
      }
  }
  SUBCASE("symmetric case") {
    const Exponents ex = exponents(ode(2.0, 0.0, cplx(0, 1), Regime::Continuum));
    CHECK(ex.alpha_plus == cplx(1.0));
    CHECK(ex.alpha_minus == cplx(1.0));
  }
  SUBCASE("Coulomb continuum with hbar/(a0 k) = 1") {
    ProblemSpec s;
    s.kind = Kind::Coulomb3DCont;
    const Exponents ex = exponents(canonicalize(s, 0.5));  // k = 1
    CHECK(close(ex.alpha_plus, cplx(1.0, -1.0), 1e-14));
    CHECK(close(ex.alpha_minus, cplx(1.0, 1.0), 1e-14));
  }
  SUBCASE("lambda = 0 is rejected") {
    CHECK_THROWS_AS(exponents(ode(1.0, 1.0, 0.0)), Error);
    try {
      exponents(ode(1.0, 1.0, 0.0));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateLambda);
    }
  }
}

TEST_CASE("exponent invariants over the catalog") {
  std::mt19937 rng(20240611);
  for (Kind k : kAllKinds) {
    if (k == Kind::Sho1DHermite) continue;
    for (int q = 0; q <= 3; ++q) {
      ProblemSpec s;
      s.kind = k;
      s.m = q;
      s.l = q;
      for (int trial = 0; trial < 25; ++trial) {
        const CanonicalODE c = canonicalize(s, draw_energy(k, rng));
        const Exponents ex = exponents(c);
        // alpha+ + alpha- = beta
        CHECK(std::abs(ex.alpha_plus + ex.alpha_minus - c.beta) <= 1e-12 * std::abs(c.beta));
        if (c.regime == Regime::Continuum) {
          CHECK(std::abs(ex.alpha_minus - std::conj(ex.alpha_plus)) <= 1e-12 * std::abs(ex.alpha_plus));
        }
      }
    }
  }
}

TEST_CASE("integrand") {
  SUBCASE("dog-bone reference value at the origin") {
    ProblemSpec s;
    s.kind = Kind::Coulomb3DCont;
    const CanonicalODE c = canonicalize(s, 1.0);
    const cplx f = integrand(c, exponents(c), dogbone_convention(c), 0.0, 0.0, {});
    CHECK(close(f, std::exp(-0.5 * kPi * c.delta), 1e-14));
  }
  SUBCASE("zero winding right of every cut is the positive modulus product") {
    const CanonicalODE c = ode(1.5, 0.9, 0.5);
    const Exponents ex = exponents(c);
    const double z = 2.0;
    const cplx f = integrand(c, ex, PhaseConvention{}, 0.0, z, {});
    const double want = std::pow(z - 0.5, ex.alpha_plus.real() - 1) * std::pow(z + 0.5, ex.alpha_minus.real() - 1);
    CHECK(f.imag() == doctest::Approx(0.0));
    CHECK(f.real() == doctest::Approx(want).epsilon(1e-14));
  }
  SUBCASE("integer exponents: a full turn of either winding changes nothing") {
    for (int l = 0; l <= 3; ++l) {
      ProblemSpec s;
      s.kind = Kind::Free3D;
      s.l = l;
      const CanonicalODE c = canonicalize(s, 2.0);
      const Exponents ex = exponents(c);
      for (cplx z : {cplx(0.3, 0.2), cplx(-1.4, 2.0), cplx(0.0, -0.5)}) {
        const Winding w{0.7, 3.9};
        const cplx a = integrand(c, ex, dogbone_convention(c), 1.3, z, w);
        const cplx b = integrand(c, ex, dogbone_convention(c), 1.3, z, {w.phi1 + kTwoPi, w.phi2 + kTwoPi});
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
      }
    }
  }
  SUBCASE("branch points are refused") {
    const CanonicalODE c = ode(1.5, 0.9, 0.5);
    CHECK_THROWS_AS(integrand(c, exponents(c), {}, 1.0, 0.5, {}), Error);
    CHECK_THROWS_AS(integrand(c, exponents(c), {}, 1.0, -0.5, {}), Error);
  }
}

TEST_CASE("ode_residual vanishes on e^{-lambda xi} with delta = beta lambda") {
  // alpha- = 0: Phi = e^{-lambda xi}, Phi' = -lambda Phi, Phi'' = lambda^2 Phi
  for (double lam : {0.5, 1.0, 2.0}) {
    const CanonicalODE c = ode(1.7, 1.7 * lam, lam);
    for (double xi : {0.1, 1.0, 4.0}) {
      const double f = std::exp(-lam * xi);
      CHECK(std::abs(ode_residual(c, xi, f, -lam * f, lam * lam * f)) <= 1e-15);
    }
  }
}

TEST_CASE("is_near_integer") {
  CHECK(is_near_integer(3.0));
  CHECK(is_near_integer(-2.0 + 1e-12));
  CHECK_FALSE(is_near_integer(2.5));
  CHECK(is_near_integer(2.001, 0.01));
}
