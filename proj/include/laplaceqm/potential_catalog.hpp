#pragma once

// The thirteen cataloged problems: physical parameters -> canonical ODE,
// quantization, closed-form energies and wavefunction assembly.
//
// Units: hbar = 1 throughout; mu, omega, a0, a and V0 are carried explicitly so
// any unit system with hbar = 1 works. With mu = 1, a0 = 1 energies are in
// Hartree; with mu = 1/2, a = 1 Morse energies are in units of hbar^2 a^2 / 2mu.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "laplaceqm/core_laplace.hpp"

namespace laplaceqm {

enum class Kind {
  Sho1DEven,
  Sho1DOdd,
  Sho2D,
  Sho3D,
  Coulomb2D,
  Coulomb3D,
  Morse,
  Sho1DHermite,
  Free2D,
  Free3D,
  Coulomb2DCont,
  Coulomb3DCont,
  MorseCont,
};

inline constexpr Kind kAllKinds[] = {
    Kind::Sho1DEven, Kind::Sho1DOdd,     Kind::Sho2D,         Kind::Sho3D,
    Kind::Coulomb2D, Kind::Coulomb3D,    Kind::Morse,         Kind::Sho1DHermite,
    Kind::Free2D,    Kind::Free3D,       Kind::Coulomb2DCont, Kind::Coulomb3DCont,
    Kind::MorseCont,
};

// The seven bound kinds whose Phi is e^{-lambda xi} L_N^{(beta-1)}(2 lambda xi).
inline constexpr Kind kLaguerreBoundKinds[] = {Kind::Sho1DEven, Kind::Sho1DOdd,  Kind::Sho2D,
                                               Kind::Sho3D,     Kind::Coulomb2D, Kind::Coulomb3D,
                                               Kind::Morse};
inline constexpr Kind kContinuumKinds[] = {Kind::Free2D, Kind::Free3D, Kind::Coulomb2DCont,
                                           Kind::Coulomb3DCont};

const char* kind_name(Kind k);  // CLI spelling, e.g. "coulomb3d_cont"
std::optional<Kind> kind_from_name(std::string_view name);

bool is_bound(Kind k);
bool is_continuum(Kind k);  // includes MorseCont
bool is_radial(Kind k);     // coordinate must be >= 0

struct ProblemSpec {
  Kind kind = Kind::Sho1DEven;
  double mu = 1.0;
  double omega = 1.0;
  double a0 = 1.0;
  double morse_a = 1.0;
  double morse_v0 = 1.0;
  int m = 0;
  int l = 0;
};

// Throws DomainError for nonpositive scales or l < 0.
void validate(const ProblemSpec& spec);

struct QuantumNumbers {
  int n = 0;  // principal index in the conventions of the energy formulas
  int N = 0;  // Laplace index -alpha_-
  bool operator==(const QuantumNumbers&) const = default;
};

// sqrt(2 mu V0) / a
double morse_depth(const ProblemSpec& spec);

// Smallest admissible principal index (|m|+1 and l+1 for Coulomb, else 0).
int first_principal(const ProblemSpec& spec);

// Builds (n, N) from n, throwing InvalidQuantumNumbers when n is not allowed.
QuantumNumbers quantum_numbers(const ProblemSpec& spec, int n);

// Number of Morse bound states, i.e. the count of n >= 0 with n < depth - 1/2.
int morse_bound_count(const ProblemSpec& spec);

CanonicalODE canonicalize(const ProblemSpec& spec, double E);
double bound_energy(const ProblemSpec& spec, const QuantumNumbers& qn);
std::optional<QuantumNumbers> quantization_check(const ProblemSpec& spec, double E);

double xi_of_coordinate(const ProblemSpec& spec, double E, double coordinate);
// Inverse map (nonnegative branch for the quadratic SHO maps).
double coordinate_of_xi(const ProblemSpec& spec, double E, double xi);
// Factor multiplying Phi(xi) in psi (rho^|m|, r^l, xi^{kappa/a}, Gaussian, ...).
std::complex<double> psi_prefactor(const ProblemSpec& spec, double E, double coordinate);

// Either a bound state's quantum numbers or a continuum energy.
using State = std::variant<QuantumNumbers, double>;

double state_energy(const ProblemSpec& spec, const State& state);

enum class Method { Residue, RealIntegral, Circle, Series, MorseRay, ClosedForm };

const char* method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);

struct WavefunctionSample {
  double coordinate = 0.0;
  double xi = 0.0;
  std::complex<double> phi;
  std::complex<double> psi;
};

struct WavefunctionGrid {
  ProblemSpec problem;
  double energy = 0.0;
  Method method = Method::ClosedForm;
  std::optional<QuantumNumbers> qn;
  std::string angular;  // symbolic angular factor, e.g. "e^{i m phi}, m=1"
  std::vector<WavefunctionSample> entries;
};

using PhiFunction = std::function<std::complex<double>(double xi)>;

// psi(coordinate) = prefactor(coordinate) * phi(xi(coordinate)), entries sorted
// by coordinate. Throws DomainError for negative radii.
WavefunctionGrid assemble_wavefunction(const ProblemSpec& spec, const State& state,
                                       const std::vector<double>& coordinates,
                                       const PhiFunction& phi, Method tag);

// Same, with Phi from the closed forms: e^{-lambda xi} L_N^{(beta-1)}(2 lambda xi)
// and H_n for bound states, e^{-i xi} M(alpha-, beta, 2i xi) for the continuum
// and e^{-xi/2} U(alpha-, beta, xi) for the Morse continuum.
WavefunctionGrid assemble_wavefunction(const ProblemSpec& spec, const State& state,
                                       const std::vector<double>& coordinates);

std::complex<double> closed_form_phi(const ProblemSpec& spec, const State& state, double xi);

}  // namespace laplaceqm
