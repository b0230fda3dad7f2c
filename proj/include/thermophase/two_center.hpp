#pragma once

#include <cmath>

#include "thermophase/errors.hpp"

// Closed-form two-center integrals over scaled 1s orbitals
// psi(r) = lambda^{3/2}/sqrt(pi) * exp(-lambda r) centered on nuclei at
// -R/2 and +R/2. Everything here is a pure function of (lambda, R).

namespace thermophase {

struct OrbitalPair {
  double lambda;  // orbital exponent (1/bohr)
  double r_sep;   // internuclear distance R (bohr)
};

struct IntegralSet {
  double y;        // overlap, dimensionless
  double pi_c;     // Coulomb integral (hartree)
  double sigma_x;  // exchange integral (hartree)
};

inline void check_pair(const OrbitalPair& p) {
  if (!(p.lambda > 0.0)) throw DomainError("OrbitalPair: lambda must be positive");
  if (!(p.r_sep >= 0.0)) throw DomainError("OrbitalPair: r_sep must be nonnegative");
}

// Overlap Y = <psi_a|psi_b> = e^{-u}(1 + u + u^2/3), u = lambda R.
inline double overlap_y(const OrbitalPair& p) {
  check_pair(p);
  const double u = p.lambda * p.r_sep;
  return std::exp(-u) * (1.0 + u + u * u / 3.0);
}

// dY/dR at fixed lambda: -(lambda^2 R / 3)(1 + u) e^{-u}.
inline double overlap_y_dr(const OrbitalPair& p) {
  check_pair(p);
  const double u = p.lambda * p.r_sep;
  return -(p.lambda * p.lambda * p.r_sep / 3.0) * (1.0 + u) * std::exp(-u);
}

// d2Y/dR2 at fixed lambda: -(lambda^2/3)(1 + u - u^2) e^{-u}.
inline double overlap_y_d2r(const OrbitalPair& p) {
  check_pair(p);
  const double u = p.lambda * p.r_sep;
  return -(p.lambda * p.lambda / 3.0) * (1.0 + u - u * u) * std::exp(-u);
}

// dY/dlambda at fixed R: -(lambda R^2 / 3)(1 + u) e^{-u}.
inline double overlap_y_dlambda(const OrbitalPair& p) {
  check_pair(p);
  const double u = p.lambda * p.r_sep;
  return -(p.lambda * p.r_sep * p.r_sep / 3.0) * (1.0 + u) * std::exp(-u);
}

// Coulomb integral Pi = <psi_a| 1/r_b |psi_a> = (1/R)[1 - (1+u)e^{-2u}].
// Rearranged through expm1 so the small-u cancellation costs only one bit;
// the R -> 0 limit is lambda.
inline double coulomb_pi(const OrbitalPair& p) {
  check_pair(p);
  if (p.r_sep == 0.0) return p.lambda;
  const double u = p.lambda * p.r_sep;
  const double e2 = std::exp(-2.0 * u);
  return (-std::expm1(-2.0 * u) - u * e2) / p.r_sep;
}

// Exchange integral Sigma = <psi_a| 1/r_a |psi_b> = lambda (1+u) e^{-u}.
inline double exchange_sigma(const OrbitalPair& p) {
  check_pair(p);
  const double u = p.lambda * p.r_sep;
  return p.lambda * (1.0 + u) * std::exp(-u);
}

inline IntegralSet integral_set(const OrbitalPair& p) {
  return {overlap_y(p), coulomb_pi(p), exchange_sigma(p)};
}

}  // namespace thermophase
