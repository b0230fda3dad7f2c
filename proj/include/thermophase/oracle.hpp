#pragma once

#include "thermophase/config.hpp"
#include "thermophase/two_center.hpp"

// Brute-force 3-D quadrature oracle for the two-center integrals, kept
// deliberately independent of the closed forms it validates. Coordinates
// are prolate spheroidal (mu, nu, phi) with the nuclei as foci; the radial
// direction is transformed to t = lambda R (mu - 1) so every integrand is a
// bounded polynomial times exp(-t), then integrated with tensor
// Gauss-Legendre panels whose count doubles until two successive levels
// agree to tolerance.

namespace thermophase {

struct HElements {
  double h_aa;  // <psi_a|H_e|psi_a> (hartree)
  double h_ab;  // <psi_a|H_e|psi_b> (hartree)
};

class TwoCenterOracle {
 public:
  explicit TwoCenterOracle(QuadratureConfig cfg = {}) : cfg_(cfg) {}

  // <psi_a|psi_b>
  double overlap(const OrbitalPair& p) const;
  // <psi_a|psi_a>, analytically 1; kept as a quadrature sanity probe
  double self_overlap(const OrbitalPair& p) const;
  // <psi_a| 1/r_b |psi_a>
  double coulomb(const OrbitalPair& p) const;
  // <psi_a| 1/r_a |psi_a>, analytically lambda
  double self_attraction(const OrbitalPair& p) const;
  // <psi_a| 1/r_a |psi_b>
  double exchange(const OrbitalPair& p) const;
  // <psi_a| 1/r_b |psi_b>, equal to exchange by symmetry
  double exchange_far(const OrbitalPair& p) const;

  // Matrix elements of H_e = -grad^2/2 - 1/r_a - 1/r_b assembled from the
  // integrals above via the analytic Laplacian of the scaled 1s orbital.
  HElements hamiltonian_elements(const OrbitalPair& p) const;

  // Coulomb integral evaluated with the divergent exponent as printed in
  // some references, exp(+2 lambda R). Exists so the verification suite can
  // demonstrate that this variant contradicts the quadrature.
  static double coulomb_uncorrected_form(const OrbitalPair& p);

  const QuadratureConfig& config() const { return cfg_; }

 private:
  QuadratureConfig cfg_;
};

}  // namespace thermophase
