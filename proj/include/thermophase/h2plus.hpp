#pragma once

#include "thermophase/config.hpp"

// The H2+ worked example: parity energies, temperature-dependent gauge
// potential, geometric phase, metric correction, effective potential, and
// equilibrium bond length. Nuclei sit at -R/2 and +R/2; derivatives in R
// follow the symmetric stretch.

namespace thermophase {

struct ParityState {
  Parity parity;
  double lambda;        // orbital exponent (1/bohr)
  double r_sep;         // internuclear distance (bohr)
  double norm_factor;   // C under the active convention
  double squared_norm;  // <psi|psi>; (2 +- 2Y)^3 literal, 1 normalized
};

struct GaugeSample {
  double r_sep;        // bohr
  double temperature;  // K
  double gauge;        // |<psi|d_R psi>| magnitude (1/bohr)
};

struct PhaseResult {
  double temperature;     // K
  double r_m;             // upper integration limit (bohr)
  double theta;           // accumulated phase (dimensionless)
  double error_estimate;  // quadrature error estimate
};

struct EffectivePotentialSample {
  double r_sep;          // bohr
  double temperature;    // K
  double v_eff;          // hartree; = epsilon_r + metric_term - gauge_sq_term
  double epsilon_r;      // parity energy E(lambda(T), R), includes 1/R
  double metric_term;    // (1/2M) <d_R psi | d_R psi>
  double gauge_sq_term;  // (1/2M) gauge^2
};

struct BondMinimum {
  double r_min;  // bohr
  double v_min;  // hartree
};

ParityState make_parity_state(Parity parity, NormConvention conv,
                              double lambda, double r_sep);

// E(+-) = 1/R - lambda^2/2 + [lambda(lambda-1) - Pi +- (lambda-2) Sigma]
//         / (1 +- Y).
// Odd parity is refused below R = 1e-3 (the 1 - Y denominator collapses).
double parity_energy(Parity parity, double lambda, double r_sep);

// Magnitude of the Berry connection <psi|d_R psi> = (1/2) d/dR <psi|psi>.
// PaperLiteral: 3 (2 +- 2Y)^2 dY/dR with the total derivative (the
// lambda(R) chain term enters only in SelfConsistent mode). Normalized:
// exactly zero. lambda comes from resolve_lambda at temperature t.
GaugeSample gauge_potential(double r_sep, double t_kelvin,
                            const ModelConfig& cfg);

// Phase over the partial path [r_lo, r_hi]; geometric_phase is the
// canonical [0, r_m] loop leg. Adaptive Simpson to 1e-9.
PhaseResult phase_segment(double r_lo, double r_hi, double t_kelvin,
                          const ModelConfig& cfg);
PhaseResult geometric_phase(double t_kelvin, double r_m,
                            const ModelConfig& cfg);

// (1/2M) <d_R psi|d_R psi> from the two-geometry overlap kernel
// F(R, R') = C(R) C(R') [2 S(|R-R'|/2) +- 2 S((R+R')/2)] as the mixed
// partial at R' = R, using closed-form S derivatives.
double metric_term(double r_sep, double t_kelvin, const ModelConfig& cfg);

EffectivePotentialSample effective_potential(double r_sep, double t_kelvin,
                                             const ModelConfig& cfg);

// Bracketing scan (200 points) followed by golden-section refinement to
// |dR| < 1e-5. Throws NoMinimumError when no strict interior minimum
// exists on [r_lo, r_hi].
BondMinimum minimize_bond(double t_kelvin, const ModelConfig& cfg,
                          double r_lo = 1.0, double r_hi = 6.0);

}  // namespace thermophase
