#pragma once

#include <Eigen/Core>

#include "thermophase/config.hpp"

namespace thermophase {

// Everything needed to evaluate lambda(T) in FixedEpsilon mode.
struct CalibrationLedger {
  double n0;          // Boltzmann normalization constant (1/bohr^3 scale)
  double theta_th;    // thermal energy scale as a temperature (K)
  double t_ref;       // reference temperature (K)
  double lambda_ref;  // exponent pinned at t_ref (1/bohr)
};

struct ThermalState {
  double temperature;  // K
  double lambda;       // orbital exponent (1/bohr)
  LambdaMode mode;
  int iterations = 0;  // 0 outside SelfConsistent mode
  bool converged = true;
};

// Anchor n0 so that lambda(t_ref) = lambda_ref under
// lambda^3 = pi n0 exp(theta_th / T), i.e. pi n0 = lambda_ref^3 e^{-theta/t_ref}.
CalibrationLedger calibrate(const ModelConfig& cfg);

// Closed-form lambda(T) = (pi n0 e^{theta_th/T})^{1/3}, evaluated in log
// space so extreme theta/T ratios stay finite.
ThermalState lambda_of_t(double t_kelvin, const CalibrationLedger& ledger);

// Damped fixed-point iteration of
//   lambda = (pi n0 exp(-eps_scaled(lambda, R) / k_B T))^{1/3}
// where eps_scaled rescales the electronic energy onto the theta_th scale:
//   eps_scaled = -theta_th k_B * E_elec(lambda, R) / E_elec(lambda_ref, R),
// so the reference configuration reproduces the FixedEpsilon closed form.
ThermalState lambda_self_consistent(double r_sep, double t_kelvin,
                                    const ModelConfig& cfg);

// Mode dispatch: FixedLambda returns cfg.fixed_lambda, FixedEpsilon routes
// to lambda_of_t, SelfConsistent to the fixed point (r_sep required > 0).
ThermalState resolve_lambda(double r_sep, double t_kelvin,
                            const ModelConfig& cfg);

// Boltzmann amplitude A(r) = sqrt(n0 exp(-epsilon / k_B T(r))) per node.
Eigen::ArrayXd boltzmann_amplitude(const Eigen::ArrayXd& grid,
                                   const Eigen::ArrayXd& t_profile,
                                   double epsilon, double n0);

// Same, but n0 is chosen so the grid quadrature of A^2 equals 1.
Eigen::ArrayXd boltzmann_amplitude_normalized(const Eigen::ArrayXd& grid,
                                              const Eigen::ArrayXd& t_profile,
                                              double epsilon);

}  // namespace thermophase
