#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace thermophase {

// How the variational screening exponent responds to temperature.
enum class LambdaMode {
  FixedLambda,     // lambda pinned to ModelConfig::fixed_lambda, no T coupling
  FixedEpsilon,    // closed-form lambda(T) from the calibrated Boltzmann ledger
  SelfConsistent,  // lambda(T, R) fixed point with energy-rescaled epsilon
};

// Electronic parity sector of the two-center problem.
enum class Parity {
  Even,  // gerade combination, bonding
  Odd,   // ungerade combination, antibonding
};

// Normalization convention for the parity state used in the gauge/metric
// pipeline. PaperLiteral keeps the bare coefficient (2 +- 2Y) in front of
// the combination, so the state norm varies with R and the Berry connection
// is nonzero; Normalized divides it out, and the connection vanishes
// identically for the resulting real normalized state.
enum class NormConvention {
  PaperLiteral,
  Normalized,
};

// Knobs for the 3-D quadrature oracle and the finite-difference probes.
struct QuadratureConfig {
  double rel_tol = 1e-10;       // relative tolerance for panel doubling
  double abs_tol = 1e-12;       // absolute floor, wins near zero
  int max_subdivisions = 8;     // panel count doubles up to 2^max per axis
  double fd_step = 1e-3;        // step for derivative cross-checks (bohr)
};

// Full model configuration. Defaults reproduce the shipped figures.
struct ModelConfig {
  double theta_th = 100.0;      // calibration temperature scale (K)
  double t_ref = 200.0;         // reference temperature (K)
  double lambda_ref = 1.0;      // screening exponent at t_ref (1/bohr)
  LambdaMode mode = LambdaMode::FixedEpsilon;
  double fixed_lambda = 1.0;    // used only when mode == FixedLambda (1/bohr)
  Parity parity = Parity::Even;
  double mass = 918.076;        // nuclear reduced mass (m_e)
  NormConvention norm_convention = NormConvention::PaperLiteral;
  double r_m = 5.0;             // phase-loop turning radius (bohr)
  QuadratureConfig quadrature;

  // Collect every violated constraint; empty means valid.
  std::vector<std::string> validate() const;
};

const char* to_string(LambdaMode m);
const char* to_string(Parity p);
const char* to_string(NormConvention c);

LambdaMode lambda_mode_from_string(const std::string& s);
Parity parity_from_string(const std::string& s);
NormConvention norm_convention_from_string(const std::string& s);

// Strict JSON round trip: unknown keys anywhere are a DomainError, as is a
// config that fails validate().
ModelConfig load_config_json(const std::string& text);
ModelConfig load_config_file(const std::string& path);
std::string dump_config_json(const ModelConfig& cfg);

// FNV-1a 64-bit hash of the canonical JSON dump; stamped into every sweep
// artifact so outputs are traceable to the exact configuration.
std::uint64_t config_hash(const ModelConfig& cfg);
std::string config_hash_hex(const ModelConfig& cfg);

}  // namespace thermophase
