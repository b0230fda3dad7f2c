#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thermophase/config.hpp"

// Batch sweep drivers behind the CLI. Results carry pre-rendered cells so
// CSV output is byte-deterministic for identical configs regardless of how
// the evaluation was scheduled.

namespace thermophase {

enum class SweepKind { Gauge, Phase, Veff, Lambda, Minimize };

struct SweepResult {
  SweepKind kind;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // cells, one vector per row
  std::string config_hash;                     // 16 hex digits

  // Leading `# config_hash=...` comment, header line, then rows.
  std::string to_csv() const;
  // Same payload as a JSON envelope {kind, config_hash, columns, rows}.
  std::string to_json() const;
};

// Inclusive numeric grid lo, lo+step, ...; the right endpoint is appended
// when the last step lands short. lo == hi collapses to one sample.
std::vector<double> build_grid(double lo, double hi, double step);

// Gauge potential over R for each temperature. Columns R_au,T_K,gauge_au,
// rows ordered by (T, R).
SweepResult sweep_gauge(const std::vector<double>& temps, double r_min,
                        double r_max, double r_step, const ModelConfig& cfg);

// Geometric phase over a temperature range. Columns T_K,theta.
SweepResult sweep_phase(double t_min, double t_max, double t_step, double r_m,
                        const ModelConfig& cfg);

// Effective potential with its components. Columns
// R_au,T_K,V_eff,eps_R,metric,gauge_sq, rows ordered by (T, R).
SweepResult sweep_veff(const std::vector<double>& temps, double r_min,
                       double r_max, double r_step, const ModelConfig& cfg);

// lambda(T) table. Columns T_K,lambda_au,mode,iterations. r_sep is
// required by SelfConsistent mode and ignored otherwise.
SweepResult sweep_lambda(double t_min, double t_max, double t_step,
                         std::optional<double> r_sep, const ModelConfig& cfg);

// Bond minima per temperature. Columns T_K,R_min_au,V_min_ha,status with
// status ok|no-minimum; nan cells on failure rows.
SweepResult minimize_table(const std::vector<double>& temps,
                           const ModelConfig& cfg);

}  // namespace thermophase
