#pragma once

#include <string>
#include <vector>

#include "thermophase/config.hpp"

// Cross-validation suite: every closed form in the library is checked
// against an independent numerical route (3-D quadrature, finite
// differences, exact antiderivatives, convergence-order fits) plus the
// golden file of frozen oracle values.

namespace thermophase {

struct CheckResult {
  std::string name;
  bool passed;
  bool info_only;      // informational lines never affect the exit code
  std::string detail;  // measured numbers, limits, context
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  // One aligned pass/fail line per check.
  std::string render() const;
};

struct GoldenRow {
  double lambda;         // 1/bohr
  double r;              // bohr (0 when the quantity has no R argument)
  std::string quantity;  // e.g. overlap, h_aa, rmin_veff_fixed_lambda
  double value;
  double tolerance;
};

std::vector<GoldenRow> read_golden(const std::string& path);
void write_golden(const std::string& path, const std::vector<GoldenRow>& rows);

// Recompute every golden quantity from the oracles under cfg.quadrature.
std::vector<GoldenRow> generate_golden(const ModelConfig& cfg);

// Runs the full check list. regenerate rewrites the golden file from the
// oracle before comparing (and then trivially passes those rows).
// Non-convergence inside any oracle propagates as ConvergenceError.
VerifyReport run_verification(const ModelConfig& cfg,
                              const std::string& golden_path,
                              bool regenerate = false);

}  // namespace thermophase
