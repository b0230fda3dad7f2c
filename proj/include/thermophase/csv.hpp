#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace thermophase::csv {

// Shortest round-trip decimal form (std::to_chars, 17 significant digits).
// Deterministic across runs and locales.
std::string format_double(double v);

// Tabulated radial problem: columns r,V[,A] with a mandatory header row.
// Rows must be strictly increasing in r.
struct RadialTable {
  Eigen::ArrayXd r;          // node positions (bohr)
  Eigen::ArrayXd potential;  // V(r) (hartree)
  Eigen::ArrayXd amplitude;  // optional A(r); size 0 when absent
  bool has_amplitude = false;
};

RadialTable read_radial_table(const std::string& path);
RadialTable parse_radial_table(const std::string& text);

}  // namespace thermophase::csv
