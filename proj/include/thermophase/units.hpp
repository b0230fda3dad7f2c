#pragma once

// Atomic (Hartree) units throughout: lengths in bohr, energies in hartree,
// temperatures in kelvin unless noted. Only the Boltzmann constant crosses
// the kelvin/hartree boundary.

namespace thermophase {

// Boltzmann constant (hartree / K), CODATA 2018.
inline constexpr double k_boltzmann_ha_per_k = 3.166811563e-6;

// Proton-electron mass ratio; default reduced mass scale for the nuclear
// kinetic terms. Callers may override via ModelConfig::mass.
inline constexpr double default_nuclear_mass = 918.076;

inline constexpr double kelvin_to_hartree(double t_kelvin) {
  return t_kelvin * k_boltzmann_ha_per_k;
}

inline constexpr double hartree_to_kelvin(double e_hartree) {
  return e_hartree / k_boltzmann_ha_per_k;
}

}  // namespace thermophase
