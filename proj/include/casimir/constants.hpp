#pragma once

// Unit conventions used throughout the library:
//   energies and frequencies : eV   (a frequency omega means the photon energy)
//   lengths                  : nm
//   temperatures             : K
//   forces                   : pN
// Conversions happen only at module boundaries, through the constants below.

namespace casimir::constants {

// CODATA 2018 values; the last one is exact in the 2019 SI.
inline constexpr double hbar_c_eV_nm = 197.3269804;
inline constexpr double k_boltzmann_eV_per_K = 8.617333262e-5;
inline constexpr double newton_per_eV_nm = 1.602176634e-10;
inline constexpr double piconewton_per_eV_nm = newton_per_eV_nm * 1e12;

} // namespace casimir::constants
