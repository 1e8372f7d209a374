#pragma once

#include <numbers>

// Unit conversions. Everything crossing a public API is SI-flavoured
// (Hz, s, T, km/s); the natural-unit bookkeeping lives here and nowhere else.
namespace axionkit::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

//! speed of light [km/s]
inline constexpr double c_km_s = 299792.458;

//! Planck constant [eV s]
inline constexpr double h_eV_s = 4.135667696e-15;
//! reduced Planck constant [eV s]
inline constexpr double hbar_eV_s = 6.582119569e-16;
//! hbar*c [eV cm]
inline constexpr double hbar_c_eV_cm = 1.97326980e-5;

//! electron mass [eV]
inline constexpr double electron_mass_eV = 0.51099895e6;

//! sidereal day [s]
inline constexpr double sidereal_day_s = 86164.0905;
//! Julian year [s]
inline constexpr double year_s = 365.25 * 86400.0;

inline constexpr double deg = std::numbers::pi / 180.0;

//! photon energy to frequency: E [eV] -> nu [Hz]
constexpr double ev_to_hz(double energy_eV) { return energy_eV / h_eV_s; }
constexpr double hz_to_ev(double nu_hz) { return nu_hz * h_eV_s; }

//! 1 ueV <-> 241.799 MHz
constexpr double micro_ev_to_hz(double mass_ueV) { return ev_to_hz(mass_ueV * 1e-6); }
constexpr double hz_to_micro_ev(double nu_hz) { return hz_to_ev(nu_hz) * 1e6; }

//! energy density GeV/cm^3 -> eV^4 (natural units)
constexpr double gev_per_cm3_to_ev4(double rho) {
  return rho * 1e9 * hbar_c_eV_cm * hbar_c_eV_cm * hbar_c_eV_cm;
}

//! energy [eV] -> angular frequency [rad/s]
constexpr double ev_to_rad_per_s(double energy_eV) { return energy_eV / hbar_eV_s; }

constexpr double speed_to_beta(double v_km_s) { return v_km_s / c_km_s; }
constexpr double beta_to_speed(double beta) { return beta * c_km_s; }

} // namespace axionkit::units
