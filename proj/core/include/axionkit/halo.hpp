#pragma once

#include <span>
#include <vector>

namespace axionkit::halo {

//! Truncated Maxwell-Boltzmann halo. Speeds in km/s, density in GeV/cm^3.
struct HaloParams {
  double v0_km_s = 230.0;       //!< most probable speed
  double v_esc_km_s = 544.0;    //!< galactic escape speed
  double rho_dm_gev_cm3 = 0.4;  //!< local dark matter density
  double v_ref_km_s = 230.0;    //!< reference speed that fixes beta_0

  //! Throws InvalidArgument unless v0 > 0, v_esc > v0, rho > 0, v_ref > 0.
  void validate() const;
};

struct AxionParams {
  double mass_ueV = 1.0;  //!< m_a, equivalently nu_a = m_a / h
  double g_ae = 1e-13;    //!< dimensionless axion-electron coupling
  double phase_rad = 0.0; //!< field phase phi

  //! nu_a [Hz]
  double frequency_hz() const;
  //! m_a as an angular frequency [rad/s]
  double angular_frequency() const;
  void validate() const;
};

//! Electron spin gyromagnetic ratio gamma_e / 2pi [Hz/T].
inline constexpr double electron_gamma_hz_per_t = 28.0e9;

//! <v^2> of the truncated SHM [km^2/s^2]. Closed form; always < 1.5 v0^2.
double mean_square_speed(const HaloParams &halo);

//! Second-moment fractional linewidth <v^2>/(2c^2). Drives tau_a.
double fractional_linewidth(const HaloParams &halo);

//! Kinematic fractional width v0^2/(2c^2), the convention quoted with the
//! line-shape FWHM.
double kinematic_fractional_width(const HaloParams &halo);

//! Absolute second-moment linewidth Delta nu = nu_a <v^2>/(2c^2) [Hz].
double linewidth_hz(const AxionParams &axion, const HaloParams &halo);

//! tau_a = 1/(pi Delta nu) [s]; exactly inverse in m_a.
double coherence_time(const AxionParams &axion, const HaloParams &halo);

//! Q_a = 2c^2/<v^2>.
double quality_factor(const HaloParams &halo);

//! tau_c = Q_a/omega_a [s], the coherence time that enters the SNR T_coh.
double field_coherence_time(const AxionParams &axion, const HaloParams &halo);

//! Normalised SHM line shape g(nu) [1/Hz], obtained from f(v) through
//! nu = nu_a (1 + v^2/2c^2) with its Jacobian. Zero outside
//! [nu_a, nu_a (1 + v_esc^2/2c^2)].
double shm_lineshape_at(double nu_hz, const AxionParams &axion, const HaloParams &halo);

//! Vector form. The grid must be non-empty and strictly increasing.
std::vector<double> shm_lineshape(std::span<const double> nu_hz, const AxionParams &axion,
                                  const HaloParams &halo);

//! Upper edge of the line-shape support [Hz].
double lineshape_support_end(const AxionParams &axion, const HaloParams &halo);

//! Full width at half maximum of g(nu) [Hz], from the analytic shape.
double lineshape_fwhm(const AxionParams &axion, const HaloParams &halo);

//! |B_eff| = g_ae v sqrt(2 rho_DM) / (m_e gamma_e) [T] for wind speed v [km/s].
double effective_field(const AxionParams &axion, const HaloParams &halo, double v_km_s,
                       double gamma_hz_per_t = electron_gamma_hz_per_t);

} // namespace axionkit::halo
