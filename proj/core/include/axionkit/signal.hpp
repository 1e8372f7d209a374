#pragma once

#include "axionkit/geometry.hpp"
#include "axionkit/halo.hpp"
#include "axionkit/noise.hpp"
#include "axionkit/timeseries.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace axionkit::signal {

//! Spin-qubit sensor parameters (current-generation defaults).
struct QubitParams {
  double gamma_hz_per_t = 28.0e9;
  double t1_s = 1e-3;
  double t2_s = 100e-6;
  double b0_t = 0.5;
  std::optional<double> omega0_rad_s; //!< overrides 2 pi gamma B0 when set
  long n_spins = 10;
  double eta_b_t_per_rthz = 1e-15;    //!< per-qubit field sensitivity
  double q_resonator = 1e4;           //!< carried as metadata only

  //! Larmor angular frequency [rad/s].
  double omega0() const;
  //! Throws unless all positive and T2 <= 2 T1.
  void validate() const;
};

//! beta_loc = (gamma_e B_eff(v) / m_a) cos_theta, with both sides as angular
//! frequencies.
double modulation_index(const halo::AxionParams &axion, const halo::HaloParams &halo,
                        const QubitParams &qubit, double cos_theta, double v_km_s);

//! beta_0: the modulation index at the reference speed with cos_theta = 1.
double reference_modulation_index(const halo::AxionParams &axion, const halo::HaloParams &halo,
                                  const QubitParams &qubit);

//! <sigma_x(t)> = cos(omega0 t + beta_loc sin(omega_mod t + phase) + phi0).
double spin_expectation(double t, double omega0, double beta_loc, double omega_mod,
                        double phase, double phi0);
//! Same, taking omega_mod and phase from the axion.
double spin_expectation(double t, double omega0, double beta_loc, const halo::AxionParams &axion,
                        double phi0);

//! Short carrier-level FM record, sampled at dt.
TimeSeries synthesize_fm_record(double omega0, double beta_loc, double omega_mod, double phase,
                                double phi0, double dt, std::size_t n);

//! |J_n(beta)| sideband weights for n = 0..n_max (signed J_n values).
std::vector<double> bessel_sideband_table(double beta, int n_max);

enum class SignalSource {
  geometry,          //!< exact projection from the rotation chain
  coefficient_model, //!< mu_d(t) + K(t) cos(W* t - psi*) from fitted coefficients
};

struct SynthesisRequest {
  double t0_s = 0.0;
  double span_s = 365.25 * 86400.0;
  double dt_s = 600.0;
  SignalSource source = SignalSource::geometry;
  //! multiply by v_lab(t)/v_ref
  bool speed_factor = true;
  //! coefficient model only: replace c_cross by epsilon * c_star
  std::optional<double> epsilon_override;
  //! coefficient model only: use these instead of fitting the site
  std::optional<geometry::ModulationCoefficients> coefficients;
  //! scale by beta_0 instead of reporting beta/beta_0
  bool absolute_units = false;
  //! segment index mixed into every noise seed (Monte Carlo trial number)
  std::uint64_t segment = 0;
};

//! Baseband observable beta(t)/beta_0 with additive white, 1/f and telegraph
//! noise, optionally binarised through the readout channel. Deterministic
//! given (noise.seed, request.segment).
TimeSeries synthesize_observable(const geometry::SiteGeometry &site,
                                 const geometry::EphemerisConstants &eph,
                                 const halo::AxionParams &axion, const halo::HaloParams &halo,
                                 const QubitParams &qubit, const NoiseConfig &noise,
                                 const SynthesisRequest &request);

//! Noise-free signal part only, the same model as synthesize_observable.
std::vector<double> synthesize_signal(const geometry::SiteGeometry &site,
                                      const geometry::EphemerisConstants &eph,
                                      const halo::HaloParams &halo,
                                      const SynthesisRequest &request, std::size_t n);

struct HeterodyneOptions {
  double stopband_db = 70.0;
  //! transition band width as a fraction of the bandwidth
  double transition_fraction = 0.2;
};

//! Mix down by f_center, low-pass to `bandwidth` (full width, centred on
//! zero) with a Kaiser-windowed linear-phase FIR and decimate. Real input is
//! scaled by 2 so an in-band tone keeps its amplitude. Output time stamps
//! are the filter centres, so the phase of an in-band tone is preserved.
TimeSeries heterodyne(const TimeSeries &series, double f_center, double bandwidth,
                      const HeterodyneOptions &options = {});

} // namespace axionkit::signal
