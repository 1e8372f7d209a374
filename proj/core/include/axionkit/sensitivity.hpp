#pragma once

#include "axionkit/geometry.hpp"
#include "axionkit/halo.hpp"
#include "axionkit/signal.hpp"

#include <span>
#include <string>
#include <vector>

namespace axionkit::sensitivity {

enum class Stacking {
  //! SNR grows as sqrt(T_tot / T_cap) across segments, the stated overall
  //! sqrt(T_tot) law
  sqrt_total_time,
  //! incoherent power sum: SNR grows as (T_tot / T_seg)^{1/4}
  radiometer,
};

struct SearchConfig {
  double epsilon_safety = 0.5;
  double t_cap_s = 5e-4;
  double t_tot_s = 10.0 * 86400.0;
  double bandwidth_hz = 2.2e9;
  double alpha = 0.01;
  double n_sigma = 5.0;
  //! fiducial wind speed entering B_eff [km/s]; 1e-3 c
  double v_signal_km_s = 1e-3 * units::c_km_s;
  Stacking stacking = Stacking::sqrt_total_time;

  void validate() const;
};

enum class Regime { flat, tau_limited };

const char *to_string(Regime regime);

//! T_seg(nu) = min(epsilon tau_a(nu), T_cap).
double adaptive_segment(double nu_hz, const SearchConfig &cfg, const halo::HaloParams &halo);

//! Which branch of adaptive_segment binds.
Regime segment_regime(double nu_hz, const SearchConfig &cfg, const halo::HaloParams &halo);

struct Threshold {
  double n_trials = 0.0;
  double z = 0.0;
};

//! N_trials = BW T_seg and the one-sided Gaussian quantile at alpha / N_trials.
Threshold trials_threshold(double nu_hz, const SearchConfig &cfg, const halo::HaloParams &halo);

//! Same for an explicit trial count (>= 1).
double look_elsewhere_z(double alpha, double n_trials);

struct SensorPreset {
  std::string name;
  long n_spins = 10;
  double q_resonator = 1e4;
  double eta_b_t_per_rthz = 1e-15;
  int n_axes = 1;

  //! Copy of `qubit` with N, Q and eta_B replaced.
  signal::QubitParams apply(signal::QubitParams qubit) const;
};

SensorPreset current_preset();
SensorPreset future_preset();
//! "current" or "future"; anything else throws InvalidArgument.
SensorPreset preset_by_name(const std::string &name);

struct GainSelection {
  bool matched_weighting = false; //!< 1/G_daily
  bool three_axis = false;        //!< 1/G_3axis
  bool resource_sqrt_n = false;   //!< 1/sqrt(3) from three independent axes
  double extra_factor = 1.0;      //!< any further multiplicative gain

  static GainSelection none() { return {}; }
  static GainSelection all() { return {true, true, true, 1.0}; }
  //! "none", "all", or a comma list of matched, three_axis, sqrt_n.
  static GainSelection parse(const std::string &text);
};

//! Product of the selected gain factors (>= 1 for the geometric ones).
double gain_factor(const GainSelection &gains, const geometry::SiteGeometry &site);

struct SensitivityPoint {
  double mass_ueV = 0.0;
  double g_min = 0.0;
  Regime regime = Regime::flat;
  double t_seg_s = 0.0;
  double t_coh_s = 0.0;
  double n_trials = 0.0;
  double z_threshold = 0.0;
  double snr_required = 0.0;
};

struct SensitivityCurve {
  std::vector<SensitivityPoint> points;
  double gain_factor = 1.0;
  GainSelection gains;
  double eta_eff_t_per_rthz = 0.0; //!< eta_B / sqrt(N_spins)
};

//! Closed-form inversion of SNR(g) = SNR_required with
//!   SNR = (B_eff(g, v_signal) / eta_eff) sqrt(T_coh) * stacking(T_tot),
//!   T_coh = min(T_seg, tau_a), SNR_required = max(n_sigma, z_LEE),
//! divided by the gain factor. Power is summed over the whole line, so no
//! per-bin penalty appears. The grid must be non-empty, positive and sorted.
SensitivityCurve g_min_curve(std::span<const double> masses_ueV, const signal::QubitParams &qubit,
                             const halo::HaloParams &halo, const geometry::SiteGeometry &site,
                             const SearchConfig &cfg, const GainSelection &gains = {});

//! m_a f_a constant of the m_a-f_a relation: m_a = 5.7 ueV (1e12 GeV / f_a).
inline constexpr double dfsz_mass_fa_ueV_gev = 5.7e12;

//! C_e = sin^2(beta) / 3
double dfsz_coefficient(double tan_beta);

//! g_ae = C_e m_e / f_a at one mass.
double dfsz_coupling(double mass_ueV, double tan_beta);

struct DfszBand {
  std::vector<double> mass_ueV;
  std::vector<double> lower;     //!< smallest tan beta of the range
  std::vector<double> upper;     //!< largest tan beta of the range
  std::vector<double> benchmark; //!< tan beta = 1
};

DfszBand dfsz_band(std::span<const double> masses_ueV, double tan_beta_min = 0.28,
                   double tan_beta_max = 140.0);

//! n points log-spaced over [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

} // namespace axionkit::sensitivity
