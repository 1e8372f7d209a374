#pragma once

#include "axionkit/geometry.hpp"
#include "axionkit/timeseries.hpp"

#include <complex>
#include <span>
#include <vector>

namespace axionkit::spectral {

enum class WindowKind { rectangular, hann };

struct WindowSpec {
  WindowKind kind = WindowKind::hann;
  //! Segment length [s]; 0 means the whole record as a single segment.
  double segment_length_s = 0.0;
  double overlap = 0.5; //!< fraction of a segment shared with the next

  void validate() const;
};

//! Window taps of length n. Hann is the periodic (DFT-even) form.
std::vector<double> window_samples(WindowKind kind, std::size_t n);

//! Averaged modified periodogram. Real input gives a one-sided density with
//! DC and Nyquist not doubled; complex input gives a two-sided density with
//! frequencies from -fs/2 upwards.
struct Spectrum {
  double f0 = 0.0;
  double df = 0.0;
  std::vector<double> psd;
  WindowSpec window;
  std::size_t n_averages = 0;
  std::size_t segment_samples = 0;
  bool two_sided = false;
  double enbw_hz = 0.0; //!< equivalent noise bandwidth of one segment

  double frequency(std::size_t k) const { return f0 + static_cast<double>(k) * df; }
  //! Nearest bin to f, clamped to the valid range.
  std::size_t bin_of(double f) const;
};

//! Welch estimate. Throws if the segment is longer than the record.
Spectrum periodogram(const TimeSeries &series, const WindowSpec &window);

//! Rayleigh-style resolution factor: 1 for rectangular, 1.44 for Hann.
double resolution_factor(WindowKind kind);

//! Continuous-time window response for a segment of length T.
struct WindowResponse {
  WindowKind kind;
  double segment_length_s;
  double resolution_hz; //!< delta f_W = factor / T

  //! W(Omega) = integral_0^T w(t) exp(-i Omega t) dt
  std::complex<double> transform(double omega) const;
  //! Full width at half power of |W|^2 [Hz], found numerically.
  double half_power_width_hz() const;
};

//! Needs segment_length_s > 0.
WindowResponse window_response(const WindowSpec &window);

//! Integrated power (psd * df) within +/- half_width bins of the bin nearest f.
double line_power(const Spectrum &spectrum, double f, int half_width = 2);

//! Index of the largest bin within +/- search_bins of f.
std::size_t peak_near(const Spectrum &spectrum, double f, int search_bins);

//! Mean density over bins with exclude_bins < |k - k_f| <= span_bins.
double local_noise_level(const Spectrum &spectrum, double f, int exclude_bins, int span_bins);

//! Strict local maxima in [f_lo, f_hi], sorted by decreasing density.
std::vector<std::size_t> local_maxima(const Spectrum &spectrum, double f_lo, double f_hi);

struct TripletPhases {
  double psi_star = 0.0;
  double psi_annual = 0.0;
};

enum class TripletMode {
  //! Weighted least squares on cos(Omega_mu t - psi_mu) at the known phases.
  phase_locked,
  //! Powers only: epsilon_hat = 2 sqrt(mean(X+, X-) / X*).
  agnostic,
};

struct TripletResult {
  //! |sum_k w_k y_k exp(-i Omega_mu t_k)|^2 at the three frequencies
  double x_star = 0.0;
  double x_plus = 0.0;
  double x_minus = 0.0;
  double omega_star = 0.0;
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  //! Phase-locked amplitudes of cos(Omega_mu t - psi_mu); zero in agnostic mode.
  double a_star = 0.0;
  double a_plus = 0.0;
  double a_minus = 0.0;
  double epsilon_signed = 0.0; //!< (a+ + a-)/a*, sign kept
  double epsilon_hat = 0.0;
  double snr_star = 0.0;
  double snr_pm = 0.0;
  TripletMode mode = TripletMode::phase_locked;
};

//! Triplet statistic on a real baseband stream. `weights` may be empty
//! (all ones) or one weight per sample. The phase-locked mode also fits
//! a constant and the annual pair as nuisance terms, so the daily-mean
//! drift does not leak into the sidereal amplitudes.
TripletResult triplet_statistic(const TimeSeries &baseband,
                                const geometry::EphemerisConstants &eph,
                                const TripletPhases &phases, std::span<const double> weights = {},
                                TripletMode mode = TripletMode::phase_locked);

struct SnrEstimate {
  double snr_star = 0.0;
  double snr_pm = 0.0;
};

//! SNR* = A* sqrt(T_coh / S(Omega*)), SNR+- = (epsilon/2) SNR*.
SnrEstimate snr_estimate(double a_star, double psd_at_star, double t_coh, double epsilon);

//! min(T2, tau_c, T_obs).
double effective_coherence_time(double t2, double tau_c, double t_obs);

} // namespace axionkit::spectral
