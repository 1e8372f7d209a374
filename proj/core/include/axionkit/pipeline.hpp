#pragma once

#include "axionkit/geometry.hpp"
#include "axionkit/halo.hpp"
#include "axionkit/noise.hpp"
#include "axionkit/signal.hpp"
#include "axionkit/spectral.hpp"
#include "axionkit/timeseries.hpp"

#include <vector>

// Multi-step studies shared by the command line tool and the test suites.
namespace axionkit::pipeline {

//! Per sidereal day, least squares on {1, cos W*t, sin W*t} and
//! R_d = sqrt(mu^2 + (b^2 + c^2)/2). Days with fewer than 4 samples are
//! skipped; day k starts at t0 + k T_sid.
std::vector<double> measured_daily_rms(const TimeSeries &series,
                                       const geometry::EphemerisConstants &eph);

struct DailyRmsStudy {
  std::vector<double> day_time_s;   //!< middle of each day
  std::vector<double> theory;       //!< geometry-only R_d
  std::vector<double> theory_norm;  //!< divided by its mean over the run
  std::vector<double> mc_mean;      //!< mean of the normalised measured curves
  std::vector<double> mc_std;       //!< spread of one realisation per day
  std::vector<std::vector<double>> trials; //!< normalised measured curves
  double band_sigma = 5.0;
  double fraction_inside = 0.0;     //!< days with |mc_mean - theory_norm| <= band_sigma mc_std
};

//! Geometry-only signal (no speed factor) with `noise`, measured `trials`
//! times with segments 0..trials-1 of the noise seed.
DailyRmsStudy daily_rms_study(const geometry::SiteGeometry &site,
                              const geometry::EphemerisConstants &eph,
                              const halo::AxionParams &axion, const halo::HaloParams &halo,
                              const signal::QubitParams &qubit, const signal::NoiseConfig &noise,
                              int days, int samples_per_day, int trials, double band_sigma);

struct TripletMorphology {
  double f_star = 0.0;
  double f_plus = 0.0;
  double f_minus = 0.0;
  //! frequencies of the three strongest local maxima near f_star, ascending
  std::vector<double> peak_hz;
  bool peaks_at_triplet = false; //!< each within one bin of its target
  double spacing_lo_hz = 0.0;    //!< middle peak minus lower peak
  double spacing_hi_hz = 0.0;    //!< upper peak minus middle peak
  double power_star = 0.0;
  double power_plus = 0.0;
  double power_minus = 0.0;
  double side_to_center = 0.0;   //!< mean(P+, P-) / P*
  double resolution_hz = 0.0;
  double bin_hz = 0.0;
};

//! Peak bookkeeping around the sidereal line of a one-sided spectrum.
TripletMorphology triplet_morphology(const spectral::Spectrum &spectrum,
                                     const geometry::EphemerisConstants &eph);

} // namespace axionkit::pipeline
