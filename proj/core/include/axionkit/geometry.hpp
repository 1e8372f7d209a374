#pragma once

#include "axionkit/timeseries.hpp"
#include "axionkit/units.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace axionkit::geometry {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

//! Observing site, sensor pointing and galactic wind direction. Defaults are
//! the Beijing / zenith-pointing configuration.
struct SiteGeometry {
  double latitude_deg = 39.9042;
  double longitude_deg = 116.4074; //!< informational; LST0 already fixes the sidereal phase
  double wind_ra_deg = 270.0;
  double wind_dec_deg = 30.0;
  double elevation_deg = 90.0;
  double azimuth_deg = 0.0;          //!< measured from north through east
  double turntable_rate_rad_s = 0.0; //!< extra azimuth rotation of the sensor
  double lst0_rad = 0.0;             //!< local sidereal phase at t = 0

  //! Throws InvalidArgument on out-of-range latitude, declination or elevation.
  void validate() const;
  //! Copy with longitude, RA and azimuth wrapped to [0, 360) and LST0 to [0, 2pi).
  SiteGeometry normalized() const;
};

struct EphemerisConstants {
  double sidereal_rate = units::two_pi / units::sidereal_day_s; //!< Omega_star [rad/s]
  double annual_rate = units::two_pi / units::year_s;           //!< Omega_earth [rad/s]
  double v_sun_km_s = 230.0;
  double v_orbit_km_s = 30.0;
  double obliquity_deg = 23.44;
  double orbital_phase_rad = 0.0; //!< heliocentric longitude of Earth at t = 0

  double sidereal_frequency_hz() const { return sidereal_rate / units::two_pi; }
  double annual_frequency_hz() const { return annual_rate / units::two_pi; }
  double sidereal_period() const { return units::two_pi / sidereal_rate; }
  double annual_period() const { return units::two_pi / annual_rate; }

  void validate() const;
};

//! Equatorial -> local horizontal (rows: east, north, up).
Mat3 equatorial_to_horizontal(double latitude_rad, double lst_rad);

//! Ecliptic -> equatorial, a rotation about the vernal-equinox axis.
Mat3 ecliptic_to_equatorial(double obliquity_rad);

//! Unit vector of the galactic wind in equatorial coordinates.
Vec3 wind_direction_equatorial(const SiteGeometry &site);

//! Earth's heliocentric velocity [km/s], equatorial frame.
Vec3 orbital_velocity_equatorial(double t, const EphemerisConstants &eph);

double local_sidereal_phase(double t, const SiteGeometry &site, const EphemerisConstants &eph);

//! Sensor axis in the local (east, north, up) frame, including turntable rotation.
Vec3 sensor_axis(double t, const SiteGeometry &site);

struct LabWind {
  Vec3 direction; //!< unit vector, local east-north-up frame
  double speed_km_s;
};

//! v_lab(t) = v_sun w_hat + v_earth(t), rotated into the local frame.
LabWind lab_wind(double t, const SiteGeometry &site, const EphemerisConstants &eph);

//! cos theta(t) = v_hat_lab . axis, with an explicit unit axis (east-north-up).
double projection(double t, const SiteGeometry &site, const EphemerisConstants &eph,
                  const Vec3 &axis);
//! Same with the site's own sensor axis.
double projection(double t, const SiteGeometry &site, const EphemerisConstants &eph);

//! cos theta on a uniform grid t0 + k dt, k < n.
std::vector<double> projection_series(const SiteGeometry &site, const EphemerisConstants &eph,
                                      double t0, double dt, std::size_t n);

//! (v_lab(t)/v_ref) |cos theta(t)|, the normalised instantaneous |beta|/beta_0.
double normalized_beta(double t, const SiteGeometry &site, const EphemerisConstants &eph,
                       double v_ref_km_s);

//! c0 + c_star cos(W*t - psi*) + c_e cos(We t - psi_e) + c_x cos(W*t - psi*) cos(We t - psi_e)
struct ModulationCoefficients {
  double c0 = 0.0;
  double c_star = 0.0;
  double c_annual = 0.0;
  double c_cross = 0.0;
  double psi_star = 0.0;
  double psi_annual = 0.0;
  double sidereal_rate = units::two_pi / units::sidereal_day_s;
  double annual_rate = units::two_pi / units::year_s;
  double residual_rms = 0.0; //!< RMS of data minus this four-term model

  double evaluate(double t) const;
  //! mu_d(t) = c0 + c_annual cos(We t - psi_e)
  double daily_mean(double t) const;
  //! K(t) = c_star + c_cross cos(We t - psi_e)
  double daily_amplitude(double t) const;
  //! epsilon = c_cross / c_star, the annual depth of the sidereal tone
  double annual_depth() const;
};

struct FitOptions {
  //! Require >= 1 year of span and >= 8 samples per sidereal day.
  bool enforce_coverage = true;
  //! Relative pivot threshold below which the design matrix counts as rank deficient.
  double rank_tolerance = 1e-9;
  //! Extra annual harmonics 2..(1+n) fitted as nuisance terms of the daily
  //! mean. Without them the slow harmonics of v_hat leak into the sidereal
  //! columns at the 1e-5 level because a year is not a whole number of days.
  int nuisance_harmonics = 6;
};

//! Least squares on {1, cos/sin W*t, cos/sin We t, the four products} plus
//! nuisance harmonics, then projection onto the four-term form. Throws DegenerateFitError on rank loss.
ModulationCoefficients fit_modulation_coefficients(std::span<const double> t,
                                                   std::span<const double> values,
                                                   const EphemerisConstants &eph,
                                                   const FitOptions &options = {});
ModulationCoefficients fit_modulation_coefficients(const TimeSeries &series,
                                                   const EphemerisConstants &eph,
                                                   const FitOptions &options = {});

//! Convenience: sample the site's projection for a year at `per_day` samples
//! per sidereal day and fit it.
ModulationCoefficients fit_site(const SiteGeometry &site, const EphemerisConstants &eph,
                                int per_day = 48);

//! Slow time stamped on sidereal day `day`: the middle of that day.
double day_midpoint(long day, const ModulationCoefficients &coeffs);

struct Envelope {
  double min;
  double max;
};

//! mu_d(t) -/+ |K(t)| evaluated at the middle of sidereal day `day`.
Envelope daily_envelope(long day, const ModulationCoefficients &coeffs);
//! sqrt(mu_d^2 + K^2/2) at the middle of sidereal day `day`.
double daily_rms(long day, const ModulationCoefficients &coeffs);
//! Same at an explicit slow time t.
double daily_rms_at(double t, const ModulationCoefficients &coeffs);

struct GeometricGains {
  double p0 = 0.0;                     //!< sin(lat) sin(dec_w)
  double mean_square_projection = 0.0; //!< p0^2 + (cos(lat) cos(dec_w))^2 / 2
  std::optional<double> g_daily;       //!< empty when p0 == 0
  double g_3axis = 0.0;
  std::optional<double> g_total;       //!< sqrt(N) g_daily g_3axis
  int n_axes = 3;

  //! True when p0 vanishes and matched weighting gain is unbounded.
  bool matched_gain_unbounded() const { return !g_daily.has_value(); }
};

GeometricGains geometric_gains(const SiteGeometry &site, int n_axes = 3);

//! Stable hex digest of the geometry and ephemeris parameters (FNV-1a).
std::string geometry_hash(const SiteGeometry &site, const EphemerisConstants &eph);

} // namespace axionkit::geometry
