#include "axionkit/geometry.hpp"

#include "axionkit/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace axionkit::geometry {

namespace {

double wrap_degrees(double deg) {
  double out = std::fmod(deg, 360.0);
  if (out < 0.0) {
    out += 360.0;
  }
  return out;
}

double wrap_two_pi(double rad) {
  double out = std::fmod(rad, units::two_pi);
  if (out < 0.0) {
    out += units::two_pi;
  }
  return out;
}

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) {
      return false;
    }
  }
  return true;
}

} // namespace

void SiteGeometry::validate() const {
  if (!finite_all({latitude_deg, longitude_deg, wind_ra_deg, wind_dec_deg, elevation_deg,
                   azimuth_deg, turntable_rate_rad_s, lst0_rad})) {
    throw InvalidArgument("site geometry: all angles must be finite");
  }
  if (std::abs(latitude_deg) > 90.0) {
    throw InvalidArgument("site geometry: |latitude| must not exceed 90 deg");
  }
  if (std::abs(wind_dec_deg) > 90.0) {
    throw InvalidArgument("site geometry: |wind declination| must not exceed 90 deg");
  }
  if (std::abs(elevation_deg) > 90.0) {
    throw InvalidArgument("site geometry: elevation must lie in [-90, 90] deg");
  }
}

SiteGeometry SiteGeometry::normalized() const {
  validate();
  SiteGeometry out = *this;
  out.longitude_deg = wrap_degrees(longitude_deg);
  out.wind_ra_deg = wrap_degrees(wind_ra_deg);
  out.azimuth_deg = wrap_degrees(azimuth_deg);
  out.lst0_rad = wrap_two_pi(lst0_rad);
  return out;
}

void EphemerisConstants::validate() const {
  if (!finite_all({sidereal_rate, annual_rate, v_sun_km_s, v_orbit_km_s, obliquity_deg,
                   orbital_phase_rad})) {
    throw InvalidArgument("ephemeris: all constants must be finite");
  }
  if (!(annual_rate > 0.0 && sidereal_rate > annual_rate)) {
    throw InvalidArgument("ephemeris: require Omega_star > Omega_earth > 0");
  }
  if (v_sun_km_s < 0.0 || v_orbit_km_s < 0.0) {
    throw InvalidArgument("ephemeris: speeds must be non-negative");
  }
  if (v_sun_km_s + v_orbit_km_s <= 0.0) {
    throw InvalidArgument("ephemeris: wind speed vanishes identically");
  }
}

Mat3 equatorial_to_horizontal(double latitude_rad, double lst_rad) {
  const double sl = std::sin(latitude_rad);
  const double cl = std::cos(latitude_rad);
  const double sh = std::sin(lst_rad);
  const double ch = std::cos(lst_rad);
  Mat3 r;
  r << -sh, ch, 0.0,             // east
      -sl * ch, -sl * sh, cl,    // north
      cl * ch, cl * sh, sl;      // up
  return r;
}

Mat3 ecliptic_to_equatorial(double obliquity_rad) {
  const double se = std::sin(obliquity_rad);
  const double ce = std::cos(obliquity_rad);
  Mat3 r;
  r << 1.0, 0.0, 0.0,
      0.0, ce, -se,
      0.0, se, ce;
  return r;
}

Vec3 wind_direction_equatorial(const SiteGeometry &site) {
  const double ra = site.wind_ra_deg * units::deg;
  const double dec = site.wind_dec_deg * units::deg;
  return {std::cos(dec) * std::cos(ra), std::cos(dec) * std::sin(ra), std::sin(dec)};
}

Vec3 orbital_velocity_equatorial(double t, const EphemerisConstants &eph) {
  const double longitude = eph.annual_rate * t + eph.orbital_phase_rad;
  const Vec3 ecliptic{-std::sin(longitude), std::cos(longitude), 0.0};
  return eph.v_orbit_km_s * (ecliptic_to_equatorial(eph.obliquity_deg * units::deg) * ecliptic);
}

double local_sidereal_phase(double t, const SiteGeometry &site, const EphemerisConstants &eph) {
  return site.lst0_rad + eph.sidereal_rate * t;
}

Vec3 sensor_axis(double t, const SiteGeometry &site) {
  const double el = site.elevation_deg * units::deg;
  const double az = site.azimuth_deg * units::deg + site.turntable_rate_rad_s * t;
  return {std::cos(el) * std::sin(az), std::cos(el) * std::cos(az), std::sin(el)};
}

LabWind lab_wind(double t, const SiteGeometry &site, const EphemerisConstants &eph) {
  const Vec3 v_eq =
      eph.v_sun_km_s * wind_direction_equatorial(site) + orbital_velocity_equatorial(t, eph);
  const double speed = v_eq.norm();
  if (!(speed > 0.0)) {
    throw NumericalError("lab_wind: lab-frame wind speed vanished");
  }
  const Mat3 to_local =
      equatorial_to_horizontal(site.latitude_deg * units::deg, local_sidereal_phase(t, site, eph));
  return {to_local * (v_eq / speed), speed};
}

double projection(double t, const SiteGeometry &site, const EphemerisConstants &eph,
                  const Vec3 &axis) {
  const double norm = axis.norm();
  if (!(std::abs(norm - 1.0) < 1e-9)) {
    throw InvalidArgument("projection: sensor axis must be a unit vector");
  }
  const double value = lab_wind(t, site, eph).direction.dot(axis);
  return std::clamp(value, -1.0, 1.0);
}

double projection(double t, const SiteGeometry &site, const EphemerisConstants &eph) {
  return projection(t, site, eph, sensor_axis(t, site));
}

std::vector<double> projection_series(const SiteGeometry &site, const EphemerisConstants &eph,
                                      double t0, double dt, std::size_t n) {
  site.validate();
  eph.validate();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = projection(t0 + static_cast<double>(k) * dt, site, eph);
  }
  return out;
}

double normalized_beta(double t, const SiteGeometry &site, const EphemerisConstants &eph,
                       double v_ref_km_s) {
  const LabWind wind = lab_wind(t, site, eph);
  return wind.speed_km_s / v_ref_km_s * std::abs(wind.direction.dot(sensor_axis(t, site)));
}

double ModulationCoefficients::daily_mean(double t) const {
  return c0 + c_annual * std::cos(annual_rate * t - psi_annual);
}

double ModulationCoefficients::daily_amplitude(double t) const {
  return c_star + c_cross * std::cos(annual_rate * t - psi_annual);
}

double ModulationCoefficients::evaluate(double t) const {
  return daily_mean(t) + daily_amplitude(t) * std::cos(sidereal_rate * t - psi_star);
}

double ModulationCoefficients::annual_depth() const {
  if (c_star == 0.0) {
    throw NumericalError("annual_depth: c_star vanishes, depth undefined");
  }
  return c_cross / c_star;
}

ModulationCoefficients fit_modulation_coefficients(std::span<const double> t,
                                                   std::span<const double> values,
                                                   const EphemerisConstants &eph,
                                                   const FitOptions &options) {
  eph.validate();
  if (t.size() != values.size()) {
    throw InvalidArgument("fit_modulation_coefficients: time and value lengths differ");
  }
  if (options.nuisance_harmonics < 0) {
    throw InvalidArgument("fit_modulation_coefficients: nuisance_harmonics must be >= 0");
  }
  const Eigen::Index n_basis = 9 + 2 * options.nuisance_harmonics;
  const auto n = static_cast<Eigen::Index>(t.size());
  if (n < n_basis) {
    throw InvalidArgument("fit_modulation_coefficients: fewer samples than basis functions");
  }
  if (options.enforce_coverage) {
    const double span = t.back() - t.front();
    const double mean_dt = span / static_cast<double>(n - 1);
    // allow the last sample to stop one step short of a full year
    if (span + 1.5 * mean_dt < eph.annual_period()) {
      throw InvalidArgument("fit_modulation_coefficients: series must span at least one year");
    }
    if (mean_dt > eph.sidereal_period() / 8.0) {
      throw InvalidArgument(
          "fit_modulation_coefficients: need at least 8 samples per sidereal day");
    }
  }

  Eigen::MatrixXd design(n, n_basis);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double tk = t[static_cast<std::size_t>(k)];
    const double cs = std::cos(eph.sidereal_rate * tk);
    const double ss = std::sin(eph.sidereal_rate * tk);
    const double ca = std::cos(eph.annual_rate * tk);
    const double sa = std::sin(eph.annual_rate * tk);
    design.row(k).head<9>() << 1.0, cs, ss, ca, sa, cs * ca, cs * sa, ss * ca, ss * sa;
    for (int h = 0; h < options.nuisance_harmonics; ++h) {
      const double w = static_cast<double>(h + 2) * eph.annual_rate * tk;
      design(k, 9 + 2 * h) = std::cos(w);
      design(k, 10 + 2 * h) = std::sin(w);
    }
    rhs(k) = values[static_cast<std::size_t>(k)];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(options.rank_tolerance);
  if (qr.rank() < n_basis) {
    throw DegenerateFitError("fit_modulation_coefficients: design matrix is rank deficient (rank " +
                             std::to_string(qr.rank()) + " of " +
                             std::to_string(n_basis) + ")");
  }
  const Eigen::VectorXd a = qr.solve(rhs);

  ModulationCoefficients out;
  out.sidereal_rate = eph.sidereal_rate;
  out.annual_rate = eph.annual_rate;
  out.c0 = a(0);
  out.c_star = std::hypot(a(1), a(2));
  out.psi_star = wrap_two_pi(std::atan2(a(2), a(1)));
  out.c_annual = std::hypot(a(3), a(4));
  out.psi_annual = wrap_two_pi(std::atan2(a(4), a(3)));
  // project the 2x2 product block onto the in-phase direction u_star u_annual^T
  Eigen::Matrix2d cross;
  cross << a(5), a(6), a(7), a(8);
  const Eigen::Vector2d u_star{std::cos(out.psi_star), std::sin(out.psi_star)};
  const Eigen::Vector2d u_annual{std::cos(out.psi_annual), std::sin(out.psi_annual)};
  out.c_cross = u_star.dot(cross * u_annual);

  double sum_sq = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double r = values[k] - out.evaluate(t[k]);
    sum_sq += r * r;
  }
  out.residual_rms = std::sqrt(sum_sq / static_cast<double>(t.size()));
  return out;
}

ModulationCoefficients fit_modulation_coefficients(const TimeSeries &series,
                                                   const EphemerisConstants &eph,
                                                   const FitOptions &options) {
  std::vector<double> t(series.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = series.time(k);
  }
  return fit_modulation_coefficients(t, series.real(), eph, options);
}

ModulationCoefficients fit_site(const SiteGeometry &site, const EphemerisConstants &eph,
                                int per_day) {
  if (per_day < 8) {
    throw InvalidArgument("fit_site: need at least 8 samples per sidereal day");
  }
  const double dt = eph.sidereal_period() / per_day;
  const auto n = static_cast<std::size_t>(std::ceil(eph.annual_period() / dt)) + 1;
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = static_cast<double>(k) * dt;
  }
  const auto values = projection_series(site, eph, 0.0, dt, n);
  return fit_modulation_coefficients(t, values, eph);
}

double day_midpoint(long day, const ModulationCoefficients &coeffs) {
  return (static_cast<double>(day) + 0.5) * units::two_pi / coeffs.sidereal_rate;
}

Envelope daily_envelope(long day, const ModulationCoefficients &coeffs) {
  const double t = day_midpoint(day, coeffs);
  const double mu = coeffs.daily_mean(t);
  const double k = std::abs(coeffs.daily_amplitude(t));
  return {mu - k, mu + k};
}

double daily_rms_at(double t, const ModulationCoefficients &coeffs) {
  const double mu = coeffs.daily_mean(t);
  const double k = coeffs.daily_amplitude(t);
  return std::sqrt(mu * mu + 0.5 * k * k);
}

double daily_rms(long day, const ModulationCoefficients &coeffs) {
  return daily_rms_at(day_midpoint(day, coeffs), coeffs);
}

GeometricGains geometric_gains(const SiteGeometry &site, int n_axes) {
  site.validate();
  if (n_axes < 1) {
    throw InvalidArgument("geometric_gains: n_axes must be >= 1");
  }
  const double lat = site.latitude_deg * units::deg;
  const double dec = site.wind_dec_deg * units::deg;
  GeometricGains out;
  out.n_axes = n_axes;
  out.p0 = std::sin(lat) * std::sin(dec);
  const double daily = std::cos(lat) * std::cos(dec);
  out.mean_square_projection = out.p0 * out.p0 + 0.5 * daily * daily;
  const double rms = std::sqrt(out.mean_square_projection);
  out.g_3axis = 1.0 / rms;
  if (std::abs(out.p0) > 1e-12) {
    out.g_daily = rms / std::abs(out.p0);
    out.g_total = std::sqrt(static_cast<double>(n_axes)) * (*out.g_daily) * out.g_3axis;
  }
  return out;
}

std::string geometry_hash(const SiteGeometry &site, const EphemerisConstants &eph) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  };
  for (double x : {site.latitude_deg, site.longitude_deg, site.wind_ra_deg, site.wind_dec_deg,
                   site.elevation_deg, site.azimuth_deg, site.turntable_rate_rad_s, site.lst0_rad,
                   eph.sidereal_rate, eph.annual_rate, eph.v_sun_km_s, eph.v_orbit_km_s,
                   eph.obliquity_deg, eph.orbital_phase_rad}) {
    mix(x);
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace axionkit::geometry
