#include "oracles.hpp"

#include "axionkit/error.hpp"
#include "axionkit/geometry.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace axionkit;
using geometry::EphemerisConstants;
using geometry::SiteGeometry;

namespace {

EphemerisConstants no_orbit() {
  EphemerisConstants e;
  e.v_orbit_km_s = 0.0;
  return e;
}

SiteGeometry pole() {
  SiteGeometry s;
  s.latitude_deg = 90.0;
  return s;
}

std::vector<double> year_grid(const EphemerisConstants &eph, int per_day) {
  const double dt = eph.sidereal_period() / per_day;
  const auto n = static_cast<std::size_t>(std::ceil(eph.annual_period() / dt)) + 1;
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = static_cast<double>(k) * dt;
  }
  return t;
}

} // namespace

TEST(Geometry, RotationsAreProperOrthonormal) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lat(-1.5, 1.5);
  std::uniform_real_distribution<double> ang(0.0, 6.3);
  for (int i = 0; i < 50; ++i) {
    for (const geometry::Mat3 &r :
         {geometry::equatorial_to_horizontal(lat(rng), ang(rng)),
          geometry::ecliptic_to_equatorial(ang(rng))}) {
      EXPECT_LT((r * r.transpose() - geometry::Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
    }
  }
}

TEST(Geometry, HorizontalRowsMatchLocalFrameOracle) {
  for (double lat : {-0.7, 0.1, 0.6964}) {
    for (double lst : {0.0, 1.3, 4.0}) {
      const auto r = geometry::equatorial_to_horizontal(lat, lst);
      const auto f = oracle::local_frame(lat, lst);
      EXPECT_LT((r.row(0).transpose() - f.east).norm(), 1e-12);
      EXPECT_LT((r.row(1).transpose() - f.north).norm(), 1e-12);
      EXPECT_LT((r.row(2).transpose() - f.up).norm(), 1e-12);
    }
  }
}

TEST(Geometry, PoleZenithHasNoSiderealWobble) {
  const auto site = pole();
  const auto eph = no_orbit();
  for (double t = 0.0; t < 2.0 * eph.sidereal_period(); t += 3917.0) {
    EXPECT_NEAR(geometry::projection(t, site, eph), 0.5, 1e-9) << t;
  }
}

TEST(Geometry, DirectionPeriodicInSiderealDayWithoutOrbit) {
  const SiteGeometry site;
  const auto eph = no_orbit();
  for (double t0 : {0.0, 12345.0, 3.0e6}) {
    const auto a = geometry::lab_wind(t0, site, eph);
    const auto b = geometry::lab_wind(t0 + eph.sidereal_period(), site, eph);
    EXPECT_LT((a.direction - b.direction).norm(), 1e-9);
    EXPECT_NEAR(geometry::projection(t0, site, eph),
                geometry::projection(t0 + 5.0 * eph.sidereal_period(), site, eph), 1e-9);
  }
}

TEST(Geometry, LabWindMatchesVectorSumOracle) {
  const SiteGeometry site;
  const EphemerisConstants eph;
  double lo = 1e9;
  double hi = 0.0;
  for (double t = 0.0; t < eph.annual_period(); t += 0.37 * 86400.0) {
    const auto w = geometry::lab_wind(t, site, eph);
    const Eigen::Vector3d v = oracle::lab_wind(
        t, site.latitude_deg * units::deg, site.lst0_rad, eph.sidereal_rate,
        site.wind_ra_deg * units::deg, site.wind_dec_deg * units::deg, eph.v_sun_km_s,
        eph.v_orbit_km_s, eph.annual_rate, eph.orbital_phase_rad, eph.obliquity_deg * units::deg);
    EXPECT_NEAR(w.speed_km_s, v.norm(), 1e-6);
    EXPECT_LT((w.direction - v.normalized()).norm(), 1e-9);
    lo = std::min(lo, w.speed_km_s);
    hi = std::max(hi, w.speed_km_s);
  }
  EXPECT_GE(lo, eph.v_sun_km_s - eph.v_orbit_km_s);
  EXPECT_LE(hi, eph.v_sun_km_s + eph.v_orbit_km_s);
  // the orbit is tilted against the wind, so the swing is real but not full
  EXPECT_GT(hi - lo, 10.0);
}

TEST(Geometry, ProjectionBoundedAndZeroForPerpendicularAxis) {
  const SiteGeometry site;
  const EphemerisConstants eph;
  for (double t = 0.0; t < 30.0 * 86400.0; t += 1111.0) {
    const double p = geometry::projection(t, site, eph);
    EXPECT_LE(std::abs(p), 1.0);
    const auto w = geometry::lab_wind(t, site, eph);
    const geometry::Vec3 axis = w.direction.cross(geometry::Vec3::UnitZ()).normalized();
    EXPECT_NEAR(geometry::projection(t, site, eph, axis), 0.0, 1e-12);
  }
  EXPECT_THROW(geometry::projection(0.0, site, eph, geometry::Vec3(1.0, 1.0, 0.0)),
               InvalidArgument);
}

TEST(Geometry, TimeAveragedProjectionIsP0) {
  const SiteGeometry site;
  const EphemerisConstants eph;
  const auto t = year_grid(eph, 96);
  const auto p = geometry::projection_series(site, eph, 0.0, t[1], t.size() - 1);
  double s = 0.0;
  for (double x : p) {
    s += x;
  }
  const double p0 = std::sin(site.latitude_deg * units::deg) * std::sin(site.wind_dec_deg * units::deg);
  EXPECT_NEAR(s / static_cast<double>(p.size()), p0, 0.01 * p0);
  EXPECT_NEAR(p0, 0.321, 0.005 * 0.321);
}

TEST(Geometry, NormalizedBetaCanExceedUnity) {
  SiteGeometry site;
  site.latitude_deg = 90.0;
  site.wind_dec_deg = 90.0;
  const EphemerisConstants eph;
  double top = 0.0;
  for (double t = 0.0; t < eph.annual_period(); t += 86400.0) {
    top = std::max(top, geometry::normalized_beta(t, site, eph, 230.0));
  }
  EXPECT_GT(top, 1.0);
}

TEST(Geometry, FitRoundTripRecoversCoefficients) {
  const EphemerisConstants eph;
  geometry::ModulationCoefficients truth;
  truth.c0 = 0.31;
  truth.c_star = 0.52;
  truth.c_annual = 0.04;
  truth.c_cross = -0.03;
  truth.psi_star = 1.1;
  truth.psi_annual = 4.2;
  const auto t = year_grid(eph, 48);
  std::vector<double> y(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    y[k] = truth.evaluate(t[k]);
  }
  const auto fit = geometry::fit_modulation_coefficients(t, y, eph);
  EXPECT_NEAR(fit.c0, truth.c0, 1e-6);
  EXPECT_NEAR(fit.c_star, truth.c_star, 1e-6);
  EXPECT_NEAR(fit.c_annual, truth.c_annual, 1e-6);
  EXPECT_NEAR(fit.c_cross, truth.c_cross, 1e-6);
  EXPECT_NEAR(fit.psi_star, truth.psi_star, 1e-6);
  EXPECT_NEAR(fit.psi_annual, truth.psi_annual, 1e-6);
  EXPECT_LT(fit.residual_rms, 1e-9);

  // fit -> synthesize -> fit
  for (std::size_t k = 0; k < t.size(); ++k) {
    y[k] = fit.evaluate(t[k]);
  }
  const auto again = geometry::fit_modulation_coefficients(t, y, eph);
  EXPECT_NEAR(again.c_cross, fit.c_cross, 1e-6);
  EXPECT_NEAR(again.c_star, fit.c_star, 1e-6);
}

TEST(Geometry, PoleHasNoSiderealCoefficients) {
  const auto c = geometry::fit_site(pole(), EphemerisConstants{});
  EXPECT_NEAR(c.c_star, 0.0, 1e-9);
  EXPECT_NEAR(c.c_cross, 0.0, 1e-9);
}

TEST(Geometry, FitMatchesDenseProjectionOracle) {
  const SiteGeometry site;
  const EphemerisConstants eph;
  const auto c = geometry::fit_site(site, eph);

  // demodulate a denser projection series over four years, which is within
  // 0.03 of a whole number of sidereal days, so plain averages barely leak
  const int per_day = 100;
  const double dt = eph.sidereal_period() / per_day;
  const auto n = static_cast<std::size_t>(4.0 * eph.annual_period() / dt);
  const auto p = geometry::projection_series(site, eph, 0.0, dt, n);
  std::complex<double> m0{0.0};
  std::complex<double> ms{0.0};
  std::complex<double> ma{0.0};
  std::complex<double> mp{0.0};
  std::complex<double> mm{0.0};
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    m0 += p[k];
    ms += p[k] * std::polar(1.0, -eph.sidereal_rate * t);
    ma += p[k] * std::polar(1.0, -eph.annual_rate * t);
    mp += p[k] * std::polar(1.0, -(eph.sidereal_rate + eph.annual_rate) * t);
    mm += p[k] * std::polar(1.0, -(eph.sidereal_rate - eph.annual_rate) * t);
  }
  const double nn = static_cast<double>(n);
  const double c0 = m0.real() / nn;
  const double c_star = 2.0 * std::abs(ms) / nn;
  const double c_annual = 2.0 * std::abs(ma) / nn;
  // the in-phase parts of both sidebands add up to the product coefficient;
  // the real triplet is not symmetric, so one sideband alone is not enough
  const double up = 2.0 * (mp * std::polar(1.0, -(std::arg(ms) + std::arg(ma)))).real() / nn;
  const double down = 2.0 * (mm * std::polar(1.0, -(std::arg(ms) - std::arg(ma)))).real() / nn;
  const double c_cross = up + down;

  EXPECT_NEAR(c.c0, c0, 0.01 * std::abs(c0));
  EXPECT_NEAR(c.c_star, c_star, 0.01 * c_star);
  EXPECT_NEAR(c.c_annual, c_annual, 0.01 * c_annual);
  EXPECT_NEAR(c.c_cross, c_cross, 0.01 * std::abs(c_cross));
}

TEST(Geometry, AnnualDepthInvariantUnderRescaling) {
  const SiteGeometry site;
  const EphemerisConstants eph;
  const auto t = year_grid(eph, 24);
  auto y = geometry::projection_series(site, eph, 0.0, t[1], t.size());
  const auto a = geometry::fit_modulation_coefficients(t, y, eph);
  for (auto &v : y) {
    v *= 7.5;
  }
  const auto b = geometry::fit_modulation_coefficients(t, y, eph);
  EXPECT_NEAR(a.annual_depth(), b.annual_depth(), 1e-12);
}

TEST(Geometry, FitErrorPaths) {
  const EphemerisConstants eph;
  std::vector<double> t(100, 0.0);
  std::vector<double> y(100, 1.0);
  geometry::FitOptions loose;
  loose.enforce_coverage = false;
  EXPECT_THROW(geometry::fit_modulation_coefficients(t, y, eph, loose), DegenerateFitError);
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = 600.0 * static_cast<double>(k);
  }
  EXPECT_THROW(geometry::fit_modulation_coefficients(t, y, eph), InvalidArgument);
  EXPECT_THROW(geometry::fit_modulation_coefficients(t, std::vector<double>(3), eph),
               InvalidArgument);
  geometry::ModulationCoefficients zero;
  EXPECT_THROW((void)zero.annual_depth(), NumericalError);
}

TEST(Geometry, EnvelopeIdentities) {
  geometry::ModulationCoefficients c;
  c.c0 = 0.3;
  c.c_star = -0.4;
  for (long d : {0L, 50L, 200L}) {
    const auto e = geometry::daily_envelope(d, c);
    EXPECT_DOUBLE_EQ(e.min, 0.3 - 0.4);
    EXPECT_DOUBLE_EQ(e.max, 0.3 + 0.4);
  }
  c.c_annual = 0.05;
  c.c_cross = 0.02;
  const long day = 123;
  c.psi_annual = c.annual_rate * geometry::day_midpoint(day, c);
  const auto e = geometry::daily_envelope(day, c);
  EXPECT_NEAR(e.min, 0.35 - std::abs(-0.4 + 0.02), 1e-12);
  EXPECT_NEAR(e.max, 0.35 + std::abs(-0.4 + 0.02), 1e-12);
}

TEST(Geometry, EnvelopeMatchesDenseDailyExtremes) {
  const SiteGeometry site;
  const EphemerisConstants eph;
  const auto c = geometry::fit_site(site, eph);
  const int per_day = 2000;
  const double dt = eph.sidereal_period() / per_day;
  for (long day : {0L, 91L, 182L, 300L}) {
    const double t0 = static_cast<double>(day) * eph.sidereal_period();
    const auto e = geometry::daily_envelope(day, c);

    // the four-term waveform itself: only the slow drift within one day
    // (c_annual Omega_earth x half a day, about 5e-4) separates the two
    double lo = 1e9;
    double hi = -1e9;
    for (int k = 0; k < per_day; ++k) {
      const double v = c.evaluate(t0 + k * dt);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_NEAR(e.min, lo, 1e-3) << day;
    EXPECT_NEAR(e.max, hi, 1e-3) << day;

    // the exact projection: the four-term form cannot follow the annual
    // phase wobble of the sidereal tone, so the bound is the fit residual
    const auto p = geometry::projection_series(site, eph, t0, dt, per_day);
    const auto [plo, phi] = std::minmax_element(p.begin(), p.end());
    EXPECT_NEAR(e.min, *plo, c.residual_rms) << day;
    EXPECT_NEAR(e.max, *phi, c.residual_rms) << day;
  }
}

TEST(Geometry, DailyRmsIdentitiesAndQuadrature) {
  geometry::ModulationCoefficients c;
  c.c_star = 0.6;
  EXPECT_NEAR(geometry::daily_rms(3, c), 0.6 / std::sqrt(2.0), 1e-15);
  c.c_star = 0.0;
  c.c0 = -0.45;
  EXPECT_NEAR(geometry::daily_rms(3, c), 0.45, 1e-15);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    c.c0 = u(rng);
    c.c_star = u(rng);
    c.c_annual = 0.1 * u(rng);
    c.c_cross = 0.1 * u(rng);
    c.psi_annual = 3.0 * (u(rng) + 1.0);
    const long day = i * 17;
    const double ts = geometry::day_midpoint(day, c);
    const double mu = c.daily_mean(ts);
    const double k = c.daily_amplitude(ts);
    const double ms = oracle::simpson(
                          [&](double ph) {
                            const double v = mu + k * std::cos(ph);
                            return v * v;
                          },
                          0.0, 2.0 * oracle::pi, 2000) /
                      (2.0 * oracle::pi);
    EXPECT_NEAR(geometry::daily_rms(day, c), std::sqrt(ms), 1e-10);
  }
}

TEST(Geometry, GainsAtReferenceSite) {
  const auto g = geometry::geometric_gains(SiteGeometry{}, 3);
  EXPECT_NEAR(g.p0, 0.321, 0.005 * 0.321);
  EXPECT_NEAR(g.mean_square_projection, 0.324, 0.005 * 0.324);
  ASSERT_TRUE(g.g_daily.has_value());
  EXPECT_NEAR(*g.g_daily, 1.77, 0.005 * 1.77);
  EXPECT_NEAR(g.g_3axis, 1.76, 0.005 * 1.76);
  EXPECT_NEAR(*g.g_total, 5.40, 0.005 * 5.40);
}

TEST(Geometry, GainsAtPoleAndEquator) {
  const auto g = geometry::geometric_gains(pole(), 3);
  EXPECT_NEAR(g.mean_square_projection, 0.25, 1e-15);
  EXPECT_NEAR(*g.g_daily, 1.0, 1e-15);

  SiteGeometry eq;
  eq.latitude_deg = 0.0;
  eq.wind_dec_deg = 0.0;
  const auto z = geometry::geometric_gains(eq, 3);
  EXPECT_EQ(z.p0, 0.0);
  EXPECT_TRUE(z.matched_gain_unbounded());
  EXPECT_FALSE(z.g_total.has_value());
  EXPECT_THROW(geometry::geometric_gains(eq, 0), InvalidArgument);
}

TEST(Geometry, ValidationAndNormalisation) {
  SiteGeometry s;
  s.latitude_deg = 91.0;
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = {};
  s.wind_ra_deg = -90.0;
  s.lst0_rad = -1.0;
  const auto n = s.normalized();
  EXPECT_DOUBLE_EQ(n.wind_ra_deg, 270.0);
  EXPECT_NEAR(n.lst0_rad, 2.0 * oracle::pi - 1.0, 1e-15);
  EphemerisConstants e;
  e.annual_rate = e.sidereal_rate * 2.0;
  EXPECT_THROW(e.validate(), InvalidArgument);
}

TEST(Geometry, HashIsStableAndSensitive) {
  const SiteGeometry s;
  const EphemerisConstants e;
  EXPECT_EQ(geometry::geometry_hash(s, e), geometry::geometry_hash(s, e));
  EXPECT_EQ(geometry::geometry_hash(s, e).size(), 16U);
  SiteGeometry t = s;
  t.latitude_deg += 1e-9;
  EXPECT_NE(geometry::geometry_hash(s, e), geometry::geometry_hash(t, e));
}
