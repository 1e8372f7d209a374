#include "axionkit/signal.hpp"

#include "axionkit/error.hpp"
#include "axionkit/special.hpp"
#include "axionkit/units.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace axionkit::signal {

double QubitParams::omega0() const {
  if (omega0_rad_s) {
    return *omega0_rad_s;
  }
  return units::two_pi * gamma_hz_per_t * b0_t;
}

void QubitParams::validate() const {
  for (double x : {gamma_hz_per_t, t1_s, t2_s, b0_t, eta_b_t_per_rthz, q_resonator}) {
    if (!std::isfinite(x) || x <= 0.0) {
      throw InvalidArgument("qubit: parameters must be finite and positive");
    }
  }
  if (omega0_rad_s && !(std::isfinite(*omega0_rad_s) && *omega0_rad_s > 0.0)) {
    throw InvalidArgument("qubit: omega0 override must be positive");
  }
  if (n_spins < 1) {
    throw InvalidArgument("qubit: n_spins must be >= 1");
  }
  if (t2_s > 2.0 * t1_s) {
    throw InvalidArgument("qubit: T2 must not exceed 2 T1");
  }
}

double modulation_index(const halo::AxionParams &axion, const halo::HaloParams &halo,
                        const QubitParams &qubit, double cos_theta, double v_km_s) {
  qubit.validate();
  const double b_eff = halo::effective_field(axion, halo, v_km_s, qubit.gamma_hz_per_t);
  const double delta_omega = units::two_pi * qubit.gamma_hz_per_t * b_eff;
  return delta_omega / axion.angular_frequency() * cos_theta;
}

double reference_modulation_index(const halo::AxionParams &axion, const halo::HaloParams &halo,
                                  const QubitParams &qubit) {
  return modulation_index(axion, halo, qubit, 1.0, halo.v_ref_km_s);
}

double spin_expectation(double t, double omega0, double beta_loc, double omega_mod,
                        double phase, double phi0) {
  return std::cos(omega0 * t + beta_loc * std::sin(omega_mod * t + phase) + phi0);
}

double spin_expectation(double t, double omega0, double beta_loc, const halo::AxionParams &axion,
                        double phi0) {
  return spin_expectation(t, omega0, beta_loc, axion.angular_frequency(), axion.phase_rad, phi0);
}

TimeSeries synthesize_fm_record(double omega0, double beta_loc, double omega_mod, double phase,
                                double phi0, double dt, std::size_t n) {
  if (!std::isfinite(beta_loc)) {
    throw InvalidArgument("synthesize_fm_record: beta_loc must be finite");
  }
  std::vector<double> samples(n);
  for (std::size_t k = 0; k < n; ++k) {
    samples[k] =
        spin_expectation(static_cast<double>(k) * dt, omega0, beta_loc, omega_mod, phase, phi0);
  }
  SeriesMeta meta;
  meta.source = "fm_record";
  meta.extra = {{"omega0", omega0}, {"beta_loc", beta_loc}, {"omega_mod", omega_mod},
                {"phase", phase}, {"phi0", phi0}};
  return TimeSeries(0.0, dt, std::move(samples), std::move(meta));
}

std::vector<double> bessel_sideband_table(double beta, int n_max) {
  return special::bessel_j_sequence(beta, n_max);
}

namespace {

void check_sampling(const SynthesisRequest &request, const geometry::EphemerisConstants &eph) {
  if (!(request.dt_s > 0.0) || !std::isfinite(request.dt_s)) {
    throw InvalidArgument("synthesize: dt must be positive");
  }
  if (!(request.span_s > 0.0) || !std::isfinite(request.span_s)) {
    throw InvalidArgument("synthesize: span must be positive");
  }
  if (request.dt_s > 0.1 * eph.sidereal_period()) {
    throw AliasingError("synthesize: dt exceeds 0.1 sidereal periods; the daily tone would alias");
  }
  constexpr double max_samples = 1e9;
  if (request.span_s / request.dt_s > max_samples) {
    throw InvalidArgument("synthesize: span/dt exceeds the 1e9-sample guard");
  }
}

std::size_t sample_count(const SynthesisRequest &request) {
  const auto n = static_cast<std::size_t>(std::llround(request.span_s / request.dt_s));
  if (n < 2) {
    throw InvalidArgument("synthesize: span must cover at least two samples");
  }
  return n;
}

} // namespace

std::vector<double> synthesize_signal(const geometry::SiteGeometry &site,
                                      const geometry::EphemerisConstants &eph,
                                      const halo::HaloParams &halo,
                                      const SynthesisRequest &request, std::size_t n) {
  site.validate();
  eph.validate();
  halo.validate();

  std::optional<geometry::ModulationCoefficients> coeffs;
  if (request.source == SignalSource::coefficient_model) {
    coeffs = request.coefficients ? *request.coefficients : geometry::fit_site(site, eph);
    if (request.epsilon_override) {
      coeffs->c_cross = *request.epsilon_override * coeffs->c_star;
    }
  }

  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = request.t0_s + static_cast<double>(k) * request.dt_s;
    double value = 0.0;
    double speed = 0.0;
    if (coeffs) {
      value = coeffs->evaluate(t);
      if (request.speed_factor) {
        speed = geometry::lab_wind(t, site, eph).speed_km_s;
      }
    } else {
      const auto wind = geometry::lab_wind(t, site, eph);
      value = wind.direction.dot(geometry::sensor_axis(t, site));
      speed = wind.speed_km_s;
    }
    if (request.speed_factor) {
      value *= speed / halo.v_ref_km_s;
    }
    out[k] = value;
  }
  return out;
}

TimeSeries synthesize_observable(const geometry::SiteGeometry &site,
                                 const geometry::EphemerisConstants &eph,
                                 const halo::AxionParams &axion, const halo::HaloParams &halo,
                                 const QubitParams &qubit, const NoiseConfig &noise,
                                 const SynthesisRequest &request) {
  axion.validate();
  qubit.validate();
  noise.validate();
  check_sampling(request, eph);
  const std::size_t n = sample_count(request);

  std::vector<double> samples = synthesize_signal(site, eph, halo, request, n);

  const double dt = request.dt_s;
  if (noise.white_psd > 0.0) {
    auto engine = make_engine(noise.seed, NoiseStream::white, request.segment);
    const auto w = white_noise(n, dt, noise.white_psd, engine);
    for (std::size_t k = 0; k < n; ++k) {
      samples[k] += w[k];
    }
  }
  if (noise.pink_amplitude > 0.0) {
    auto engine = make_engine(noise.seed, NoiseStream::pink, request.segment);
    const auto p = power_law_noise(n, dt, noise.pink_amplitude, noise.pink_exponent, engine);
    for (std::size_t k = 0; k < n; ++k) {
      samples[k] += p[k];
    }
  }
  if (noise.rtn_amplitude > 0.0) {
    auto engine = make_engine(noise.seed, NoiseStream::telegraph, request.segment);
    const auto r = telegraph_noise(n, dt, noise.rtn_amplitude, noise.rtn_rate_hz, engine);
    for (std::size_t k = 0; k < n; ++k) {
      samples[k] += r[k];
    }
  }
  if (noise.readout_enabled) {
    auto engine = make_engine(noise.seed, NoiseStream::readout, request.segment);
    ReadoutChannel channel{noise.readout_f0, noise.readout_f1, qubit.n_spins,
                           noise.readout_full_scale};
    apply_readout(samples, channel, engine);
  }

  const double beta0 = reference_modulation_index(axion, halo, qubit);
  if (request.absolute_units) {
    for (auto &x : samples) {
      x *= beta0;
    }
  }

  SeriesMeta meta;
  meta.source = request.source == SignalSource::geometry ? "synthesize_observable/geometry"
                                                         : "synthesize_observable/coefficients";
  meta.geometry_hash = geometry::geometry_hash(site, eph);
  if (!noise.is_silent()) {
    meta.seed = noise.seed;
  }
  meta.axion_mass_ueV = axion.mass_ueV;
  meta.g_ae = axion.g_ae;
  meta.units = request.absolute_units ? "beta" : "beta/beta0";
  meta.extra = {{"beta0", beta0},
                {"segment", request.segment},
                {"speed_factor", request.speed_factor},
                {"v_ref_km_s", halo.v_ref_km_s}};
  if (request.epsilon_override) {
    meta.extra["epsilon_override"] = *request.epsilon_override;
  }
  return TimeSeries(request.t0_s, dt, std::move(samples), std::move(meta));
}

namespace {

std::vector<double> kaiser_lowpass(double cutoff_over_fs, double transition_over_fs,
                                   double stopband_db) {
  const double a = stopband_db;
  const double beta = a > 50.0   ? 0.1102 * (a - 8.7)
                      : a > 21.0 ? 0.5842 * std::pow(a - 21.0, 0.4) + 0.07886 * (a - 21.0)
                                 : 0.0;
  auto taps = static_cast<std::size_t>(
      std::ceil((a - 7.95) / (2.285 * units::two_pi * transition_over_fs)) + 1.0);
  taps |= 1U; // odd length, integer group delay
  const double centre = 0.5 * static_cast<double>(taps - 1);
  const double i0_beta = std::cyl_bessel_i(0.0, beta);
  std::vector<double> h(taps);
  double sum = 0.0;
  for (std::size_t m = 0; m < taps; ++m) {
    const double x = static_cast<double>(m) - centre;
    const double arg = units::two_pi * cutoff_over_fs * x;
    const double sinc = (x == 0.0) ? 1.0 : std::sin(arg) / arg;
    const double r = x / centre;
    const double w = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0_beta;
    h[m] = sinc * w;
    sum += h[m];
  }
  for (auto &v : h) {
    v /= sum;
  }
  return h;
}

} // namespace

TimeSeries heterodyne(const TimeSeries &series, double f_center, double bandwidth,
                      const HeterodyneOptions &options) {
  const double fs = 1.0 / series.dt();
  const double nyquist = 0.5 * fs;
  if (!(f_center > 0.0) || !(f_center < nyquist)) {
    throw InvalidArgument("heterodyne: f_center must lie strictly inside (0, Nyquist)");
  }
  if (!(bandwidth > 0.0) || !(bandwidth < 2.0 * f_center)) {
    throw InvalidArgument("heterodyne: bandwidth must lie in (0, 2 f_center)");
  }
  if (!(options.transition_fraction > 0.0) || !(options.stopband_db > 20.0)) {
    throw InvalidArgument("heterodyne: invalid filter options");
  }
  const double transition = options.transition_fraction * bandwidth;
  if (0.5 * bandwidth + transition > nyquist) {
    throw InvalidArgument("heterodyne: bandwidth too wide for the sampling rate");
  }

  const auto h = kaiser_lowpass(0.5 * bandwidth / fs, transition / fs, options.stopband_db);
  const std::size_t taps = h.size();
  if (taps > series.size()) {
    throw InvalidArgument("heterodyne: record shorter than the filter");
  }
  const std::size_t delay = (taps - 1) / 2;
  const auto decimation =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(fs / (2.0 * bandwidth))));

  const auto input = series.as_complex();
  const double gain = series.is_complex() ? 1.0 : 2.0;
  const double w = units::two_pi * f_center;

  std::vector<std::complex<double>> mixed(input.size());
  for (std::size_t k = 0; k < input.size(); ++k) {
    const double phase = -w * series.time(k);
    mixed[k] = gain * input[k] * std::complex<double>(std::cos(phase), std::sin(phase));
  }

  std::vector<std::complex<double>> out;
  out.reserve((input.size() - taps) / decimation + 1);
  for (std::size_t end = taps - 1; end < input.size(); end += decimation) {
    std::complex<double> acc{0.0, 0.0};
    const std::size_t begin = end + 1 - taps;
    for (std::size_t m = 0; m < taps; ++m) {
      acc += h[m] * mixed[begin + m];
    }
    out.push_back(acc);
  }
  if (out.size() < 2) {
    throw InvalidArgument("heterodyne: record too short for the requested bandwidth");
  }

  SeriesMeta meta = series.meta();
  meta.source = "heterodyne(" + series.meta().source + ")";
  meta.extra["heterodyne"] = {{"f_center_hz", f_center},
                              {"bandwidth_hz", bandwidth},
                              {"taps", taps},
                              {"decimation", decimation}};
  const double t0 = series.time(delay);
  return TimeSeries(t0, series.dt() * static_cast<double>(decimation), std::move(out),
                    std::move(meta));
}

} // namespace axionkit::signal
