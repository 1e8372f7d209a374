#include "commands.hpp"

#include "manifest.hpp"

#include "axionkit/error.hpp"
#include "axionkit/io.hpp"
#include "axionkit/pipeline.hpp"
#include "axionkit/records.hpp"
#include "axionkit/sensitivity.hpp"
#include "axionkit/spectral.hpp"
#include "axionkit/svg.hpp"
#include "axionkit/units.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numeric>

namespace axionkit::app {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path RunContext::file(const std::string &name) {
  files.push_back(name);
  return out / name;
}

namespace {

class Csv {
public:
  Csv(const fs::path &path, std::initializer_list<const char *> header) : os_(path, std::ios::binary) {
    if (!os_) {
      throw Error("cannot open " + path.string() + " for writing");
    }
    bool first = true;
    for (const char *h : header) {
      os_ << (first ? "" : ",") << h;
      first = false;
    }
    os_ << '\n';
  }

  template <typename... Ts> void row(const Ts &...values) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(values), first = false), ...);
    os_ << '\n';
  }

private:
  static std::string cell(double v) { return io::format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string &v) { return v; }
  static std::string cell(const char *v) { return v; }

  std::ofstream os_;
};

bool wants(const RunContext &ctx, const char *format) { return ctx.cfg.output.wants(format); }

void write_json(RunContext &ctx, const std::string &name, json j) {
  if (wants(ctx, "json")) {
    j["schema_version"] = io::json_schema_version;
    io::write_json(ctx.file(name), j);
  }
}

void write_svg(RunContext &ctx, const std::string &name, const svg::Axes &axes,
               const std::vector<svg::Series> &series) {
  if (wants(ctx, "svg")) {
    svg::write(ctx.file(name), axes, series);
  }
}

signal::NoiseConfig noise_or_silent(const RunContext &ctx, bool enabled) {
  return enabled ? ctx.cfg.noise : signal::NoiseConfig::none();
}

signal::SignalSource parse_source(const std::string &s) {
  return s == "geometry" ? signal::SignalSource::geometry : signal::SignalSource::coefficient_model;
}

spectral::WindowKind parse_window(const std::string &s) {
  return s == "hann" ? spectral::WindowKind::hann : spectral::WindowKind::rectangular;
}

// Frequency of the strongest non-DC periodogram bin.
double dominant_frequency(const std::vector<double> &values, double dt) {
  std::vector<double> centred(values);
  const double mean = std::accumulate(centred.begin(), centred.end(), 0.0) /
                      static_cast<double>(centred.size());
  for (auto &v : centred) {
    v -= mean;
  }
  SeriesMeta meta;
  meta.source = "dominant_frequency";
  const TimeSeries series(0.0, dt, std::move(centred), meta);
  const auto sp = spectral::periodogram(series, {spectral::WindowKind::rectangular, 0.0, 0.0});
  std::size_t best = 1;
  for (std::size_t k = 1; k < sp.psd.size(); ++k) {
    if (sp.psd[k] > sp.psd[best]) {
      best = k;
    }
  }
  return sp.frequency(best);
}

void envelope(RunContext &ctx) {
  const auto &c = ctx.cfg;
  const auto coeffs = geometry::fit_site(c.geometry, c.ephemeris);
  const double period = c.ephemeris.sidereal_period();
  const long days = static_cast<long>(std::floor(c.envelope.span_days * 86400.0 / period));
  if (days < 2) {
    throw InvalidArgument("envelope: span shorter than two sidereal days");
  }
  const int spd = c.envelope.samples_per_day;
  const double dt = period / spd;

  std::vector<double> t_trace;
  std::vector<double> beta_trace;
  std::vector<double> day_t;
  std::vector<double> env_min;
  std::vector<double> env_max;
  std::vector<double> beta_min(static_cast<std::size_t>(days));
  std::vector<double> beta_max(static_cast<std::size_t>(days));
  std::vector<double> cos_trace;

  std::unique_ptr<Csv> trace_csv;
  if (wants(ctx, "csv")) {
    trace_csv = std::make_unique<Csv>(ctx.file("beta_trace.csv"),
                                      std::initializer_list<const char *>{"t_s", "cos_theta", "speed_km_s", "beta_norm"});
  }
  for (long d = 0; d < days; ++d) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int s = 0; s < spd; ++s) {
      const double t = static_cast<double>(d * spd + s) * dt;
      const auto wind = geometry::lab_wind(t, c.geometry, c.ephemeris);
      const double cos_theta = wind.direction.dot(geometry::sensor_axis(t, c.geometry));
      const double scale = c.envelope.speed_factor ? wind.speed_km_s / c.halo.v_ref_km_s : 1.0;
      const double beta = scale * std::abs(cos_theta);
      lo = std::min(lo, beta);
      hi = std::max(hi, beta);
      cos_trace.push_back(cos_theta);
      t_trace.push_back(t);
      beta_trace.push_back(beta);
      if (trace_csv) {
        trace_csv->row(t, cos_theta, wind.speed_km_s, beta);
      }
    }
    beta_min[static_cast<std::size_t>(d)] = lo;
    beta_max[static_cast<std::size_t>(d)] = hi;
  }
  trace_csv.reset();

  if (wants(ctx, "csv")) {
    Csv csv(ctx.file("envelope.csv"), {"day", "t_mid_s", "mu_d", "k", "cos_min", "cos_max",
                                       "daily_rms", "beta_min", "beta_max"});
    for (long d = 0; d < days; ++d) {
      const double t = geometry::day_midpoint(d, coeffs);
      const auto env = geometry::daily_envelope(d, coeffs);
      csv.row(d, t, coeffs.daily_mean(t), coeffs.daily_amplitude(t), env.min, env.max,
              geometry::daily_rms(d, coeffs), beta_min[static_cast<std::size_t>(d)],
              beta_max[static_cast<std::size_t>(d)]);
    }
  }
  for (long d = 0; d < days; ++d) {
    const auto env = geometry::daily_envelope(d, coeffs);
    day_t.push_back(geometry::day_midpoint(d, coeffs) / 86400.0);
    env_min.push_back(env.min);
    env_max.push_back(env.max);
  }

  const double ripple_hz = dominant_frequency(cos_trace, dt);
  std::vector<double> half_width(beta_max.size());
  for (std::size_t d = 0; d < half_width.size(); ++d) {
    half_width[d] = env_max[d] - env_min[d];
  }
  const double envelope_hz = dominant_frequency(half_width, period);

  ctx.summary["days"] = days;
  ctx.summary["sidereal_frequency_hz"] = c.ephemeris.sidereal_frequency_hz();
  ctx.summary["annual_frequency_hz"] = c.ephemeris.annual_frequency_hz();
  ctx.summary["ripple_frequency_hz"] = ripple_hz;
  ctx.summary["envelope_frequency_hz"] = envelope_hz;
  ctx.summary["annual_depth"] = coeffs.annual_depth();
  json j = ctx.summary;
  j["kind"] = "envelope";
  j["coefficients"] = io::to_json(coeffs);
  write_json(ctx, "envelope.json", j);

  std::vector<double> t_days(t_trace.size());
  std::transform(t_trace.begin(), t_trace.end(), t_days.begin(), [](double t) { return t / 86400.0; });
  write_svg(ctx, "envelope.svg",
            {"Daily envelope of the wind projection", "t [days]", "|beta|/beta_0", false, false},
            {{"|beta|/beta_0", t_days, beta_trace, svg::Style::line, "#9ecae1"},
             {"daily max", day_t, beta_max, svg::Style::line, "#d62728"},
             {"daily min", day_t, beta_min, svg::Style::line, "#2ca02c"}});
}

void daily_rms(RunContext &ctx) {
  const auto &c = ctx.cfg;
  const auto study = pipeline::daily_rms_study(c.geometry, c.ephemeris, c.axion, c.halo, c.qubit,
                                               c.noise, c.daily_rms.days,
                                               c.daily_rms.samples_per_day, c.daily_rms.trials,
                                               c.daily_rms.band_sigma);
  const double k = study.band_sigma;
  if (wants(ctx, "csv")) {
    Csv csv(ctx.file("daily_rms.csv"), {"day", "t_mid_s", "theory", "theory_norm", "mc_mean",
                                        "mc_std", "band_lo", "band_hi"});
    for (std::size_t d = 0; d < study.theory.size(); ++d) {
      csv.row(d, study.day_time_s[d], study.theory[d], study.theory_norm[d], study.mc_mean[d],
              study.mc_std[d], study.theory_norm[d] - k * study.mc_std[d],
              study.theory_norm[d] + k * study.mc_std[d]);
    }
    Csv pts(ctx.file("daily_rms_trials.csv"), {"day", "trial", "rms_norm"});
    for (std::size_t t = 0; t < study.trials.size(); ++t) {
      for (std::size_t d = 0; d < study.trials[t].size(); ++d) {
        pts.row(d, t, study.trials[t][d]);
      }
    }
  }
  ctx.summary["days"] = study.theory.size();
  ctx.summary["trials"] = study.trials.size();
  ctx.summary["seed"] = c.noise.seed;
  ctx.summary["band_sigma"] = k;
  ctx.summary["fraction_inside_band"] = study.fraction_inside;
  json j = ctx.summary;
  j["kind"] = "daily_rms";
  j["noise"] = config::to_json(c)["noise"];
  write_json(ctx, "daily_rms.json", j);

  std::vector<double> days(study.theory.size());
  std::iota(days.begin(), days.end(), 0.0);
  std::vector<double> lo(days.size());
  std::vector<double> hi(days.size());
  for (std::size_t d = 0; d < days.size(); ++d) {
    lo[d] = study.theory_norm[d] - k * study.mc_std[d];
    hi[d] = study.theory_norm[d] + k * study.mc_std[d];
  }
  write_svg(ctx, "daily_rms.svg",
            {"Normalised daily RMS", "day", "R_d / <R_d>", false, false},
            {{"theory", days, study.theory_norm, svg::Style::line, "#000000"},
             {"Monte Carlo mean", days, study.mc_mean, svg::Style::markers, "#d62728"},
             {"band", days, lo, svg::Style::line, "#bbbbbb"},
             {"", days, hi, svg::Style::line, "#bbbbbb"}});
}

signal::SynthesisRequest synthesis_request(const RunContext &ctx, double span_s, double dt_s,
                                           const std::string &source,
                                           const std::optional<double> &epsilon, bool speed) {
  signal::SynthesisRequest req;
  req.t0_s = 0.0;
  req.span_s = span_s;
  req.dt_s = dt_s;
  req.source = parse_source(source);
  req.epsilon_override = epsilon;
  req.speed_factor = speed;
  if (req.source == signal::SignalSource::coefficient_model) {
    req.coefficients = geometry::fit_site(ctx.cfg.geometry, ctx.cfg.ephemeris);
  }
  return req;
}

void psd(RunContext &ctx) {
  const auto &c = ctx.cfg;
  const auto req = synthesis_request(ctx, c.psd.years * units::year_s, c.psd.dt_s, c.psd.source,
                                     c.psd.epsilon, c.psd.speed_factor);
  const auto series = signal::synthesize_observable(c.geometry, c.ephemeris, c.axion, c.halo,
                                                    c.qubit, noise_or_silent(ctx, c.psd.noise), req);
  const spectral::WindowSpec window{parse_window(c.psd.window), c.psd.segment_length_s,
                                    c.psd.overlap};
  const auto spectrum = spectral::periodogram(series, window);
  const auto morph = pipeline::triplet_morphology(spectrum, c.ephemeris);

  if (wants(ctx, "csv")) {
    io::write_spectrum_csv(ctx.file("psd.csv"), spectrum);
  }
  ctx.summary["f_star_hz"] = morph.f_star;
  ctx.summary["f_plus_hz"] = morph.f_plus;
  ctx.summary["f_minus_hz"] = morph.f_minus;
  ctx.summary["peaks_hz"] = morph.peak_hz;
  ctx.summary["peaks_at_triplet"] = morph.peaks_at_triplet;
  ctx.summary["spacing_hz"] = {morph.spacing_lo_hz, morph.spacing_hi_hz};
  ctx.summary["side_to_center_power"] = morph.side_to_center;
  ctx.summary["resolution_hz"] = morph.resolution_hz;
  ctx.summary["bin_hz"] = morph.bin_hz;
  ctx.summary["resolved"] = morph.resolution_hz < c.ephemeris.annual_frequency_hz();
  json j = ctx.summary;
  j["kind"] = "psd";
  j["spectrum"] = io::to_json(spectrum);
  j["injected_epsilon"] = c.psd.epsilon ? json(*c.psd.epsilon) : json();
  write_json(ctx, "psd.json", j);

  std::vector<double> f;
  std::vector<double> p;
  const double span = 3.0 * c.ephemeris.annual_frequency_hz();
  for (std::size_t k = 0; k < spectrum.psd.size(); ++k) {
    const double fk = spectrum.frequency(k);
    if (std::abs(fk - morph.f_star) <= span) {
      f.push_back((fk - morph.f_star) * 1e9);
      p.push_back(spectrum.psd[k]);
    }
  }
  std::vector<double> marks_f = {(morph.f_minus - morph.f_star) * 1e9, 0.0,
                                 (morph.f_plus - morph.f_star) * 1e9};
  std::vector<double> marks_p = {spectrum.psd[spectrum.bin_of(morph.f_minus)],
                                 spectrum.psd[spectrum.bin_of(morph.f_star)],
                                 spectrum.psd[spectrum.bin_of(morph.f_plus)]};
  write_svg(ctx, "psd.svg",
            {"PSD around the sidereal line", "f - f_star [nHz]", "PSD [1/Hz]", false, true},
            {{"PSD", f, p, svg::Style::line, "#1f77b4"},
             {"triplet", marks_f, marks_p, svg::Style::markers, "#d62728"}});
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void triplet(RunContext &ctx) {
  const auto &c = ctx.cfg;
  const auto &tc = c.triplet;
  spectral::TripletPhases phases;
  if (tc.phases == "config") {
    if (!tc.psi_star || !tc.psi_annual) {
      throw ConfigError("triplet.psi_star",
                        "missing ephemeris phases: set triplet.psi_star and triplet.psi_annual, "
                        "or use triplet.phases=geometry");
    }
    phases = {*tc.psi_star, *tc.psi_annual};
  } else {
    const auto coeffs = geometry::fit_site(c.geometry, c.ephemeris);
    phases = {coeffs.psi_star, coeffs.psi_annual};
  }
  const auto mode = tc.mode == "agnostic" ? spectral::TripletMode::agnostic
                                          : spectral::TripletMode::phase_locked;

  std::vector<spectral::TripletResult> results;
  if (!tc.input.empty()) {
    const auto series = io::read_series(tc.input);
    const auto w = spectral::window_samples(parse_window(tc.window), series.size());
    results.push_back(spectral::triplet_statistic(series, c.ephemeris, phases, w, mode));
  } else {
    auto req = synthesis_request(ctx, tc.days * 86400.0, tc.dt_s, tc.source, tc.epsilon,
                                 tc.speed_factor);
    const auto noise = noise_or_silent(ctx, tc.noise);
    const int trials = tc.noise ? tc.trials : 1;
    for (int trial = 0; trial < trials; ++trial) {
      req.segment = static_cast<std::uint64_t>(trial);
      const auto series = signal::synthesize_observable(c.geometry, c.ephemeris, c.axion, c.halo,
                                                        c.qubit, noise, req);
      const auto w = spectral::window_samples(parse_window(tc.window), series.size());
      results.push_back(spectral::triplet_statistic(series, c.ephemeris, phases, w, mode));
    }
  }

  std::vector<double> eps;
  for (const auto &r : results) {
    eps.push_back(r.epsilon_hat);
  }
  if (wants(ctx, "csv")) {
    Csv csv(ctx.file("triplet.csv"), {"trial", "X_star", "X_plus", "X_minus", "a_star", "a_plus",
                                      "a_minus", "epsilon_signed", "epsilon_hat", "snr_star",
                                      "snr_pm"});
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto &r = results[i];
      csv.row(i, r.x_star, r.x_plus, r.x_minus, r.a_star, r.a_plus, r.a_minus, r.epsilon_signed,
              r.epsilon_hat, r.snr_star, r.snr_pm);
    }
  }
  ctx.summary["trials"] = results.size();
  ctx.summary["psi_star"] = phases.psi_star;
  ctx.summary["psi_annual"] = phases.psi_annual;
  ctx.summary["injected_epsilon"] = tc.input.empty() && tc.epsilon ? json(*tc.epsilon) : json();
  ctx.summary["median_epsilon_hat"] = median(eps);
  json j = ctx.summary;
  j["kind"] = "triplet_run";
  j["results"] = json::array();
  for (const auto &r : results) {
    j["results"].push_back(io::to_json(r));
  }
  write_json(ctx, "triplet.json", j);
}

void linewidth(RunContext &ctx) {
  const auto &c = ctx.cfg;
  std::unique_ptr<Csv> csv;
  if (wants(ctx, "csv")) {
    csv = std::make_unique<Csv>(ctx.file("linewidth.csv"),
                                std::initializer_list<const char *>{"m_a_ueV", "nu_hz", "offset_hz", "g_per_hz"});
  }
  json masses = json::array();
  std::vector<svg::Series> plots;
  const char *colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};
  std::size_t index = 0;
  for (double m : c.linewidth.masses_ueV) {
    halo::AxionParams axion = c.axion;
    axion.mass_ueV = m;
    const double nu_a = axion.frequency_hz();
    const double end = halo::lineshape_support_end(axion, c.halo);
    const double width = end - nu_a;
    const int n = c.linewidth.points;
    std::vector<double> nu(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      nu[static_cast<std::size_t>(i)] =
          nu_a - 0.05 * width + 1.1 * width * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    const auto g = halo::shm_lineshape(nu, axion, c.halo);
    double integral = 0.0;
    for (std::size_t i = 1; i < nu.size(); ++i) {
      integral += 0.5 * (g[i] + g[i - 1]) * (nu[i] - nu[i - 1]);
    }
    std::vector<double> offset(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) {
      offset[i] = nu[i] - nu_a;
      if (csv) {
        csv->row(m, nu[i], offset[i], g[i]);
      }
    }
    masses.push_back({{"m_a_ueV", m},
                      {"nu_a_hz", nu_a},
                      {"fwhm_hz", halo::lineshape_fwhm(axion, c.halo)},
                      {"linewidth_hz", halo::linewidth_hz(axion, c.halo)},
                      {"fractional_linewidth", halo::fractional_linewidth(c.halo)},
                      {"kinematic_fractional_width", halo::kinematic_fractional_width(c.halo)},
                      {"coherence_time_s", halo::coherence_time(axion, c.halo)},
                      {"quality_factor", halo::quality_factor(c.halo)},
                      {"support_end_hz", end},
                      {"normalization", integral}});
    plots.push_back({"m_a = " + io::format_double(m) + " ueV", offset, g, svg::Style::line,
                     colors[index++ % 5]});
  }
  ctx.summary["masses"] = masses;
  json j = ctx.summary;
  j["kind"] = "linewidth";
  write_json(ctx, "linewidth.json", j);
  write_svg(ctx, "linewidth.svg",
            {"SHM line shapes", "nu - nu_a [Hz]", "g(nu) [1/Hz]", false, false}, plots);
}

void sensitivity_cmd(RunContext &ctx) {
  const auto &c = ctx.cfg;
  const auto &sc = c.sensitivity;
  signal::QubitParams qubit = c.qubit;
  json preset_json = {{"name", sc.preset}};
  if (sc.preset != "custom") {
    const auto preset = sensitivity::preset_by_name(sc.preset);
    qubit = preset.apply(qubit);
    preset_json = {{"name", preset.name},
                   {"n_spins", preset.n_spins},
                   {"q_resonator", preset.q_resonator},
                   {"eta_b_t_per_rthz", preset.eta_b_t_per_rthz},
                   {"n_axes", preset.n_axes}};
  }
  const auto masses = sensitivity::log_grid(sc.mass_min_ueV, sc.mass_max_ueV,
                                            static_cast<std::size_t>(sc.points));
  const auto gains = sensitivity::GainSelection::parse(sc.gains);
  const auto curve = sensitivity::g_min_curve(masses, qubit, c.halo, c.geometry, c.search, gains);

  const auto variant = [&](sensitivity::GainSelection g) {
    return sensitivity::g_min_curve(masses, qubit, c.halo, c.geometry, c.search, g);
  };
  const auto none = variant(sensitivity::GainSelection::none());
  const auto matched = variant({true, false, false, 1.0});
  const auto three = variant({false, true, false, 1.0});
  const auto sqrt_n = variant({false, false, true, 1.0});
  const auto all = variant(sensitivity::GainSelection::all());
  const auto dfsz = sensitivity::dfsz_band(masses, sc.dfsz_tan_beta_min, sc.dfsz_tan_beta_max);

  if (wants(ctx, "csv")) {
    io::write_curve_csv(ctx.file("sensitivity.csv"), curve);
    Csv csv(ctx.file("sensitivity_variants.csv"),
            {"m_a_ueV", "g_none", "g_matched", "g_three_axis", "g_sqrt_n", "g_all", "dfsz_lower",
             "dfsz_upper", "dfsz_benchmark"});
    for (std::size_t i = 0; i < masses.size(); ++i) {
      csv.row(masses[i], none.points[i].g_min, matched.points[i].g_min, three.points[i].g_min,
              sqrt_n.points[i].g_min, all.points[i].g_min, dfsz.lower[i], dfsz.upper[i],
              dfsz.benchmark[i]);
    }
  }

  std::vector<double> g_sel;
  std::vector<double> g_none;
  std::vector<double> g_all;
  double ratio_min = std::numeric_limits<double>::infinity();
  double ratio_max = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    g_sel.push_back(curve.points[i].g_min);
    g_none.push_back(none.points[i].g_min);
    g_all.push_back(all.points[i].g_min);
    const double r = none.points[i].g_min / all.points[i].g_min;
    ratio_min = std::min(ratio_min, r);
    ratio_max = std::max(ratio_max, r);
  }
  ctx.summary["preset"] = preset_json;
  ctx.summary["gains"] = sc.gains;
  ctx.summary["gain_factor"] = curve.gain_factor;
  ctx.summary["g_min_range"] = {*std::min_element(g_sel.begin(), g_sel.end()),
                                *std::max_element(g_sel.begin(), g_sel.end())};
  ctx.summary["none_over_all"] = {ratio_min, ratio_max};
  json j = ctx.summary;
  j["kind"] = "sensitivity_run";
  j["curve"] = io::to_json(curve);
  j["geometric_gains"] = io::to_json(geometry::geometric_gains(c.geometry, 3));
  j["dfsz"] = io::to_json(dfsz);
  write_json(ctx, "sensitivity.json", j);

  write_svg(ctx, "sensitivity.svg",
            {"Minimum detectable coupling", "m_a [ueV]", "g_ae", true, true},
            {{"selected gains", masses, g_sel, svg::Style::line, "#1f77b4"},
             {"no gains", masses, g_none, svg::Style::line, "#7f7f7f"},
             {"all gains", masses, g_all, svg::Style::line, "#2ca02c"},
             {"DFSZ tan beta = 1", masses, dfsz.benchmark, svg::Style::line, "#d62728"}});
}

} // namespace

const std::vector<CommandInfo> &commands() {
  static const std::vector<CommandInfo> list = {
      {"envelope", "daily min/max and instantaneous |beta|/beta_0 over the span", envelope},
      {"daily-rms", "geometry-only daily RMS against noisy Monte Carlo realisations", daily_rms},
      {"psd", "baseband periodogram with the sidereal/annual triplet markers", psd},
      {"triplet", "heterodyned triplet statistics and the annual depth estimate", triplet},
      {"linewidth", "SHM line shapes for a list of axion masses", linewidth},
      {"sensitivity", "minimum detectable coupling curves with gain variants and DFSZ band",
       sensitivity_cmd},
  };
  return list;
}

const CommandInfo *find_command(const std::string &name) {
  for (const auto &c : commands()) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

void execute(RunContext &ctx) {
  const auto *cmd = find_command(ctx.subcommand);
  if (!cmd) {
    throw InvalidArgument("unknown subcommand " + ctx.subcommand);
  }
  ctx.out = ctx.cfg.output.directory;
  std::filesystem::create_directories(ctx.out);
  cmd->run(ctx);
  write_manifest(ctx);
}

} // namespace axionkit::app
