#include "axionkit/config.hpp"

#include "axionkit/error.hpp"

#include <Eigen/Core>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>

#ifndef AXIONKIT_VERSION
#define AXIONKIT_VERSION "0.0.0"
#endif

namespace axionkit::config {

bool OutputConfig::wants(const std::string &format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

namespace {

using nlohmann::json;

struct KeyDef {
  KeyInfo info;
  std::function<json(const RunConfig &)> get;
  // returns an error message, empty on success
  std::function<std::string(RunConfig &, const json &)> set;
};

template <typename T> struct Codec;

template <> struct Codec<double> {
  static constexpr const char *type = "number";
  static json encode(double v) { return v; }
  static std::string decode(const json &j, double &out) {
    if (!j.is_number()) {
      return "expected a number";
    }
    out = j.get<double>();
    return std::isfinite(out) ? "" : "must be finite";
  }
};

template <> struct Codec<int> {
  static constexpr const char *type = "integer";
  static json encode(int v) { return v; }
  static std::string decode(const json &j, int &out) {
    if (!j.is_number_integer()) {
      return "expected an integer";
    }
    const auto v = j.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      return "integer out of range";
    }
    out = static_cast<int>(v);
    return "";
  }
};

template <> struct Codec<long> {
  static constexpr const char *type = "integer";
  static json encode(long v) { return v; }
  static std::string decode(const json &j, long &out) {
    if (!j.is_number_integer()) {
      return "expected an integer";
    }
    out = j.get<long>();
    return "";
  }
};

template <> struct Codec<std::uint64_t> {
  static constexpr const char *type = "unsigned integer";
  static json encode(std::uint64_t v) { return v; }
  static std::string decode(const json &j, std::uint64_t &out) {
    if (!j.is_number_unsigned()) {
      return "expected a non-negative integer";
    }
    out = j.get<std::uint64_t>();
    return "";
  }
};

template <> struct Codec<bool> {
  static constexpr const char *type = "boolean";
  static json encode(bool v) { return v; }
  static std::string decode(const json &j, bool &out) {
    if (!j.is_boolean()) {
      return "expected true or false";
    }
    out = j.get<bool>();
    return "";
  }
};

template <> struct Codec<std::string> {
  static constexpr const char *type = "string";
  static json encode(const std::string &v) { return v; }
  static std::string decode(const json &j, std::string &out) {
    if (!j.is_string()) {
      return "expected a string";
    }
    out = j.get<std::string>();
    return "";
  }
};

template <> struct Codec<std::optional<double>> {
  static constexpr const char *type = "number|null";
  static json encode(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }
  static std::string decode(const json &j, std::optional<double> &out) {
    if (j.is_null()) {
      out.reset();
      return "";
    }
    double v = 0.0;
    auto err = Codec<double>::decode(j, v);
    if (err.empty()) {
      out = v;
    }
    return err;
  }
};

template <> struct Codec<std::vector<std::string>> {
  static constexpr const char *type = "array of strings";
  static json encode(const std::vector<std::string> &v) { return v; }
  static std::string decode(const json &j, std::vector<std::string> &out) {
    if (!j.is_array() || !std::all_of(j.begin(), j.end(), [](const json &e) { return e.is_string(); })) {
      return "expected an array of strings";
    }
    out = j.get<std::vector<std::string>>();
    return "";
  }
};

template <> struct Codec<std::vector<double>> {
  static constexpr const char *type = "array of numbers";
  static json encode(const std::vector<double> &v) { return v; }
  static std::string decode(const json &j, std::vector<double> &out) {
    if (!j.is_array() || !std::all_of(j.begin(), j.end(), [](const json &e) { return e.is_number(); })) {
      return "expected an array of numbers";
    }
    out = j.get<std::vector<double>>();
    return "";
  }
};

template <typename Section, typename T>
KeyDef field(std::string key, Section RunConfig::*section, T Section::*member, std::string help) {
  KeyDef def;
  def.info = {std::move(key), Codec<T>::type, std::move(help), json()};
  def.get = [=](const RunConfig &c) { return Codec<T>::encode(c.*section.*member); };
  def.set = [=](RunConfig &c, const json &j) {
    T value{};
    auto err = Codec<T>::decode(j, value);
    if (err.empty()) {
      c.*section.*member = std::move(value);
    }
    return err;
  };
  return def;
}

KeyDef stacking_field() {
  KeyDef def;
  def.info = {"search.stacking", "string",
              "segment stacking law: sqrt_total_time or radiometer", json()};
  def.get = [](const RunConfig &c) {
    return json(c.search.stacking == sensitivity::Stacking::radiometer ? "radiometer"
                                                                       : "sqrt_total_time");
  };
  def.set = [](RunConfig &c, const json &j) -> std::string {
    if (!j.is_string()) {
      return "expected a string";
    }
    const auto s = j.get<std::string>();
    if (s == "sqrt_total_time") {
      c.search.stacking = sensitivity::Stacking::sqrt_total_time;
    } else if (s == "radiometer") {
      c.search.stacking = sensitivity::Stacking::radiometer;
    } else {
      return "expected sqrt_total_time or radiometer";
    }
    return "";
  };
  return def;
}

std::vector<KeyDef> build_registry() {
  using R = RunConfig;
  std::vector<KeyDef> k;
  // geometry
  k.push_back(field("geometry.latitude_deg", &R::geometry, &geometry::SiteGeometry::latitude_deg,
                    "site latitude [deg]"));
  k.push_back(field("geometry.longitude_deg", &R::geometry, &geometry::SiteGeometry::longitude_deg,
                    "site longitude [deg], informational"));
  k.push_back(field("geometry.wind_ra_deg", &R::geometry, &geometry::SiteGeometry::wind_ra_deg,
                    "wind right ascension [deg]"));
  k.push_back(field("geometry.wind_dec_deg", &R::geometry, &geometry::SiteGeometry::wind_dec_deg,
                    "wind declination [deg]"));
  k.push_back(field("geometry.elevation_deg", &R::geometry, &geometry::SiteGeometry::elevation_deg,
                    "sensor axis elevation [deg]"));
  k.push_back(field("geometry.azimuth_deg", &R::geometry, &geometry::SiteGeometry::azimuth_deg,
                    "sensor axis azimuth from north through east [deg]"));
  k.push_back(field("geometry.turntable_rate_rad_s", &R::geometry,
                    &geometry::SiteGeometry::turntable_rate_rad_s, "extra azimuth rotation [rad/s]"));
  k.push_back(field("geometry.lst0_rad", &R::geometry, &geometry::SiteGeometry::lst0_rad,
                    "local sidereal phase at t = 0 [rad]"));
  // ephemeris
  k.push_back(field("ephemeris.sidereal_rate", &R::ephemeris,
                    &geometry::EphemerisConstants::sidereal_rate, "Earth rotation rate [rad/s]"));
  k.push_back(field("ephemeris.annual_rate", &R::ephemeris,
                    &geometry::EphemerisConstants::annual_rate, "orbital angular rate [rad/s]"));
  k.push_back(field("ephemeris.v_sun_km_s", &R::ephemeris,
                    &geometry::EphemerisConstants::v_sun_km_s, "solar speed through the halo [km/s]"));
  k.push_back(field("ephemeris.v_orbit_km_s", &R::ephemeris,
                    &geometry::EphemerisConstants::v_orbit_km_s, "Earth orbital speed [km/s]"));
  k.push_back(field("ephemeris.obliquity_deg", &R::ephemeris,
                    &geometry::EphemerisConstants::obliquity_deg, "ecliptic obliquity [deg]"));
  k.push_back(field("ephemeris.orbital_phase_rad", &R::ephemeris,
                    &geometry::EphemerisConstants::orbital_phase_rad,
                    "heliocentric longitude of Earth at t = 0 [rad]"));
  // halo
  k.push_back(field("halo.v0_km_s", &R::halo, &halo::HaloParams::v0_km_s,
                    "most probable halo speed [km/s]"));
  k.push_back(field("halo.v_esc_km_s", &R::halo, &halo::HaloParams::v_esc_km_s,
                    "escape speed [km/s]"));
  k.push_back(field("halo.rho_dm_gev_cm3", &R::halo, &halo::HaloParams::rho_dm_gev_cm3,
                    "local dark matter density [GeV/cm^3]"));
  k.push_back(field("halo.v_ref_km_s", &R::halo, &halo::HaloParams::v_ref_km_s,
                    "reference speed fixing beta_0 [km/s]"));
  // axion
  k.push_back(field("axion.mass_ueV", &R::axion, &halo::AxionParams::mass_ueV, "axion mass [ueV]"));
  k.push_back(field("axion.g_ae", &R::axion, &halo::AxionParams::g_ae,
                    "axion-electron coupling"));
  k.push_back(field("axion.phase_rad", &R::axion, &halo::AxionParams::phase_rad,
                    "field phase [rad]"));
  // qubit
  k.push_back(field("qubit.gamma_hz_per_t", &R::qubit, &signal::QubitParams::gamma_hz_per_t,
                    "gyromagnetic ratio [Hz/T]"));
  k.push_back(field("qubit.t1_s", &R::qubit, &signal::QubitParams::t1_s, "T1 [s]"));
  k.push_back(field("qubit.t2_s", &R::qubit, &signal::QubitParams::t2_s, "T2 [s]"));
  k.push_back(field("qubit.b0_t", &R::qubit, &signal::QubitParams::b0_t, "bias field [T]"));
  k.push_back(field("qubit.omega0_rad_s", &R::qubit, &signal::QubitParams::omega0_rad_s,
                    "Larmor frequency override [rad/s]; null derives it from B0"));
  k.push_back(field("qubit.n_spins", &R::qubit, &signal::QubitParams::n_spins,
                    "spins averaged per sample"));
  k.push_back(field("qubit.eta_b_t_per_rthz", &R::qubit, &signal::QubitParams::eta_b_t_per_rthz,
                    "per-qubit field sensitivity [T/sqrt(Hz)]"));
  k.push_back(field("qubit.q_resonator", &R::qubit, &signal::QubitParams::q_resonator,
                    "resonator quality factor (metadata)"));
  // noise
  k.push_back(field("noise.white_psd", &R::noise, &signal::NoiseConfig::white_psd,
                    "one-sided white PSD [units^2/Hz]"));
  k.push_back(field("noise.pink_amplitude", &R::noise, &signal::NoiseConfig::pink_amplitude,
                    "1/f PSD at 1 Hz [units^2/Hz]"));
  k.push_back(field("noise.pink_exponent", &R::noise, &signal::NoiseConfig::pink_exponent,
                    "1/f spectral exponent"));
  k.push_back(field("noise.rtn_amplitude", &R::noise, &signal::NoiseConfig::rtn_amplitude,
                    "telegraph level [units]"));
  k.push_back(field("noise.rtn_rate_hz", &R::noise, &signal::NoiseConfig::rtn_rate_hz,
                    "telegraph switching rate [Hz]"));
  k.push_back(field("noise.readout_enabled", &R::noise, &signal::NoiseConfig::readout_enabled,
                    "binary readout channel on/off"));
  k.push_back(field("noise.readout_f0", &R::noise, &signal::NoiseConfig::readout_f0,
                    "P(read 0 | 0)"));
  k.push_back(field("noise.readout_f1", &R::noise, &signal::NoiseConfig::readout_f1,
                    "P(read 1 | 1)"));
  k.push_back(field("noise.readout_full_scale", &R::noise,
                    &signal::NoiseConfig::readout_full_scale, "value mapped to P(1) = 1"));
  k.push_back(field("noise.seed", &R::noise, &signal::NoiseConfig::seed, "master noise seed"));
  // search
  k.push_back(field("search.epsilon_safety", &R::search,
                    &sensitivity::SearchConfig::epsilon_safety, "segment safety factor in (0,1)"));
  k.push_back(field("search.t_cap_s", &R::search, &sensitivity::SearchConfig::t_cap_s,
                    "segment length cap [s]"));
  k.push_back(field("search.t_tot_s", &R::search, &sensitivity::SearchConfig::t_tot_s,
                    "total integration time [s]"));
  k.push_back(field("search.bandwidth_hz", &R::search, &sensitivity::SearchConfig::bandwidth_hz,
                    "searched bandwidth [Hz]"));
  k.push_back(field("search.alpha", &R::search, &sensitivity::SearchConfig::alpha,
                    "global false-positive rate"));
  k.push_back(field("search.n_sigma", &R::search, &sensitivity::SearchConfig::n_sigma,
                    "detection significance floor"));
  k.push_back(field("search.v_signal_km_s", &R::search, &sensitivity::SearchConfig::v_signal_km_s,
                    "wind speed entering B_eff [km/s]"));
  k.push_back(stacking_field());
  // output
  k.push_back(field("output.directory", &R::output, &OutputConfig::directory,
                    "output directory"));
  k.push_back(field("output.formats", &R::output, &OutputConfig::formats,
                    "subset of [csv, json, svg]"));
  // envelope
  k.push_back(field("envelope.span_days", &R::envelope, &EnvelopeConfig::span_days,
                    "span [days]"));
  k.push_back(field("envelope.samples_per_day", &R::envelope, &EnvelopeConfig::samples_per_day,
                    "samples per sidereal day for |beta|/beta_0"));
  k.push_back(field("envelope.speed_factor", &R::envelope, &EnvelopeConfig::speed_factor,
                    "include v_lab/v_ref"));
  // daily_rms
  k.push_back(field("daily_rms.days", &R::daily_rms, &DailyRmsConfig::days, "days simulated"));
  k.push_back(field("daily_rms.samples_per_day", &R::daily_rms, &DailyRmsConfig::samples_per_day,
                    "samples per sidereal day"));
  k.push_back(field("daily_rms.trials", &R::daily_rms, &DailyRmsConfig::trials,
                    "Monte Carlo realisations"));
  k.push_back(field("daily_rms.band_sigma", &R::daily_rms, &DailyRmsConfig::band_sigma,
                    "half-width of the reported band [sigma]"));
  // psd
  k.push_back(field("psd.years", &R::psd, &PsdConfig::years, "record length [years]"));
  k.push_back(field("psd.dt_s", &R::psd, &PsdConfig::dt_s, "sample interval [s]"));
  k.push_back(field("psd.source", &R::psd, &PsdConfig::source,
                    "coefficient_model or geometry"));
  k.push_back(field("psd.epsilon", &R::psd, &PsdConfig::epsilon,
                    "injected annual depth; null keeps the fitted one"));
  k.push_back(field("psd.speed_factor", &R::psd, &PsdConfig::speed_factor,
                    "include v_lab/v_ref"));
  k.push_back(field("psd.noise", &R::psd, &PsdConfig::noise, "add the configured noise"));
  k.push_back(field("psd.window", &R::psd, &PsdConfig::window, "hann or rectangular"));
  k.push_back(field("psd.segment_length_s", &R::psd, &PsdConfig::segment_length_s,
                    "Welch segment [s]; 0 is the whole record"));
  k.push_back(field("psd.overlap", &R::psd, &PsdConfig::overlap, "segment overlap fraction"));
  // triplet
  k.push_back(field("triplet.input", &R::triplet, &TripletConfig::input,
                    "series file to analyse; empty synthesizes one"));
  k.push_back(field("triplet.days", &R::triplet, &TripletConfig::days,
                    "synthetic record length [days]"));
  k.push_back(field("triplet.dt_s", &R::triplet, &TripletConfig::dt_s,
                    "synthetic sample interval [s]"));
  k.push_back(field("triplet.source", &R::triplet, &TripletConfig::source,
                    "coefficient_model or geometry"));
  k.push_back(field("triplet.epsilon", &R::triplet, &TripletConfig::epsilon,
                    "injected annual depth; null keeps the fitted one"));
  k.push_back(field("triplet.speed_factor", &R::triplet, &TripletConfig::speed_factor,
                    "include v_lab/v_ref"));
  k.push_back(field("triplet.noise", &R::triplet, &TripletConfig::noise,
                    "add the configured noise"));
  k.push_back(field("triplet.trials", &R::triplet, &TripletConfig::trials,
                    "Monte Carlo trials (synthetic input)"));
  k.push_back(field("triplet.phases", &R::triplet, &TripletConfig::phases,
                    "geometry (fit the site) or config (use psi_star/psi_annual)"));
  k.push_back(field("triplet.psi_star", &R::triplet, &TripletConfig::psi_star,
                    "sidereal phase [rad]"));
  k.push_back(field("triplet.psi_annual", &R::triplet, &TripletConfig::psi_annual,
                    "annual phase [rad]"));
  k.push_back(field("triplet.mode", &R::triplet, &TripletConfig::mode,
                    "phase_locked or agnostic"));
  k.push_back(field("triplet.window", &R::triplet, &TripletConfig::window,
                    "weights: rectangular or hann"));
  // linewidth
  k.push_back(field("linewidth.masses_ueV", &R::linewidth, &LinewidthConfig::masses_ueV,
                    "axion masses [ueV]"));
  k.push_back(field("linewidth.points", &R::linewidth, &LinewidthConfig::points,
                    "grid points per mass"));
  // sensitivity
  k.push_back(field("sensitivity.preset", &R::sensitivity, &SensitivityRunConfig::preset,
                    "current, future, or custom"));
  k.push_back(field("sensitivity.gains", &R::sensitivity, &SensitivityRunConfig::gains,
                    "none, all, or a list of matched,three_axis,sqrt_n"));
  k.push_back(field("sensitivity.mass_min_ueV", &R::sensitivity,
                    &SensitivityRunConfig::mass_min_ueV, "lowest mass [ueV]"));
  k.push_back(field("sensitivity.mass_max_ueV", &R::sensitivity,
                    &SensitivityRunConfig::mass_max_ueV, "highest mass [ueV]"));
  k.push_back(field("sensitivity.points", &R::sensitivity, &SensitivityRunConfig::points,
                    "log-spaced grid points"));
  k.push_back(field("sensitivity.dfsz_tan_beta_min", &R::sensitivity,
                    &SensitivityRunConfig::dfsz_tan_beta_min, "DFSZ band lower tan beta"));
  k.push_back(field("sensitivity.dfsz_tan_beta_max", &R::sensitivity,
                    &SensitivityRunConfig::dfsz_tan_beta_max, "DFSZ band upper tan beta"));

  const RunConfig defaults;
  for (auto &def : k) {
    def.info.default_value = def.get(defaults);
  }
  return k;
}

const std::vector<KeyDef> &registry() {
  static const std::vector<KeyDef> r = build_registry();
  return r;
}

const KeyDef *find_key(const std::string &key) {
  for (const auto &def : registry()) {
    if (def.info.key == key) {
      return &def;
    }
  }
  return nullptr;
}

template <typename Fn> void check(std::vector<FieldIssue> &issues, const char *field, Fn &&fn) {
  try {
    fn();
  } catch (const InvalidArgument &e) {
    issues.push_back({field, e.what()});
  }
}

void one_of(std::vector<FieldIssue> &issues, const char *field, const std::string &value,
            std::initializer_list<const char *> allowed) {
  for (const char *a : allowed) {
    if (value == a) {
      return;
    }
  }
  std::string msg = "'" + value + "' is not one of";
  for (const char *a : allowed) {
    msg += " ";
    msg += a;
  }
  issues.push_back({field, msg});
}

void positive(std::vector<FieldIssue> &issues, const char *field, double v) {
  if (!(v > 0.0)) {
    issues.push_back({field, "must be positive"});
  }
}

} // namespace

void RunConfig::validate() const {
  std::vector<FieldIssue> issues;
  check(issues, "geometry", [&] { geometry.validate(); });
  check(issues, "ephemeris", [&] { ephemeris.validate(); });
  check(issues, "halo", [&] { halo.validate(); });
  check(issues, "axion", [&] { axion.validate(); });
  check(issues, "qubit", [&] { qubit.validate(); });
  check(issues, "noise", [&] { noise.validate(); });
  check(issues, "search", [&] { search.validate(); });

  if (output.directory.empty()) {
    issues.push_back({"output.directory", "must not be empty"});
  }
  for (const auto &f : output.formats) {
    one_of(issues, "output.formats", f, {"csv", "json", "svg"});
  }

  positive(issues, "envelope.span_days", envelope.span_days);
  if (envelope.samples_per_day < 10) {
    issues.push_back({"envelope.samples_per_day", "must be >= 10 to resolve the daily tone"});
  }
  if (daily_rms.days < 1) {
    issues.push_back({"daily_rms.days", "must be >= 1"});
  }
  if (daily_rms.samples_per_day < 10) {
    issues.push_back({"daily_rms.samples_per_day", "must be >= 10"});
  }
  if (daily_rms.trials < 2) {
    issues.push_back({"daily_rms.trials", "must be >= 2 to form a spread"});
  }
  positive(issues, "daily_rms.band_sigma", daily_rms.band_sigma);

  positive(issues, "psd.years", psd.years);
  positive(issues, "psd.dt_s", psd.dt_s);
  one_of(issues, "psd.source", psd.source, {"coefficient_model", "geometry"});
  one_of(issues, "psd.window", psd.window, {"hann", "rectangular"});
  if (psd.segment_length_s < 0.0) {
    issues.push_back({"psd.segment_length_s", "must be >= 0"});
  }
  if (!(psd.overlap >= 0.0 && psd.overlap <= 0.9)) {
    issues.push_back({"psd.overlap", "must lie in [0, 0.9]"});
  }
  if (psd.epsilon && psd.source != "coefficient_model") {
    issues.push_back({"psd.epsilon", "only applies to the coefficient_model source; set null"});
  }

  positive(issues, "triplet.days", triplet.days);
  positive(issues, "triplet.dt_s", triplet.dt_s);
  one_of(issues, "triplet.source", triplet.source, {"coefficient_model", "geometry"});
  one_of(issues, "triplet.phases", triplet.phases, {"geometry", "config"});
  one_of(issues, "triplet.mode", triplet.mode, {"phase_locked", "agnostic"});
  one_of(issues, "triplet.window", triplet.window, {"hann", "rectangular"});
  if (triplet.trials < 1) {
    issues.push_back({"triplet.trials", "must be >= 1"});
  }
  if (triplet.epsilon && triplet.source != "coefficient_model") {
    issues.push_back({"triplet.epsilon", "only applies to the coefficient_model source; set null"});
  }

  if (linewidth.masses_ueV.empty()) {
    issues.push_back({"linewidth.masses_ueV", "must not be empty"});
  }
  for (double m : linewidth.masses_ueV) {
    if (!(m > 0.0)) {
      issues.push_back({"linewidth.masses_ueV", "masses must be positive"});
      break;
    }
  }
  if (linewidth.points < 100) {
    issues.push_back({"linewidth.points", "must be >= 100"});
  }

  one_of(issues, "sensitivity.preset", sensitivity.preset, {"current", "future", "custom"});
  check(issues, "sensitivity.gains", [&] { sensitivity::GainSelection::parse(sensitivity.gains); });
  positive(issues, "sensitivity.mass_min_ueV", sensitivity.mass_min_ueV);
  if (!(sensitivity.mass_max_ueV > sensitivity.mass_min_ueV)) {
    issues.push_back({"sensitivity.mass_max_ueV", "must exceed mass_min_ueV"});
  }
  if (sensitivity.points < 2) {
    issues.push_back({"sensitivity.points", "must be >= 2"});
  }
  positive(issues, "sensitivity.dfsz_tan_beta_min", sensitivity.dfsz_tan_beta_min);
  if (!(sensitivity.dfsz_tan_beta_max >= sensitivity.dfsz_tan_beta_min)) {
    issues.push_back({"sensitivity.dfsz_tan_beta_max", "must be >= dfsz_tan_beta_min"});
  }

  if (!issues.empty()) {
    throw ConfigError(std::move(issues));
  }
}

std::vector<KeyInfo> keys() {
  std::vector<KeyInfo> out;
  for (const auto &def : registry()) {
    out.push_back(def.info);
  }
  return out;
}

RunConfig from_json(const nlohmann::json &j) {
  if (!j.is_object()) {
    throw ConfigError("<root>", "configuration must be a JSON object");
  }
  std::set<std::string> sections;
  for (const auto &def : registry()) {
    sections.insert(def.info.key.substr(0, def.info.key.find('.')));
  }
  RunConfig cfg;
  std::vector<FieldIssue> issues;
  for (const auto &[section, body] : j.items()) {
    if (!sections.count(section)) {
      issues.push_back({section, "unknown section"});
      continue;
    }
    if (!body.is_object()) {
      issues.push_back({section, "section must be an object"});
      continue;
    }
    for (const auto &[name, value] : body.items()) {
      const std::string key = section + "." + name;
      const KeyDef *def = find_key(key);
      if (!def) {
        issues.push_back({key, "unknown key"});
        continue;
      }
      if (auto err = def->set(cfg, value); !err.empty()) {
        issues.push_back({key, err});
      }
    }
  }
  if (!issues.empty()) {
    throw ConfigError(std::move(issues));
  }
  cfg.validate();
  return cfg;
}

RunConfig load(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) {
    throw ConfigError("<file>", "cannot open " + path.string());
  }
  nlohmann::json j;
  try {
    // strict JSON: no comments, no trailing commas
    j = nlohmann::json::parse(is, nullptr, true, false);
  } catch (const nlohmann::json::parse_error &e) {
    throw ConfigError("<file>", std::string("parse error: ") + e.what());
  }
  return from_json(j);
}

nlohmann::json to_json(const RunConfig &cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto &def : registry()) {
    const auto dot = def.info.key.find('.');
    j[def.info.key.substr(0, dot)][def.info.key.substr(dot + 1)] = def.get(cfg);
  }
  return j;
}

void apply_override(RunConfig &cfg, const std::string &assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError(assignment, "override must look like section.key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  const KeyDef *def = find_key(key);
  if (!def) {
    throw ConfigError(key, "unknown key");
  }
  nlohmann::json value = nlohmann::json::parse(text, nullptr, false);
  if (value.is_discarded()) {
    value = text;
  }
  if (auto err = def->set(cfg, value); !err.empty()) {
    throw ConfigError(key, err);
  }
}

nlohmann::json build_info() {
  return {{"axionkit", AXIONKIT_VERSION},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                        "." + std::to_string(EIGEN_MINOR_VERSION)},
          {"fftw", std::string(fftw_version)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

} // namespace axionkit::config
