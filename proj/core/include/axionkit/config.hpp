#pragma once

#include "axionkit/geometry.hpp"
#include "axionkit/halo.hpp"
#include "axionkit/noise.hpp"
#include "axionkit/sensitivity.hpp"
#include "axionkit/signal.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace axionkit::config {

struct OutputConfig {
  std::string directory = "out";
  std::vector<std::string> formats = {"csv", "json", "svg"};

  bool wants(const std::string &format) const;
};

struct EnvelopeConfig {
  double span_days = 365.25;
  int samples_per_day = 48; //!< per sidereal day, for the instantaneous trace
  bool speed_factor = true;
};

struct DailyRmsConfig {
  int days = 365;
  int samples_per_day = 144;
  int trials = 20;
  double band_sigma = 5.0;
};

struct PsdConfig {
  double years = 4.0;
  double dt_s = 1000.0;
  std::string source = "coefficient_model"; //!< or "geometry"
  std::optional<double> epsilon = 0.1;       //!< null keeps the fitted c_cross
  bool speed_factor = false;
  bool noise = false;
  std::string window = "hann";
  double segment_length_s = 0.0; //!< 0: whole record
  double overlap = 0.5;
};

struct TripletConfig {
  std::string input;          //!< series file (CSV or .axts); empty to synthesize
  double days = 60.0;
  double dt_s = 600.0;
  std::string source = "coefficient_model";
  std::optional<double> epsilon = 0.1;
  bool speed_factor = false;
  bool noise = false;
  int trials = 1;             //!< Monte Carlo trials when synthesizing with noise
  std::string phases = "geometry"; //!< "geometry" (fit the site) or "config"
  std::optional<double> psi_star;
  std::optional<double> psi_annual;
  std::string mode = "phase_locked"; //!< or "agnostic"
  std::string window = "rectangular";
};

struct LinewidthConfig {
  std::vector<double> masses_ueV = {1.0, 3.0, 10.0};
  int points = 4000;
};

struct SensitivityRunConfig {
  std::string preset = "current"; //!< current, future, or custom (qubit section as is)
  std::string gains = "none";
  double mass_min_ueV = 1.0;
  double mass_max_ueV = 10.0;
  int points = 61;
  double dfsz_tan_beta_min = 0.28;
  double dfsz_tan_beta_max = 140.0;
};

struct RunConfig {
  geometry::SiteGeometry geometry;
  geometry::EphemerisConstants ephemeris;
  halo::HaloParams halo;
  halo::AxionParams axion;
  signal::QubitParams qubit;
  signal::NoiseConfig noise;
  sensitivity::SearchConfig search;
  OutputConfig output;
  EnvelopeConfig envelope;
  DailyRmsConfig daily_rms;
  PsdConfig psd;
  TripletConfig triplet;
  LinewidthConfig linewidth;
  SensitivityRunConfig sensitivity;

  //! Throws ConfigError listing every failing section or field.
  void validate() const;
};

struct KeyInfo {
  std::string key;  //!< dotted path, e.g. "geometry.latitude_deg"
  std::string type; //!< number, integer, boolean, string, number|null, ...
  std::string help;
  nlohmann::json default_value;
};

//! Every settable key, in a stable order.
std::vector<KeyInfo> keys();

//! Strict: unknown keys and type mismatches are collected into one ConfigError.
//! Missing keys keep their defaults. Calls validate().
RunConfig from_json(const nlohmann::json &j);
RunConfig load(const std::filesystem::path &path);

//! Full echo of every key; from_json(to_json(c)) reproduces c exactly.
nlohmann::json to_json(const RunConfig &cfg);

//! Apply "a.b=value". The value is parsed as JSON when possible, otherwise
//! taken as a bare string. Throws ConfigError on unknown keys or bad types.
void apply_override(RunConfig &cfg, const std::string &assignment);

//! Library and dependency versions for run manifests.
nlohmann::json build_info();

} // namespace axionkit::config
