#include "axionkit/records.hpp"

#include "axionkit/error.hpp"
#include "axionkit/io.hpp"

#include <fstream>

namespace axionkit::io {

namespace {

nlohmann::json tagged(const char *kind) {
  return {{"schema_version", json_schema_version}, {"kind", kind}};
}

template <typename Writer>
void to_file(const std::filesystem::path &path, Writer &&write) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  write(os);
}

} // namespace

nlohmann::json to_json(const geometry::ModulationCoefficients &c) {
  auto j = tagged("modulation_coefficients");
  j["c0"] = c.c0;
  j["c_star"] = c.c_star;
  j["c_annual"] = c.c_annual;
  j["c_cross"] = c.c_cross;
  j["psi_star"] = c.psi_star;
  j["psi_annual"] = c.psi_annual;
  j["sidereal_rate"] = c.sidereal_rate;
  j["annual_rate"] = c.annual_rate;
  j["residual_rms"] = c.residual_rms;
  j["annual_depth"] = c.c_star != 0.0 ? nlohmann::json(c.annual_depth()) : nlohmann::json();
  return j;
}

geometry::ModulationCoefficients coefficients_from_json(const nlohmann::json &j) {
  geometry::ModulationCoefficients c;
  c.c0 = j.at("c0").get<double>();
  c.c_star = j.at("c_star").get<double>();
  c.c_annual = j.at("c_annual").get<double>();
  c.c_cross = j.at("c_cross").get<double>();
  c.psi_star = j.at("psi_star").get<double>();
  c.psi_annual = j.at("psi_annual").get<double>();
  c.sidereal_rate = j.value("sidereal_rate", c.sidereal_rate);
  c.annual_rate = j.value("annual_rate", c.annual_rate);
  c.residual_rms = j.value("residual_rms", 0.0);
  return c;
}

nlohmann::json to_json(const geometry::GeometricGains &g) {
  auto j = tagged("geometric_gains");
  j["p0"] = g.p0;
  j["mean_square_projection"] = g.mean_square_projection;
  j["g_daily"] = g.g_daily ? nlohmann::json(*g.g_daily) : nlohmann::json();
  j["g_3axis"] = g.g_3axis;
  j["g_total"] = g.g_total ? nlohmann::json(*g.g_total) : nlohmann::json();
  j["n_axes"] = g.n_axes;
  j["matched_gain_unbounded"] = g.matched_gain_unbounded();
  return j;
}

nlohmann::json to_json(const spectral::WindowSpec &w) {
  return {{"kind", w.kind == spectral::WindowKind::hann ? "hann" : "rectangular"},
          {"segment_length_s", w.segment_length_s},
          {"overlap", w.overlap}};
}

nlohmann::json to_json(const spectral::Spectrum &s) {
  auto j = tagged("spectrum");
  j["f0_hz"] = s.f0;
  j["df_hz"] = s.df;
  j["bins"] = s.psd.size();
  j["window"] = to_json(s.window);
  j["n_averages"] = s.n_averages;
  j["segment_samples"] = s.segment_samples;
  j["two_sided"] = s.two_sided;
  j["enbw_hz"] = s.enbw_hz;
  j["resolution_hz"] = spectral::resolution_factor(s.window.kind) / s.window.segment_length_s;
  return j;
}

nlohmann::json to_json(const spectral::TripletResult &r) {
  auto j = tagged("triplet");
  j["mode"] = r.mode == spectral::TripletMode::phase_locked ? "phase_locked" : "agnostic";
  j["X_star"] = r.x_star;
  j["X_plus"] = r.x_plus;
  j["X_minus"] = r.x_minus;
  j["omega_star"] = r.omega_star;
  j["omega_plus"] = r.omega_plus;
  j["omega_minus"] = r.omega_minus;
  j["a_star"] = r.a_star;
  j["a_plus"] = r.a_plus;
  j["a_minus"] = r.a_minus;
  j["epsilon_signed"] = r.epsilon_signed;
  j["epsilon_hat"] = r.epsilon_hat;
  // non-finite SNRs (noiseless input) are written as null
  j["snr_star"] = r.snr_star;
  j["snr_pm"] = r.snr_pm;
  return j;
}

nlohmann::json to_json(const sensitivity::SensitivityCurve &c) {
  auto j = tagged("sensitivity_curve");
  j["gain_factor"] = c.gain_factor;
  j["gains"] = {{"matched_weighting", c.gains.matched_weighting},
                {"three_axis", c.gains.three_axis},
                {"resource_sqrt_n", c.gains.resource_sqrt_n},
                {"extra_factor", c.gains.extra_factor}};
  j["eta_eff_t_per_rthz"] = c.eta_eff_t_per_rthz;
  auto pts = nlohmann::json::array();
  for (const auto &p : c.points) {
    pts.push_back({{"m_a_ueV", p.mass_ueV},
                   {"g_min", p.g_min},
                   {"regime", sensitivity::to_string(p.regime)},
                   {"t_seg_s", p.t_seg_s},
                   {"t_coh_s", p.t_coh_s},
                   {"n_trials", p.n_trials},
                   {"z", p.z_threshold},
                   {"snr_required", p.snr_required}});
  }
  j["points"] = std::move(pts);
  return j;
}

nlohmann::json to_json(const sensitivity::DfszBand &b) {
  auto j = tagged("dfsz_band");
  j["m_a_ueV"] = b.mass_ueV;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  j["benchmark"] = b.benchmark;
  return j;
}

void write_spectrum_csv(std::ostream &os, const spectral::Spectrum &s) {
  os << "f,psd\n";
  for (std::size_t k = 0; k < s.psd.size(); ++k) {
    os << format_double(s.frequency(k)) << ',' << format_double(s.psd[k]) << '\n';
  }
}

void write_spectrum_csv(const std::filesystem::path &path, const spectral::Spectrum &s) {
  to_file(path, [&](std::ostream &os) { write_spectrum_csv(os, s); });
}

void write_curve_csv(std::ostream &os, const sensitivity::SensitivityCurve &c) {
  os << "m_a_ueV,g_min,regime,t_seg_s,t_coh_s,n_trials,z,snr_required\n";
  for (const auto &p : c.points) {
    os << format_double(p.mass_ueV) << ',' << format_double(p.g_min) << ','
       << sensitivity::to_string(p.regime) << ',' << format_double(p.t_seg_s) << ','
       << format_double(p.t_coh_s) << ',' << format_double(p.n_trials) << ','
       << format_double(p.z_threshold) << ',' << format_double(p.snr_required) << '\n';
  }
}

void write_curve_csv(const std::filesystem::path &path, const sensitivity::SensitivityCurve &c) {
  to_file(path, [&](std::ostream &os) { write_curve_csv(os, c); });
}

} // namespace axionkit::io
