#pragma once

#include "axionkit/geometry.hpp"
#include "axionkit/sensitivity.hpp"
#include "axionkit/spectral.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>

// JSON and CSV records for the result types. Every JSON record carries
// "schema_version" and a "kind" tag.
namespace axionkit::io {

nlohmann::json to_json(const geometry::ModulationCoefficients &c);
geometry::ModulationCoefficients coefficients_from_json(const nlohmann::json &j);

nlohmann::json to_json(const geometry::GeometricGains &g);
nlohmann::json to_json(const spectral::WindowSpec &w);
//! Window metadata and bookkeeping only; the density goes to CSV.
nlohmann::json to_json(const spectral::Spectrum &s);
nlohmann::json to_json(const spectral::TripletResult &r);
nlohmann::json to_json(const sensitivity::SensitivityCurve &c);
nlohmann::json to_json(const sensitivity::DfszBand &b);

//! `f,psd`
void write_spectrum_csv(std::ostream &os, const spectral::Spectrum &s);
void write_spectrum_csv(const std::filesystem::path &path, const spectral::Spectrum &s);

//! `m_a_ueV,g_min,regime,t_seg_s,t_coh_s,n_trials,z,snr_required`
void write_curve_csv(std::ostream &os, const sensitivity::SensitivityCurve &c);
void write_curve_csv(const std::filesystem::path &path, const sensitivity::SensitivityCurve &c);

} // namespace axionkit::io
