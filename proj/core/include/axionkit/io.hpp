#pragma once

#include "axionkit/timeseries.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace axionkit::io {

//! Binary series layout, little endian:
//!   "AXTS" | u32 version | u32 header bytes | JSON header | f64 samples
//! Complex samples are stored interleaved (re, im).
inline constexpr std::uint32_t binary_series_version = 1;

//! Version tag stamped into every JSON record written by the toolkit.
inline constexpr int json_schema_version = 1;

//! Shortest decimal text that parses back to the same double.
std::string format_double(double x);

nlohmann::json meta_to_json(const SeriesMeta &meta);
SeriesMeta meta_from_json(const nlohmann::json &j);

//! CSV with header `t,value` (real) or `t,re,im` (complex).
void write_series_csv(std::ostream &os, const TimeSeries &series);
void write_series_csv(const std::filesystem::path &path, const TimeSeries &series);

//! Reads the CSV layout above. Time stamps must be uniformly spaced within
//! 1e-9 relative; `meta.source` is set to the file name.
TimeSeries read_series_csv(const std::filesystem::path &path);

void write_series_binary(const std::filesystem::path &path, const TimeSeries &series);
TimeSeries read_series_binary(const std::filesystem::path &path);

//! Dispatch on the extension: ".axts" binary, anything else CSV.
TimeSeries read_series(const std::filesystem::path &path);

//! Pretty-printed JSON with a trailing newline.
void write_json(const std::filesystem::path &path, const nlohmann::json &j);

} // namespace axionkit::io
