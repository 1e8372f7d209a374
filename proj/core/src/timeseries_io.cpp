#include "axionkit/io.hpp"

#include "axionkit/error.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace axionkit {

TimeSeries::TimeSeries(double t0, double dt, std::vector<double> samples, SeriesMeta meta)
    : t0_(t0), dt_(dt), samples_(std::move(samples)), meta_(std::move(meta)) {
  check();
}

TimeSeries::TimeSeries(double t0, double dt, std::vector<Complex> samples, SeriesMeta meta)
    : t0_(t0), dt_(dt), samples_(std::move(samples)), meta_(std::move(meta)) {
  check();
}

std::size_t TimeSeries::size() const noexcept {
  return std::visit([](const auto &v) { return v.size(); }, samples_);
}

std::span<const double> TimeSeries::real() const {
  if (is_complex()) {
    throw InvalidArgument("TimeSeries: real view requested on a complex series");
  }
  return std::get<0>(samples_);
}

std::span<double> TimeSeries::real() {
  if (is_complex()) {
    throw InvalidArgument("TimeSeries: real view requested on a complex series");
  }
  return std::get<0>(samples_);
}

std::span<const TimeSeries::Complex> TimeSeries::complex() const {
  if (!is_complex()) {
    throw InvalidArgument("TimeSeries: complex view requested on a real series");
  }
  return std::get<1>(samples_);
}

std::vector<TimeSeries::Complex> TimeSeries::as_complex() const {
  if (is_complex()) {
    return std::get<1>(samples_);
  }
  const auto &r = std::get<0>(samples_);
  return {r.begin(), r.end()};
}

void TimeSeries::check() const {
  if (!std::isfinite(t0_)) {
    throw InvalidArgument("TimeSeries: t0 must be finite");
  }
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw InvalidArgument("TimeSeries: dt must be positive");
  }
  if (size() < 2) {
    throw InvalidArgument("TimeSeries: need at least two samples");
  }
  if (meta_.source.empty()) {
    throw InvalidArgument("TimeSeries: meta.source must be populated");
  }
}

namespace io {

static_assert(std::endian::native == std::endian::little,
              "binary series IO assumes a little-endian host");

std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) {
    throw NumericalError("format_double: conversion failed");
  }
  return {buf.data(), end};
}

nlohmann::json meta_to_json(const SeriesMeta &meta) {
  nlohmann::json j = {{"source", meta.source},
                      {"geometry_hash", meta.geometry_hash},
                      {"axion_mass_ueV", meta.axion_mass_ueV},
                      {"g_ae", meta.g_ae},
                      {"units", meta.units},
                      {"extra", meta.extra}};
  j["seed"] = meta.seed ? nlohmann::json(*meta.seed) : nlohmann::json(nullptr);
  return j;
}

SeriesMeta meta_from_json(const nlohmann::json &j) {
  SeriesMeta meta;
  meta.source = j.at("source").get<std::string>();
  meta.geometry_hash = j.value("geometry_hash", "");
  if (j.contains("seed") && !j.at("seed").is_null()) {
    meta.seed = j.at("seed").get<std::uint64_t>();
  }
  meta.axion_mass_ueV = j.value("axion_mass_ueV", 0.0);
  meta.g_ae = j.value("g_ae", 0.0);
  meta.units = j.value("units", "normalized");
  meta.extra = j.value("extra", nlohmann::json::object());
  return meta;
}

void write_series_csv(std::ostream &os, const TimeSeries &series) {
  if (series.is_complex()) {
    os << "t,re,im\n";
    const auto v = series.complex();
    for (std::size_t k = 0; k < v.size(); ++k) {
      os << format_double(series.time(k)) << ',' << format_double(v[k].real()) << ','
         << format_double(v[k].imag()) << '\n';
    }
  } else {
    os << "t,value\n";
    const auto v = series.real();
    for (std::size_t k = 0; k < v.size(); ++k) {
      os << format_double(series.time(k)) << ',' << format_double(v[k]) << '\n';
    }
  }
}

void write_series_csv(const std::filesystem::path &path, const TimeSeries &series) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  write_series_csv(os, series);
}

namespace {

double parse_double(std::string_view field, std::size_t line) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw InvalidArgument("csv line " + std::to_string(line) + ": bad number '" +
                          std::string(field) + "'");
  }
  return x;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(s.substr(start, comma - start));
    if (comma == std::string_view::npos) {
      return out;
    }
    start = comma + 1;
  }
}

} // namespace

TimeSeries read_series_csv(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) {
    throw InvalidArgument("cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(is, line)) {
    throw InvalidArgument(path.string() + ": empty file");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  const bool complex = (line == "t,re,im");
  if (!complex && line != "t,value") {
    throw InvalidArgument(path.string() + ": expected header 't,value' or 't,re,im'");
  }
  std::vector<double> t;
  std::vector<double> re;
  std::vector<double> im;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto fields = split(line);
    if (fields.size() != (complex ? 3U : 2U)) {
      throw InvalidArgument("csv line " + std::to_string(lineno) + ": wrong column count");
    }
    t.push_back(parse_double(fields[0], lineno));
    re.push_back(parse_double(fields[1], lineno));
    if (complex) {
      im.push_back(parse_double(fields[2], lineno));
    }
  }
  if (t.size() < 2) {
    throw InvalidArgument(path.string() + ": need at least two rows");
  }
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double expected = t.front() + static_cast<double>(k) * dt;
    if (std::abs(t[k] - expected) > 1e-9 * std::max(std::abs(dt) * static_cast<double>(k), 1.0)) {
      throw InvalidArgument(path.string() + ": time stamps are not uniformly spaced");
    }
  }
  SeriesMeta meta;
  meta.source = path.filename().string();
  if (complex) {
    std::vector<std::complex<double>> z(re.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
      z[k] = {re[k], im[k]};
    }
    return TimeSeries(t.front(), dt, std::move(z), std::move(meta));
  }
  return TimeSeries(t.front(), dt, std::move(re), std::move(meta));
}

namespace {

void put_u32(std::ostream &os, std::uint32_t v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream &is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char *>(&v), sizeof v);
  return v;
}

} // namespace

void write_series_binary(const std::filesystem::path &path, const TimeSeries &series) {
  nlohmann::json header = {{"t0", series.t0()},
                           {"dt", series.dt()},
                           {"n", series.size()},
                           {"complex", series.is_complex()},
                           {"meta", meta_to_json(series.meta())}};
  const std::string text = header.dump();
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  os.write("AXTS", 4);
  put_u32(os, binary_series_version);
  put_u32(os, static_cast<std::uint32_t>(text.size()));
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (series.is_complex()) {
    const auto v = series.complex();
    os.write(reinterpret_cast<const char *>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(v[0])));
  } else {
    const auto v = series.real();
    os.write(reinterpret_cast<const char *>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(double)));
  }
}

TimeSeries read_series_binary(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw InvalidArgument("cannot open " + path.string());
  }
  char magic[4] = {};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "AXTS", 4) != 0) {
    throw InvalidArgument(path.string() + ": not an AXTS series");
  }
  const auto version = get_u32(is);
  if (version != binary_series_version) {
    throw InvalidArgument(path.string() + ": unsupported AXTS version " +
                          std::to_string(version));
  }
  const auto header_len = get_u32(is);
  std::string text(header_len, '\0');
  is.read(text.data(), header_len);
  if (!is) {
    throw InvalidArgument(path.string() + ": truncated header");
  }
  const auto header = nlohmann::json::parse(text);
  const auto n = header.at("n").get<std::size_t>();
  const bool complex = header.at("complex").get<bool>();
  auto meta = meta_from_json(header.at("meta"));
  const double t0 = header.at("t0").get<double>();
  const double dt = header.at("dt").get<double>();
  if (complex) {
    std::vector<std::complex<double>> z(n);
    is.read(reinterpret_cast<char *>(z.data()), static_cast<std::streamsize>(n * sizeof(z[0])));
    if (!is) {
      throw InvalidArgument(path.string() + ": truncated samples");
    }
    return TimeSeries(t0, dt, std::move(z), std::move(meta));
  }
  std::vector<double> x(n);
  is.read(reinterpret_cast<char *>(x.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (!is) {
    throw InvalidArgument(path.string() + ": truncated samples");
  }
  return TimeSeries(t0, dt, std::move(x), std::move(meta));
}

TimeSeries read_series(const std::filesystem::path &path) {
  if (path.extension() == ".axts") {
    return read_series_binary(path);
  }
  return read_series_csv(path);
}

void write_json(const std::filesystem::path &path, const nlohmann::json &j) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  os << j.dump(2) << '\n';
}

} // namespace io
} // namespace axionkit
