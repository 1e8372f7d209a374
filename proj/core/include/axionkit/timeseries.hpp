#pragma once

#include <nlohmann/json.hpp>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace axionkit {

//! Provenance carried by every series. `source` must be non-empty.
struct SeriesMeta {
  std::string source;
  std::string geometry_hash;
  std::optional<std::uint64_t> seed;
  double axion_mass_ueV = 0.0;
  double g_ae = 0.0;
  std::string units = "normalized";
  nlohmann::json extra = nlohmann::json::object();
};

//! Uniformly sampled real or complex stream, t_k = t0 + k dt.
class TimeSeries {
public:
  using Complex = std::complex<double>;

  TimeSeries(double t0, double dt, std::vector<double> samples, SeriesMeta meta);
  TimeSeries(double t0, double dt, std::vector<Complex> samples, SeriesMeta meta);

  bool is_complex() const noexcept { return samples_.index() == 1; }
  std::size_t size() const noexcept;

  double t0() const noexcept { return t0_; }
  double dt() const noexcept { return dt_; }
  double time(std::size_t k) const noexcept { return t0_ + static_cast<double>(k) * dt_; }
  //! size() * dt
  double duration() const noexcept { return static_cast<double>(size()) * dt_; }

  //! Throws InvalidArgument if the series is complex.
  std::span<const double> real() const;
  std::span<double> real();
  //! Throws InvalidArgument if the series is real.
  std::span<const Complex> complex() const;

  //! Copy of the samples promoted to complex.
  std::vector<Complex> as_complex() const;

  const SeriesMeta &meta() const noexcept { return meta_; }
  SeriesMeta &meta() noexcept { return meta_; }

private:
  void check() const;

  double t0_;
  double dt_;
  std::variant<std::vector<double>, std::vector<Complex>> samples_;
  SeriesMeta meta_;
};

} // namespace axionkit
