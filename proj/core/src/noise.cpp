#include "axionkit/noise.hpp"

#include "axionkit/error.hpp"

#include "fftw_lock.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>

namespace axionkit::signal {

NoiseConfig NoiseConfig::none() {
  NoiseConfig cfg;
  cfg.white_psd = 0.0;
  cfg.pink_amplitude = 0.0;
  cfg.rtn_amplitude = 0.0;
  cfg.readout_enabled = false;
  return cfg;
}

bool NoiseConfig::is_silent() const {
  return white_psd == 0.0 && pink_amplitude == 0.0 && rtn_amplitude == 0.0 && !readout_enabled;
}

void NoiseConfig::validate() const {
  for (double x : {white_psd, pink_amplitude, rtn_amplitude, rtn_rate_hz}) {
    if (!std::isfinite(x) || x < 0.0) {
      throw InvalidArgument("noise: amplitudes and rates must be finite and >= 0");
    }
  }
  if (!std::isfinite(pink_exponent) || pink_exponent < 0.0 || pink_exponent > 3.0) {
    throw InvalidArgument("noise: pink exponent must lie in [0, 3]");
  }
  for (double f : {readout_f0, readout_f1}) {
    if (!(f >= 0.5 && f <= 1.0)) {
      throw InvalidArgument("noise: readout fidelities must lie in [0.5, 1]");
    }
  }
  if (readout_enabled && readout_f0 + readout_f1 <= 1.0) {
    throw InvalidArgument("noise: readout with f0 + f1 = 1 carries no information");
  }
  if (!(readout_full_scale > 0.0)) {
    throw InvalidArgument("noise: readout full scale must be positive");
  }
}

Engine make_engine(std::uint64_t master_seed, NoiseStream stream, std::uint64_t segment) {
  const auto s = static_cast<std::uint64_t>(stream);
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(s),
                    static_cast<std::uint32_t>(segment),
                    static_cast<std::uint32_t>(segment >> 32)};
  return Engine(seq);
}

std::vector<double> white_noise(std::size_t n, double dt, double psd, Engine &engine) {
  std::vector<double> out(n, 0.0);
  if (psd == 0.0) {
    return out;
  }
  if (!(dt > 0.0) || psd < 0.0) {
    throw InvalidArgument("white_noise: need dt > 0 and psd >= 0");
  }
  std::normal_distribution<double> gauss(0.0, std::sqrt(psd / (2.0 * dt)));
  for (auto &x : out) {
    x = gauss(engine);
  }
  return out;
}

std::vector<double> power_law_noise(std::size_t n, double dt, double amplitude, double exponent,
                                    Engine &engine) {
  std::vector<double> out(n, 0.0);
  if (amplitude == 0.0 || n < 2) {
    return out;
  }
  if (!(dt > 0.0) || amplitude < 0.0) {
    throw InvalidArgument("power_law_noise: need dt > 0 and amplitude >= 0");
  }
  const std::size_t n_bins = n / 2 + 1;
  const double df = 1.0 / (static_cast<double>(n) * dt);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // x_j = sum_k X_k e^{2 pi i jk/n}; the periodogram 2 dt n |X_k|^2 then has
  // expectation S(f_k) for interior bins and dt n |X|^2 at Nyquist.
  auto *spectrum = static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n_bins));
  spectrum[0][0] = 0.0;
  spectrum[0][1] = 0.0;
  for (std::size_t k = 1; k < n_bins; ++k) {
    const double f = static_cast<double>(k) * df;
    const double s = amplitude / std::pow(f, exponent);
    const bool nyquist = (n % 2 == 0) && (k == n_bins - 1);
    if (nyquist) {
      spectrum[k][0] = gauss(engine) * std::sqrt(s / (dt * static_cast<double>(n)));
      spectrum[k][1] = 0.0;
    } else {
      const double sigma = std::sqrt(s / (4.0 * dt * static_cast<double>(n)));
      spectrum[k][0] = gauss(engine) * sigma;
      spectrum[k][1] = gauss(engine) * sigma;
    }
  }
  fftw_plan plan;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), spectrum, out.data(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(spectrum);
  return out;
}

std::vector<double> telegraph_noise(std::size_t n, double dt, double amplitude, double rate_hz,
                                    Engine &engine) {
  std::vector<double> out(n, 0.0);
  if (amplitude == 0.0 || n == 0) {
    return out;
  }
  if (!(dt > 0.0) || rate_hz < 0.0) {
    throw InvalidArgument("telegraph_noise: need dt > 0 and rate >= 0");
  }
  // probability of an odd number of switches within dt
  const double flip = 0.5 * (1.0 - std::exp(-2.0 * rate_hz * dt));
  std::bernoulli_distribution start(0.5);
  std::bernoulli_distribution switches(flip);
  double state = start(engine) ? amplitude : -amplitude;
  for (auto &x : out) {
    x = state;
    if (switches(engine)) {
      state = -state;
    }
  }
  return out;
}

double readout_sample(double x, const ReadoutChannel &channel, Engine &engine) {
  const double p = std::clamp(0.5 + 0.5 * x / channel.full_scale, 0.0, 1.0);
  std::binomial_distribution<long> true_ones(channel.shots, p);
  const long k = true_ones(engine);
  std::binomial_distribution<long> kept(k, channel.f1);
  std::binomial_distribution<long> flipped(channel.shots - k, 1.0 - channel.f0);
  const long observed = kept(engine) + flipped(engine);
  const double mean = static_cast<double>(observed) / static_cast<double>(channel.shots);
  const double p_hat = (mean - (1.0 - channel.f0)) / (channel.f0 + channel.f1 - 1.0);
  return (2.0 * p_hat - 1.0) * channel.full_scale;
}

void apply_readout(std::span<double> values, const ReadoutChannel &channel, Engine &engine) {
  if (channel.shots < 1) {
    throw InvalidArgument("apply_readout: need at least one shot per sample");
  }
  if (channel.f0 + channel.f1 <= 1.0) {
    throw InvalidArgument("apply_readout: fidelities carry no information");
  }
  for (auto &x : values) {
    x = readout_sample(x, channel, engine);
  }
}

} // namespace axionkit::signal
