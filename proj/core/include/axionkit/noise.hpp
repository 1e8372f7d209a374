#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace axionkit::signal {

//! Additive and readout noise model, in units of the (normalised) signal.
//! Defaults give a single-sample SNR of the daily tone near one at dt = 600 s.
struct NoiseConfig {
  double white_psd = 500.0;          //!< one-sided, units^2/Hz
  double pink_amplitude = 5e-3;      //!< one-sided PSD at 1 Hz, units^2/Hz
  double pink_exponent = 1.0;        //!< S(f) = A / f^exponent
  double rtn_amplitude = 0.2;        //!< telegraph levels are +/- amplitude
  double rtn_rate_hz = 1.0 / 3600.0; //!< switching rate; autocorrelation decays at 2x this
  bool readout_enabled = true;       //!< binary spin-blockade style readout
  double readout_f0 = 0.95;          //!< P(read 0 | state 0)
  double readout_f1 = 0.95;          //!< P(read 1 | state 1)
  double readout_full_scale = 2.0;   //!< signal value mapped to P(1) = 1
  std::uint64_t seed = 20240601;

  //! All amplitudes zero and readout bypassed.
  static NoiseConfig none();
  bool is_silent() const;
  void validate() const;
};

//! Independent generator streams derived from one master seed.
enum class NoiseStream : std::uint64_t { white = 1, pink = 2, telegraph = 3, readout = 4 };

using Engine = std::mt19937_64;

//! Engine seeded from (master seed, stream, segment) through seed_seq.
Engine make_engine(std::uint64_t master_seed, NoiseStream stream, std::uint64_t segment = 0);

//! Gaussian white noise with one-sided PSD `psd`: variance psd / (2 dt).
std::vector<double> white_noise(std::size_t n, double dt, double psd, Engine &engine);

//! Power-law noise by spectral shaping of white Gaussian noise in the
//! frequency domain. One-sided PSD A / f^exponent at every non-DC bin.
std::vector<double> power_law_noise(std::size_t n, double dt, double amplitude, double exponent,
                                    Engine &engine);

//! Symmetric random telegraph noise (+/- amplitude), exact two-state Markov
//! sampling at step dt.
std::vector<double> telegraph_noise(std::size_t n, double dt, double amplitude, double rate_hz,
                                    Engine &engine);

struct ReadoutChannel {
  double f0 = 0.95;
  double f1 = 0.95;
  long shots = 10;          //!< spins averaged per sample
  double full_scale = 2.0;  //!< |x| = full_scale saturates P(1) at 0 or 1
};

//! Binarise an analog value through N Bernoulli shots with assignment errors,
//! then invert the expected response so the result is unbiased in x (up to
//! saturation).
double readout_sample(double x, const ReadoutChannel &channel, Engine &engine);

void apply_readout(std::span<double> values, const ReadoutChannel &channel, Engine &engine);

} // namespace axionkit::signal
