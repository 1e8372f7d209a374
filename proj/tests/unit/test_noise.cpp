#include "test_util.hpp"

#include "axionkit/error.hpp"
#include "axionkit/noise.hpp"
#include "axionkit/spectral.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numeric>

using namespace axionkit;
using namespace axionkit::signal;

namespace {

double variance(const std::vector<double> &x) {
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double s = 0.0;
  for (double v : x) {
    s += (v - m) * (v - m);
  }
  return s / static_cast<double>(x.size() - 1);
}

// least-squares slope of y against x
double slope(const std::vector<double> &x, const std::vector<double> &y) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(x.size()), 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    a(static_cast<Eigen::Index>(i), 0) = 1.0;
    a(static_cast<Eigen::Index>(i), 1) = x[i];
    b(static_cast<Eigen::Index>(i)) = y[i];
  }
  return a.colPivHouseholderQr().solve(b)(1);
}

} // namespace

TEST(Noise, EnginesAreDeterministicAndIndependent) {
  auto a = make_engine(42, NoiseStream::white, 3);
  auto b = make_engine(42, NoiseStream::white, 3);
  auto c = make_engine(42, NoiseStream::pink, 3);
  auto d = make_engine(42, NoiseStream::white, 4);
  const auto va = a();
  EXPECT_EQ(va, b());
  EXPECT_NE(va, c());
  EXPECT_NE(va, d());
}

TEST(Noise, WhiteVarianceFollowsPsd) {
  auto e = make_engine(1, NoiseStream::white);
  const auto x = white_noise(200000, 0.5, 3.0, e);
  EXPECT_NEAR(variance(x) / (3.0 / (2.0 * 0.5)), 1.0, 0.02);
}

TEST(Noise, WhiteLevelInWelchSpectrum) {
  auto e = make_engine(2, NoiseStream::white);
  const double dt = 0.1;
  const double psd = 0.7;
  auto x = white_noise(1 << 18, dt, psd, e);
  const TimeSeries s(0.0, dt, std::move(x), named("white"));
  spectral::WindowSpec w;
  w.segment_length_s = 1024 * dt;
  const auto sp = spectral::periodogram(s, w);
  const double mean = std::accumulate(sp.psd.begin() + 1, sp.psd.end() - 1, 0.0) /
                      static_cast<double>(sp.psd.size() - 2);
  EXPECT_NEAR(mean / psd, 1.0, 0.05);
}

TEST(Noise, PinkSlopeOverOneDecade) {
  for (double exponent : {1.0, 1.5}) {
    auto e = make_engine(3, NoiseStream::pink);
    const double dt = 100.0;
    auto x = power_law_noise(101000, dt, 1e-3, exponent, e);
    const TimeSeries s(0.0, dt, std::move(x), named("pink"));
    spectral::WindowSpec w;
    w.segment_length_s = 2000 * dt;
    w.overlap = 0.5;
    const auto sp = spectral::periodogram(s, w);
    ASSERT_GE(sp.n_averages, 100U);
    std::vector<double> lf;
    std::vector<double> lp;
    for (std::size_t k = 0; k < sp.psd.size(); ++k) {
      const double f = sp.frequency(k);
      if (f >= 1e-4 && f <= 1e-3) {
        lf.push_back(std::log10(f));
        lp.push_back(std::log10(sp.psd[k]));
      }
    }
    EXPECT_NEAR(slope(lf, lp), -exponent, 0.1) << exponent;
  }
}

TEST(Noise, PinkAmplitudeAtOneHertzReference) {
  auto e = make_engine(4, NoiseStream::pink);
  const double dt = 0.01;
  auto x = power_law_noise(1 << 18, dt, 2e-3, 1.0, e);
  const TimeSeries s(0.0, dt, std::move(x), named("pink"));
  spectral::WindowSpec w;
  w.segment_length_s = 4096 * dt;
  const auto sp = spectral::periodogram(s, w);
  // average S(f) f over 0.5..2 Hz should be the amplitude
  double acc = 0.0;
  int cnt = 0;
  for (std::size_t k = 0; k < sp.psd.size(); ++k) {
    const double f = sp.frequency(k);
    if (f >= 0.5 && f <= 2.0) {
      acc += sp.psd[k] * f;
      ++cnt;
    }
  }
  EXPECT_NEAR(acc / cnt / 2e-3, 1.0, 0.05);
}

TEST(Noise, TelegraphAutocorrelationRate) {
  auto e = make_engine(5, NoiseStream::telegraph);
  const double rate = 1.0 / 3600.0;
  const double dt = 60.0;
  const double amp = 0.3;
  const auto x = telegraph_noise(800000, dt, amp, rate, e);
  for (double v : x) {
    ASSERT_EQ(std::abs(v), amp);
  }
  std::vector<double> lag;
  std::vector<double> logc;
  for (int l = 1; l <= 30; ++l) {
    double c = 0.0;
    for (std::size_t k = 0; k + static_cast<std::size_t>(l) < x.size(); ++k) {
      c += x[k] * x[k + static_cast<std::size_t>(l)];
    }
    c /= static_cast<double>(x.size() - static_cast<std::size_t>(l)) * amp * amp;
    lag.push_back(l * dt);
    logc.push_back(std::log(c));
  }
  EXPECT_NEAR(-slope(lag, logc) / (2.0 * rate), 1.0, 0.1);
}

TEST(Noise, ReadoutConvergesToAnalogValue) {
  ReadoutChannel ch{1.0, 1.0, 10000, 2.0};
  auto e = make_engine(6, NoiseStream::readout);
  for (double x : {-1.2, -0.3, 0.0, 0.45, 1.7}) {
    const double p = 0.5 + 0.25 * x;
    const double sigma = 2.0 * ch.full_scale * std::sqrt(p * (1.0 - p) / 1e4);
    EXPECT_NEAR(readout_sample(x, ch, e), x, 3.0 * sigma) << x;
  }
}

TEST(Noise, ReadoutUnbiasedWithAssignmentErrors) {
  ReadoutChannel ch{0.95, 0.9, 10, 2.0};
  auto e = make_engine(7, NoiseStream::readout);
  const double x = 0.4;
  const int m = 200000;
  double s = 0.0;
  double ss = 0.0;
  for (int i = 0; i < m; ++i) {
    const double v = readout_sample(x, ch, e);
    s += v;
    ss += v * v;
  }
  const double mean = s / m;
  const double sd = std::sqrt(ss / m - mean * mean);
  EXPECT_NEAR(mean, x, 4.0 * sd / std::sqrt(static_cast<double>(m)));
}

TEST(Noise, ReadoutRejectsUselessChannel) {
  std::vector<double> v(3, 0.0);
  auto e = make_engine(8, NoiseStream::readout);
  EXPECT_THROW(apply_readout(v, ReadoutChannel{0.5, 0.5, 10, 2.0}, e), InvalidArgument);
  EXPECT_THROW(apply_readout(v, ReadoutChannel{0.9, 0.9, 0, 2.0}, e), InvalidArgument);
}

TEST(Noise, ConfigSilenceAndValidation) {
  EXPECT_TRUE(NoiseConfig::none().is_silent());
  EXPECT_FALSE(NoiseConfig{}.is_silent());
  NoiseConfig bad;
  bad.white_psd = -1.0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}
