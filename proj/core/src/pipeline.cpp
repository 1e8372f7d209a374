#include "axionkit/pipeline.hpp"

#include "axionkit/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace axionkit::pipeline {

namespace {

double mean_of(const std::vector<double> &v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

} // namespace

std::vector<double> measured_daily_rms(const TimeSeries &series,
                                       const geometry::EphemerisConstants &eph) {
  const auto y = series.real();
  const double period = eph.sidereal_period();
  std::vector<double> out;
  std::size_t k = 0;
  for (long day = 0; k < y.size(); ++day) {
    const double end = series.t0() + static_cast<double>(day + 1) * period;
    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atb = Eigen::Vector3d::Zero();
    std::size_t count = 0;
    for (; k < y.size() && series.time(k) < end; ++k, ++count) {
      const double phase = eph.sidereal_rate * series.time(k);
      const Eigen::Vector3d row(1.0, std::cos(phase), std::sin(phase));
      ata += row * row.transpose();
      atb += row * y[k];
    }
    if (count < 4) {
      continue;
    }
    const Eigen::Vector3d c = ata.ldlt().solve(atb);
    out.push_back(std::sqrt(c(0) * c(0) + 0.5 * (c(1) * c(1) + c(2) * c(2))));
  }
  return out;
}

DailyRmsStudy daily_rms_study(const geometry::SiteGeometry &site,
                              const geometry::EphemerisConstants &eph,
                              const halo::AxionParams &axion, const halo::HaloParams &halo,
                              const signal::QubitParams &qubit, const signal::NoiseConfig &noise,
                              int days, int samples_per_day, int trials, double band_sigma) {
  if (days < 1 || samples_per_day < 10 || trials < 2) {
    throw InvalidArgument("daily_rms_study: need days >= 1, samples_per_day >= 10, trials >= 2");
  }
  DailyRmsStudy study;
  study.band_sigma = band_sigma;

  const auto coeffs = geometry::fit_site(site, eph);
  for (int d = 0; d < days; ++d) {
    study.day_time_s.push_back(geometry::day_midpoint(d, coeffs));
    study.theory.push_back(geometry::daily_rms(d, coeffs));
  }
  const double theory_mean = mean_of(study.theory);
  for (double r : study.theory) {
    study.theory_norm.push_back(r / theory_mean);
  }

  signal::SynthesisRequest req;
  req.t0_s = 0.0;
  req.dt_s = eph.sidereal_period() / samples_per_day;
  req.span_s = static_cast<double>(days) * eph.sidereal_period();
  req.source = signal::SignalSource::geometry;
  req.speed_factor = false;

  for (int trial = 0; trial < trials; ++trial) {
    req.segment = static_cast<std::uint64_t>(trial);
    const auto series = signal::synthesize_observable(site, eph, axion, halo, qubit, noise, req);
    auto r = measured_daily_rms(series, eph);
    r.resize(static_cast<std::size_t>(days), std::numeric_limits<double>::quiet_NaN());
    const double m = mean_of(r);
    for (auto &x : r) {
      x /= m;
    }
    study.trials.push_back(std::move(r));
  }

  const auto n_trials = static_cast<double>(trials);
  std::size_t inside = 0;
  for (int d = 0; d < days; ++d) {
    double s = 0.0;
    for (const auto &t : study.trials) {
      s += t[static_cast<std::size_t>(d)];
    }
    const double mean = s / n_trials;
    double ss = 0.0;
    for (const auto &t : study.trials) {
      const double e = t[static_cast<std::size_t>(d)] - mean;
      ss += e * e;
    }
    const double sd = std::sqrt(ss / (n_trials - 1.0));
    study.mc_mean.push_back(mean);
    study.mc_std.push_back(sd);
    if (std::abs(mean - study.theory_norm[static_cast<std::size_t>(d)]) <= band_sigma * sd) {
      ++inside;
    }
  }
  study.fraction_inside = static_cast<double>(inside) / static_cast<double>(days);
  return study;
}

TripletMorphology triplet_morphology(const spectral::Spectrum &spectrum,
                                     const geometry::EphemerisConstants &eph) {
  if (spectrum.two_sided) {
    throw InvalidArgument("triplet_morphology: expects a one-sided spectrum");
  }
  TripletMorphology m;
  m.f_star = eph.sidereal_frequency_hz();
  m.f_plus = m.f_star + eph.annual_frequency_hz();
  m.f_minus = m.f_star - eph.annual_frequency_hz();
  m.bin_hz = spectrum.df;
  m.resolution_hz = spectral::resolution_factor(spectrum.window.kind) /
                    spectrum.window.segment_length_s;

  const double f_ann = eph.annual_frequency_hz();
  const auto peaks = spectral::local_maxima(spectrum, m.f_star - 1.5 * f_ann, m.f_star + 1.5 * f_ann);
  for (std::size_t i = 0; i < std::min<std::size_t>(3, peaks.size()); ++i) {
    m.peak_hz.push_back(spectrum.frequency(peaks[i]));
  }
  std::sort(m.peak_hz.begin(), m.peak_hz.end());
  if (m.peak_hz.size() == 3) {
    const double targets[3] = {m.f_minus, m.f_star, m.f_plus};
    m.peaks_at_triplet = true;
    for (int i = 0; i < 3; ++i) {
      if (std::abs(m.peak_hz[static_cast<std::size_t>(i)] - targets[i]) > spectrum.df) {
        m.peaks_at_triplet = false;
      }
    }
    m.spacing_lo_hz = m.peak_hz[1] - m.peak_hz[0];
    m.spacing_hi_hz = m.peak_hz[2] - m.peak_hz[1];
  }
  m.power_star = spectral::line_power(spectrum, m.f_star);
  m.power_plus = spectral::line_power(spectrum, m.f_plus);
  m.power_minus = spectral::line_power(spectrum, m.f_minus);
  m.side_to_center = 0.5 * (m.power_plus + m.power_minus) / m.power_star;
  return m;
}

} // namespace axionkit::pipeline
