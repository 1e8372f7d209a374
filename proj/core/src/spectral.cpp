#include "axionkit/spectral.hpp"

#include "axionkit/error.hpp"
#include "axionkit/units.hpp"

#include "fftw_lock.hpp"

#include <Eigen/Dense>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace axionkit::spectral {

void WindowSpec::validate() const {
  if (!(overlap >= 0.0 && overlap <= 0.9)) {
    throw InvalidArgument("window: overlap must lie in [0, 0.9]");
  }
  if (!(segment_length_s >= 0.0) || !std::isfinite(segment_length_s)) {
    throw InvalidArgument("window: segment length must be >= 0");
  }
}

std::vector<double> window_samples(WindowKind kind, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (kind == WindowKind::hann) {
    for (std::size_t k = 0; k < n; ++k) {
      w[k] = 0.5 * (1.0 - std::cos(units::two_pi * static_cast<double>(k) / static_cast<double>(n)));
    }
  }
  return w;
}

std::size_t Spectrum::bin_of(double f) const {
  const double k = std::round((f - f0) / df);
  if (k <= 0.0) {
    return 0;
  }
  return std::min(static_cast<std::size_t>(k), psd.size() - 1);
}

namespace {

// Owns an FFTW plan plus its buffers; one transform length per instance.
class RealTransform {
public:
  explicit RealTransform(std::size_t n) : n_(n) {
    in_ = fftw_alloc_real(n);
    out_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
  }
  ~RealTransform() {
    {
      std::lock_guard lock(detail::fftw_planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  RealTransform(const RealTransform &) = delete;
  RealTransform &operator=(const RealTransform &) = delete;

  double *input() { return in_; }
  const fftw_complex *output() const { return out_; }
  void execute() { fftw_execute(plan_); }
  std::size_t bins() const { return n_ / 2 + 1; }

private:
  std::size_t n_;
  double *in_;
  fftw_complex *out_;
  fftw_plan plan_;
};

class ComplexTransform {
public:
  explicit ComplexTransform(std::size_t n) {
    in_ = fftw_alloc_complex(n);
    out_ = fftw_alloc_complex(n);
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  ~ComplexTransform() {
    {
      std::lock_guard lock(detail::fftw_planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  ComplexTransform(const ComplexTransform &) = delete;
  ComplexTransform &operator=(const ComplexTransform &) = delete;

  fftw_complex *input() { return in_; }
  const fftw_complex *output() const { return out_; }
  void execute() { fftw_execute(plan_); }

private:
  fftw_complex *in_;
  fftw_complex *out_;
  fftw_plan plan_;
};

double norm2(const fftw_complex &z) { return z[0] * z[0] + z[1] * z[1]; }

} // namespace

Spectrum periodogram(const TimeSeries &series, const WindowSpec &window) {
  window.validate();
  const std::size_t n = series.size();
  const double dt = series.dt();
  const double fs = 1.0 / dt;

  std::size_t n_seg = n;
  if (window.segment_length_s > 0.0) {
    const double ratio = window.segment_length_s / dt;
    if (ratio > static_cast<double>(n) + 0.5) {
      throw InvalidArgument("periodogram: segment longer than the record");
    }
    n_seg = static_cast<std::size_t>(std::llround(ratio));
  }
  if (n_seg < 2) {
    throw InvalidArgument("periodogram: segment shorter than two samples");
  }
  const auto step = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(n_seg) * (1.0 - window.overlap))));
  const std::size_t n_avg = (n - n_seg) / step + 1;

  const auto w = window_samples(window.kind, n_seg);
  const double sum_w2 = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
  const double sum_w = std::accumulate(w.begin(), w.end(), 0.0);

  Spectrum out;
  out.window = window;
  out.window.segment_length_s = static_cast<double>(n_seg) * dt;
  out.n_averages = n_avg;
  out.segment_samples = n_seg;
  out.df = fs / static_cast<double>(n_seg);
  out.enbw_hz = fs * sum_w2 / (sum_w * sum_w);
  out.two_sided = series.is_complex();

  const double scale = 1.0 / (fs * sum_w2 * static_cast<double>(n_avg));

  if (!series.is_complex()) {
    const auto x = series.real();
    RealTransform fft(n_seg);
    std::vector<double> acc(fft.bins(), 0.0);
    for (std::size_t s = 0; s < n_avg; ++s) {
      const std::size_t start = s * step;
      for (std::size_t k = 0; k < n_seg; ++k) {
        fft.input()[k] = w[k] * x[start + k];
      }
      fft.execute();
      for (std::size_t k = 0; k < acc.size(); ++k) {
        acc[k] += norm2(fft.output()[k]);
      }
    }
    out.f0 = 0.0;
    out.psd.resize(acc.size());
    const bool has_nyquist = (n_seg % 2 == 0);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      const bool edge = (k == 0) || (has_nyquist && k + 1 == acc.size());
      out.psd[k] = (edge ? 1.0 : 2.0) * acc[k] * scale;
    }
    return out;
  }

  const auto z = series.complex();
  ComplexTransform fft(n_seg);
  std::vector<double> acc(n_seg, 0.0);
  for (std::size_t s = 0; s < n_avg; ++s) {
    const std::size_t start = s * step;
    for (std::size_t k = 0; k < n_seg; ++k) {
      fft.input()[k][0] = w[k] * z[start + k].real();
      fft.input()[k][1] = w[k] * z[start + k].imag();
    }
    fft.execute();
    for (std::size_t k = 0; k < n_seg; ++k) {
      acc[k] += norm2(fft.output()[k]);
    }
  }
  // reorder so frequencies run from the most negative bin upwards
  const std::size_t n_neg = n_seg / 2;
  out.f0 = -static_cast<double>(n_neg) * out.df;
  out.psd.resize(n_seg);
  for (std::size_t j = 0; j < n_seg; ++j) {
    const std::size_t k = (j + n_seg - n_neg) % n_seg;
    out.psd[j] = acc[k] * scale;
  }
  return out;
}

double resolution_factor(WindowKind kind) {
  return kind == WindowKind::hann ? 1.44 : 1.0;
}

WindowResponse window_response(const WindowSpec &window) {
  window.validate();
  if (!(window.segment_length_s > 0.0)) {
    throw InvalidArgument("window_response: segment length must be positive");
  }
  return {window.kind, window.segment_length_s,
          resolution_factor(window.kind) / window.segment_length_s};
}

namespace {

// integral_0^T exp(-i omega t) dt
std::complex<double> rect_transform(double omega, double t) {
  const double x = 0.5 * omega * t;
  const double sinc = (std::abs(x) < 1e-12) ? 1.0 : std::sin(x) / x;
  return t * sinc * std::polar(1.0, -x);
}

} // namespace

std::complex<double> WindowResponse::transform(double omega) const {
  const double t = segment_length_s;
  if (kind == WindowKind::rectangular) {
    return rect_transform(omega, t);
  }
  // 0.5 (1 - cos(2 pi t/T)) = 0.5 - 0.25 e^{i w0 t} - 0.25 e^{-i w0 t}
  const double w0 = units::two_pi / t;
  return 0.5 * rect_transform(omega, t) - 0.25 * rect_transform(omega - w0, t) -
         0.25 * rect_transform(omega + w0, t);
}

double WindowResponse::half_power_width_hz() const {
  const double peak = std::norm(transform(0.0));
  const auto below = [&](double f) {
    return std::norm(transform(units::two_pi * f)) < 0.5 * peak;
  };
  double lo = 0.0;
  double hi = 1.0 / segment_length_s;
  while (!below(hi)) {
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (below(mid) ? hi : lo) = mid;
  }
  return 2.0 * 0.5 * (lo + hi);
}

double line_power(const Spectrum &spectrum, double f, int half_width) {
  const auto k0 = static_cast<long>(spectrum.bin_of(f));
  const auto last = static_cast<long>(spectrum.psd.size()) - 1;
  double sum = 0.0;
  for (long k = std::max(0L, k0 - half_width); k <= std::min(last, k0 + half_width); ++k) {
    sum += spectrum.psd[static_cast<std::size_t>(k)];
  }
  return sum * spectrum.df;
}

std::size_t peak_near(const Spectrum &spectrum, double f, int search_bins) {
  const auto k0 = static_cast<long>(spectrum.bin_of(f));
  const auto last = static_cast<long>(spectrum.psd.size()) - 1;
  long best = k0;
  for (long k = std::max(0L, k0 - search_bins); k <= std::min(last, k0 + search_bins); ++k) {
    if (spectrum.psd[static_cast<std::size_t>(k)] > spectrum.psd[static_cast<std::size_t>(best)]) {
      best = k;
    }
  }
  return static_cast<std::size_t>(best);
}

double local_noise_level(const Spectrum &spectrum, double f, int exclude_bins, int span_bins) {
  if (exclude_bins < 0 || span_bins <= exclude_bins) {
    throw InvalidArgument("local_noise_level: need 0 <= exclude < span");
  }
  const auto k0 = static_cast<long>(spectrum.bin_of(f));
  const auto size = static_cast<long>(spectrum.psd.size());
  double sum = 0.0;
  long count = 0;
  for (long d = exclude_bins + 1; d <= span_bins; ++d) {
    for (long k : {k0 - d, k0 + d}) {
      if (k >= 0 && k < size) {
        sum += spectrum.psd[static_cast<std::size_t>(k)];
        ++count;
      }
    }
  }
  if (count == 0) {
    throw InvalidArgument("local_noise_level: no bins in the flanks");
  }
  return sum / static_cast<double>(count);
}

std::vector<std::size_t> local_maxima(const Spectrum &spectrum, double f_lo, double f_hi) {
  std::vector<std::size_t> peaks;
  const std::size_t lo = std::max<std::size_t>(1, spectrum.bin_of(f_lo));
  const std::size_t hi = std::min(spectrum.bin_of(f_hi), spectrum.psd.size() - 2);
  for (std::size_t k = lo; k <= hi && hi < spectrum.psd.size(); ++k) {
    if (spectrum.psd[k] > spectrum.psd[k - 1] && spectrum.psd[k] > spectrum.psd[k + 1]) {
      peaks.push_back(k);
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
    return spectrum.psd[a] > spectrum.psd[b];
  });
  return peaks;
}

TripletResult triplet_statistic(const TimeSeries &baseband,
                                const geometry::EphemerisConstants &eph,
                                const TripletPhases &phases, std::span<const double> weights,
                                TripletMode mode) {
  if (baseband.is_complex()) {
    throw InvalidArgument("triplet_statistic: expects a real baseband stream");
  }
  eph.validate();
  const auto y = baseband.real();
  const std::size_t n = y.size();
  if (!weights.empty() && weights.size() != n) {
    throw InvalidArgument("triplet_statistic: one weight per sample required");
  }
  const auto weight = [&](std::size_t k) { return weights.empty() ? 1.0 : weights[k]; };
  double weight_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double wk = weight(k);
    if (!(wk >= 0.0) || !std::isfinite(wk)) {
      throw InvalidArgument("triplet_statistic: weights must be finite and >= 0");
    }
    weight_sum += wk;
  }
  if (weight_sum == 0.0) {
    throw InvalidArgument("triplet_statistic: all weights are zero");
  }

  TripletResult r;
  r.mode = mode;
  r.omega_star = eph.sidereal_rate;
  r.omega_plus = eph.sidereal_rate + eph.annual_rate;
  r.omega_minus = eph.sidereal_rate - eph.annual_rate;

  std::complex<double> z_star{};
  std::complex<double> z_plus{};
  std::complex<double> z_minus{};
  for (std::size_t k = 0; k < n; ++k) {
    const double t = baseband.time(k);
    const double wy = weight(k) * y[k];
    z_star += wy * std::polar(1.0, -r.omega_star * t);
    z_plus += wy * std::polar(1.0, -r.omega_plus * t);
    z_minus += wy * std::polar(1.0, -r.omega_minus * t);
  }
  r.x_star = std::norm(z_star);
  r.x_plus = std::norm(z_plus);
  r.x_minus = std::norm(z_minus);

  if (mode == TripletMode::agnostic) {
    if (r.x_star == 0.0) {
      throw NumericalError("triplet_statistic: no power at the sidereal frequency");
    }
    r.epsilon_hat = 2.0 * std::sqrt(0.5 * (r.x_plus + r.x_minus) / r.x_star);
    r.epsilon_signed = r.epsilon_hat;
    return r;
  }

  const double psi_plus = phases.psi_star + phases.psi_annual;
  const double psi_minus = phases.psi_star - phases.psi_annual;
  constexpr int p = 6;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(n), p);
  Eigen::VectorXd b(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double t = baseband.time(k);
    const double sw = std::sqrt(weight(k));
    const auto i = static_cast<Eigen::Index>(k);
    a(i, 0) = sw * std::cos(r.omega_star * t - phases.psi_star);
    a(i, 1) = sw * std::cos(r.omega_plus * t - psi_plus);
    a(i, 2) = sw * std::cos(r.omega_minus * t - psi_minus);
    a(i, 3) = sw;
    a(i, 4) = sw * std::cos(eph.annual_rate * t);
    a(i, 5) = sw * std::sin(eph.annual_rate * t);
    b(i) = sw * y[k];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) {
    throw DegenerateFitError("triplet_statistic: design matrix is rank deficient; the record "
                             "is too short or the weights too sparse");
  }
  const Eigen::VectorXd coef = qr.solve(b);
  r.a_star = coef(0);
  r.a_plus = coef(1);
  r.a_minus = coef(2);
  if (r.a_star == 0.0) {
    throw NumericalError("triplet_statistic: fitted sidereal amplitude is zero");
  }
  r.epsilon_signed = (r.a_plus + r.a_minus) / r.a_star;
  r.epsilon_hat = std::abs(r.epsilon_signed);

  const Eigen::VectorXd resid = b - a * coef;
  const double dof = static_cast<double>(n) - p;
  const double s2 = dof > 0.0 ? resid.squaredNorm() / dof : 0.0;
  const Eigen::MatrixXd ata = a.transpose() * a;
  const double var_star = s2 * ata.inverse()(0, 0);
  r.snr_star = var_star > 0.0 ? std::abs(r.a_star) / std::sqrt(var_star)
                              : std::numeric_limits<double>::infinity();
  r.snr_pm = 0.5 * r.epsilon_hat * r.snr_star;
  return r;
}

SnrEstimate snr_estimate(double a_star, double psd_at_star, double t_coh, double epsilon) {
  if (!(psd_at_star > 0.0)) {
    throw InvalidArgument("snr_estimate: S(Omega*) must be positive");
  }
  if (!(t_coh > 0.0)) {
    throw InvalidArgument("snr_estimate: coherence time must be positive");
  }
  SnrEstimate out;
  out.snr_star = std::abs(a_star) * std::sqrt(t_coh / psd_at_star);
  out.snr_pm = 0.5 * std::abs(epsilon) * out.snr_star;
  return out;
}

double effective_coherence_time(double t2, double tau_c, double t_obs) {
  if (!(t2 > 0.0) || !(tau_c > 0.0) || !(t_obs > 0.0)) {
    throw InvalidArgument("effective_coherence_time: times must be positive");
  }
  return std::min({t2, tau_c, t_obs});
}

} // namespace axionkit::spectral
