// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any selected criterion fails.
//
//   axionkit_acceptance [--criterion N]

#include "oracles.hpp"

#include "app.hpp"
#include "manifest.hpp"

#include "axionkit/geometry.hpp"
#include "axionkit/halo.hpp"
#include "axionkit/noise.hpp"
#include "axionkit/pipeline.hpp"
#include "axionkit/sensitivity.hpp"
#include "axionkit/signal.hpp"
#include "axionkit/spectral.hpp"
#include "axionkit/units.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace axionkit;
namespace fs = std::filesystem;

namespace {

// Collects named sub-checks for one criterion.
class Report {
public:
  void check(const std::string &what, bool ok, const std::string &detail) {
    ok_ = ok_ && ok;
    std::ostringstream os;
    os << (ok ? "" : "!") << what << " " << detail;
    parts_.push_back(os.str());
  }

  // |measured/target - 1| <= rel
  void rel(const std::string &what, double measured, double target, double rel) {
    const double dev = std::abs(measured / target - 1.0);
    check(what, dev <= rel, fmt(measured) + " vs " + fmt(target) + " (" + fmt(100.0 * dev) +
                                "% of " + fmt(100.0 * rel) + "%)");
  }

  void abs(const std::string &what, double measured, double target, double tol) {
    const double dev = std::abs(measured - target);
    check(what, dev <= tol, fmt(measured) + " vs " + fmt(target) + " (|d|=" + fmt(dev) +
                                " tol " + fmt(tol) + ")");
  }

  // context only, never fails
  void info(const std::string &what, const std::string &detail) { parts_.push_back(what + " " + detail); }

  bool ok() const { return ok_; }

  std::string text() const {
    std::string s;
    for (const auto &p : parts_) {
      s += (s.empty() ? "" : "; ") + p;
    }
    return s;
  }

  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5g", x);
    return buf;
  }

private:
  bool ok_ = true;
  std::vector<std::string> parts_;
};

SeriesMeta meta(const std::string &source) {
  SeriesMeta m;
  m.source = source;
  return m;
}

spectral::WindowSpec rect(double seg = 0.0) {
  spectral::WindowSpec w;
  w.kind = spectral::WindowKind::rectangular;
  w.segment_length_s = seg;
  return w;
}

double log_log_slope(const sensitivity::SensitivityCurve &c, sensitivity::Regime regime) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto &p : c.points) {
    if (p.regime == regime) {
      x.push_back(std::log(p.mass_ueV));
      y.push_back(std::log(p.g_min));
    }
  }
  if (x.size() < 3) {
    return std::nan("");
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(x.size()), 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    a(static_cast<Eigen::Index>(i), 0) = 1.0;
    a(static_cast<Eigen::Index>(i), 1) = x[i];
    b(static_cast<Eigen::Index>(i)) = y[i];
  }
  return a.colPivHouseholderQr().solve(b)(1);
}

signal::SynthesisRequest model_request(double span_s, double dt_s, double epsilon,
                                       const geometry::ModulationCoefficients &c) {
  signal::SynthesisRequest r;
  r.span_s = span_s;
  r.dt_s = dt_s;
  r.source = signal::SignalSource::coefficient_model;
  r.epsilon_override = epsilon;
  r.coefficients = c;
  r.speed_factor = false;
  return r;
}

// 1. geometric gains at the reference site
void gains(Report &r) {
  geometry::SiteGeometry site;
  site.latitude_deg = 39.9;
  site.wind_dec_deg = 30.0;
  const auto g = geometry::geometric_gains(site, 3);
  r.rel("p0", g.p0, 0.321, 0.005);
  r.rel("<P^2>", g.mean_square_projection, 0.324, 0.005);
  r.check("G_daily finite", g.g_daily.has_value(), "");
  r.rel("G_daily", g.g_daily.value_or(0.0), 1.77, 0.005);
  r.rel("G_3axis", g.g_3axis, 1.76, 0.005);
  r.rel("G_total", g.g_total.value_or(0.0), 5.40, 0.005);
}

// 2. halo numbers
void halo_numbers(Report &r) {
  halo::HaloParams h;
  h.v0_km_s = 230.0;
  h.v_esc_km_s = 544.0;
  halo::AxionParams a;
  a.mass_ueV = 1.0;
  r.rel("dnu/nu", halo::fractional_linewidth(h), 3.9e-7, 0.05);
  r.rel("tau_a [s]", halo::coherence_time(a, h), 3.3e-3, 0.10);
  r.rel("FWHM [Hz]", halo::lineshape_fwhm(a, h), 117.0, 0.10);

  const double nu_a = a.frequency_hz();
  bool zero_below = true;
  for (double d : {1e-9, 1e-3, 1.0, 50.0, 1e3, 1e6}) {
    zero_below = zero_below && halo::shm_lineshape_at(nu_a - d, a, h) == 0.0;
  }
  r.check("zero below nu_a", zero_below, "");
  const double end = halo::lineshape_support_end(a, h);
  const double norm = oracle::simpson([&](double nu) { return halo::shm_lineshape_at(nu, a, h); },
                                      nu_a, end, 200000);
  r.abs("normalization", norm, 1.0, 1e-6);
}

// 3. effective field
void effective_field(Report &r) {
  const halo::HaloParams h;
  halo::AxionParams a;
  a.g_ae = 1e-13;
  const double v = 1e-3 * units::c_km_s;
  const double b = halo::effective_field(a, h, v);
  r.check("B_eff within x3 of 1e-21 T", b >= 1e-21 / 3.0 && b <= 3e-21,
          Report::fmt(b) + " T, ratio " + Report::fmt(b / 1e-21));
  bool linear = true;
  double worst = 0.0;
  for (double k : {0.5, 2.0, 3.0, 10.0, 1e3}) {
    halo::AxionParams ak = a;
    ak.g_ae = k * a.g_ae;
    const double dev = std::abs(halo::effective_field(ak, h, v) / (k * b) - 1.0);
    worst = std::max(worst, dev);
    linear = linear && dev <= 4.0 * std::numeric_limits<double>::epsilon();
  }
  r.check("linear in g_ae", linear, "max rel dev " + Report::fmt(worst));
}

// 4. triplet morphology on four noiseless years
void triplet_morphology(Report &r) {
  const geometry::SiteGeometry site;
  const geometry::EphemerisConstants eph;
  const double eps = 0.1;
  const auto coeffs = geometry::fit_site(site, eph);
  const auto s = signal::synthesize_observable(site, eph, {}, {}, {}, signal::NoiseConfig::none(),
                                               model_request(4.0 * units::year_s, 1000.0, eps,
                                                             coeffs));
  const auto sp = spectral::periodogram(s, rect());
  const auto m = pipeline::triplet_morphology(sp, eph);
  r.check("three maxima at triplet", m.peaks_at_triplet && m.peak_hz.size() == 3,
          std::to_string(m.peak_hz.size()) + " peaks");
  const double f_e = eph.annual_frequency_hz();
  r.abs("spacing low [Hz]", m.spacing_lo_hz, f_e, m.bin_hz);
  r.abs("spacing high [Hz]", m.spacing_hi_hz, f_e, m.bin_hz);
  r.rel("side/center", m.side_to_center, 0.25 * eps * eps, 0.10);
  const auto resp = spectral::window_response(rect(1.26e8));
  r.rel("rect dfW [Hz]", resp.resolution_hz, 7.93e-9, 0.02);
}

// 5. sub-year coherent recovery of the annual depth
void subyear_recovery(Report &r) {
  const geometry::SiteGeometry site;
  const geometry::EphemerisConstants eph;
  const double eps = 0.1;
  const double span = 60.0 * 86400.0;
  const double dt = 600.0;
  const auto coeffs = geometry::fit_site(site, eph);
  const spectral::TripletPhases phases{coeffs.psi_star, coeffs.psi_annual};
  const auto clean = signal::synthesize_observable(
      site, eph, {}, {}, {}, signal::NoiseConfig::none(), model_request(span, dt, eps, coeffs));
  const auto r0 = spectral::triplet_statistic(clean, eph, phases);
  r.rel("noiseless eps", r0.epsilon_hat, eps, 0.20);

  // white level that puts the sidereal line at SNR 10
  const double t_obs = clean.duration();
  const double a_star = std::abs(coeffs.c_star);
  const double psd = a_star * a_star * t_obs / 100.0;
  const double snr = spectral::snr_estimate(a_star, psd, t_obs, eps).snr_star;
  std::vector<double> est;
  std::vector<double> signed_est;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    auto e = signal::make_engine(2024, signal::NoiseStream::white, trial);
    auto x = signal::white_noise(clean.size(), dt, psd, e);
    const auto y = clean.real();
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] += y[k];
    }
    const TimeSeries noisy(clean.t0(), dt, std::move(x), meta("acceptance-5"));
    const auto tr = spectral::triplet_statistic(noisy, eph, phases);
    est.push_back(tr.epsilon_hat);
    signed_est.push_back(tr.epsilon_signed);
  }
  const double mean = std::accumulate(signed_est.begin(), signed_est.end(), 0.0) / 100.0;
  double var = 0.0;
  for (double v : signed_est) {
    var += (v - mean) * (v - mean);
  }
  std::nth_element(est.begin(), est.begin() + 50, est.end());
  const double hi = est[50];
  std::nth_element(est.begin(), est.begin() + 49, est.end());
  const double median = 0.5 * (hi + est[49]);
  r.abs("SNR*", snr, 10.0, 1e-9);
  r.rel("median eps (100 trials)", median, eps, 0.50);
  r.info("signed eps spread", "mean " + Report::fmt(mean) + " sd " + Report::fmt(std::sqrt(var / 99.0)));
}

// 6. daily RMS robustness
void daily_rms(Report &r) {
  const auto study = pipeline::daily_rms_study({}, {}, {}, {}, {}, signal::NoiseConfig{}, 365, 144,
                                               20, 5.0);
  r.check("fraction inside 5 sigma >= 0.99", study.fraction_inside >= 0.99,
          Report::fmt(study.fraction_inside) + " over " + std::to_string(study.theory.size()) +
              " days");
}

// 7. Bessel sidebands of a short FM record
void bessel(Report &r) {
  const std::size_t n = 1 << 14;
  const double dt = 1e-6;
  const double df = 1.0 / (static_cast<double>(n) * dt);
  const double f0 = 4096.0 * df;
  const double fm = 128.0 * df;
  const double beta = 0.5;
  const auto rec = signal::synthesize_fm_record(2.0 * oracle::pi * f0, beta,
                                                2.0 * oracle::pi * fm, 0.0, 0.3, dt, n);
  const auto sp = spectral::periodogram(rec, rect());
  double worst = 0.0;
  for (int k = 0; k <= 3; ++k) {
    const double jn = std::abs(oracle::bessel_j(k, beta));
    for (double f : {f0 + k * fm, f0 - k * fm}) {
      const double amp = std::sqrt(2.0 * sp.psd[sp.bin_of(f)] * sp.df);
      worst = std::max(worst, std::abs(amp / jn - 1.0));
    }
  }
  r.check("|J_n| n<=3 within 1%", worst <= 0.01, "max rel dev " + Report::fmt(worst));
  const auto table = signal::bessel_sideband_table(beta, 30);
  double sum = table[0] * table[0];
  for (std::size_t k = 1; k < table.size(); ++k) {
    sum += 2.0 * table[k] * table[k];
  }
  r.abs("sum rule", sum, 1.0, 1e-9);
}

// 8. sensitivity scaling
void sensitivity_scaling(Report &r) {
  const auto grid = sensitivity::log_grid(1.0, 10.0, 61);
  const geometry::SiteGeometry site;
  const halo::HaloParams h;
  const sensitivity::SearchConfig cfg;
  const auto current = sensitivity::current_preset().apply({});
  const auto future = sensitivity::future_preset().apply({});
  const auto base = sensitivity::g_min_curve(grid, current, h, site, cfg,
                                             sensitivity::GainSelection::none());
  r.abs("slope tau-limited", log_log_slope(base, sensitivity::Regime::tau_limited), 0.5, 0.05);
  r.abs("slope cap-limited", log_log_slope(base, sensitivity::Regime::flat), 0.0, 0.05);

  const auto g = geometry::geometric_gains(site, 3);
  const auto fb = sensitivity::g_min_curve(grid, future, h, site, cfg,
                                           sensitivity::GainSelection::none());
  const auto fa = sensitivity::g_min_curve(grid, future, h, site, cfg,
                                           sensitivity::GainSelection::all());
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst,
                     std::abs(fb.points[i].g_min / fa.points[i].g_min / g.g_total.value() - 1.0));
  }
  r.check("baseline/full = G_total within 1%", worst <= 0.01, "max rel dev " + Report::fmt(worst));
  double lo = 1.0;
  double hi = 0.0;
  for (const auto &p : fb.points) {
    lo = std::min(lo, p.g_min);
    hi = std::max(hi, p.g_min);
  }
  r.check("future inside 1e-14..1e-10", lo >= 1e-14 && hi <= 1e-10,
          "range " + Report::fmt(lo) + ".." + Report::fmt(hi));
}

std::string slurp(const fs::path &p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// 9. statistical plumbing
void plumbing(Report &r) {
  r.abs("z(1%, 1)", sensitivity::look_elsewhere_z(0.01, 1.0), oracle::normal_isf(0.01), 1e-3);
  r.abs("z(1%, 1) printed", sensitivity::look_elsewhere_z(0.01, 1.0), 2.326, 1e-3);

  auto e = signal::make_engine(9, signal::NoiseStream::white);
  const double dt = 0.01;
  auto x = signal::white_noise(1 << 16, dt, 1.0, e);
  double ms = 0.0;
  for (double v : x) {
    ms += v * v;
  }
  ms /= static_cast<double>(x.size());
  const TimeSeries s(0.0, dt, std::move(x), meta("acceptance-9"));
  spectral::WindowSpec hann;
  hann.segment_length_s = 2048 * dt;
  const auto sp = spectral::periodogram(s, hann);
  const double area = std::accumulate(sp.psd.begin(), sp.psd.end(), 0.0) * sp.df;
  r.rel("Parseval (Hann, Welch)", area, ms, 0.02);

  // one run with noise, then two replays from its manifest
  const fs::path root = fs::path(AXIONKIT_TEST_SCRATCH) / "determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  {
    std::ofstream os(root / "run.json");
    os << R"({"triplet": {"noise": true, "trials": 3, "days": 30}, "noise": {"seed": 11}})";
  }
  std::ostringstream sink;
  auto *old = std::cout.rdbuf(sink.rdbuf());
  const int code = app::run(std::vector<std::string>{
      "triplet", "--config", (root / "run.json").string(), "--out", (root / "run").string()});
  std::cout.rdbuf(old);
  r.check("cli exit 0", code == 0, "exit " + std::to_string(code));
  if (code != 0) {
    return;
  }
  const auto manifest = root / "run" / "manifest.json";
  const auto a = app::replay(manifest, root / "replay_a");
  const auto b = app::replay(manifest, root / "replay_b");
  std::size_t identical = 0;
  std::size_t csvs = 0;
  for (const auto &entry : fs::directory_iterator(root / "replay_a")) {
    if (entry.path().extension() == ".csv") {
      ++csvs;
      identical += slurp(entry.path()) == slurp(root / "replay_b" / entry.path().filename());
    }
  }
  r.check("replays byte-identical", csvs > 0 && identical == csvs,
          std::to_string(identical) + "/" + std::to_string(csvs) + " CSVs");
  r.check("replays match manifest digests",
          a.compared > 0 && a.mismatched.empty() && b.mismatched.empty(),
          std::to_string(a.compared) + " compared");
}

const std::map<int, std::pair<std::string, std::function<void(Report &)>>> &criteria() {
  static const std::map<int, std::pair<std::string, std::function<void(Report &)>>> c = {
      {1, {"geometric gains", gains}},
      {2, {"halo numbers", halo_numbers}},
      {3, {"effective field", effective_field}},
      {4, {"triplet morphology", triplet_morphology}},
      {5, {"sub-year recovery", subyear_recovery}},
      {6, {"daily RMS robustness", daily_rms}},
      {7, {"Bessel sidebands", bessel}},
      {8, {"sensitivity scaling", sensitivity_scaling}},
      {9, {"statistical plumbing", plumbing}},
  };
  return c;
}

} // namespace

int main(int argc, char **argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: axionkit_acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (selected.empty()) {
    for (const auto &[n, c] : criteria()) {
      selected.push_back(n);
    }
  }
  int failures = 0;
  for (int n : selected) {
    const auto it = criteria().find(n);
    if (it == criteria().end()) {
      std::cerr << "no criterion " << n << "\n";
      return 2;
    }
    Report r;
    try {
      it->second.second(r);
    } catch (const std::exception &e) {
      r.check("exception", false, e.what());
    }
    std::cout << "criterion " << n << " (" << it->second.first << "): " << (r.ok() ? "PASS" : "FAIL")
              << "  " << r.text() << std::endl;
    failures += r.ok() ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
