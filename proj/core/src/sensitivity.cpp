#include "axionkit/sensitivity.hpp"

#include "axionkit/error.hpp"
#include "axionkit/special.hpp"
#include "axionkit/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace axionkit::sensitivity {

void SearchConfig::validate() const {
  if (!(epsilon_safety > 0.0 && epsilon_safety < 1.0)) {
    throw InvalidArgument("search: epsilon_safety must lie in (0, 1)");
  }
  if (!(alpha > 0.0 && alpha <= 0.1)) {
    throw InvalidArgument("search: alpha must lie in (0, 0.1]");
  }
  for (double x : {t_cap_s, t_tot_s, bandwidth_hz, n_sigma, v_signal_km_s}) {
    if (!std::isfinite(x) || x <= 0.0) {
      throw InvalidArgument("search: times, bandwidth, n_sigma and v_signal must be positive");
    }
  }
  if (t_tot_s < t_cap_s) {
    throw InvalidArgument("search: total time shorter than one segment");
  }
}

const char *to_string(Regime regime) {
  return regime == Regime::flat ? "flat" : "tau_limited";
}

namespace {

halo::AxionParams axion_at(double nu_hz) {
  if (!(nu_hz > 0.0) || !std::isfinite(nu_hz)) {
    throw InvalidArgument("sensitivity: frequency must be positive");
  }
  halo::AxionParams axion;
  axion.mass_ueV = units::hz_to_micro_ev(nu_hz);
  return axion;
}

} // namespace

double adaptive_segment(double nu_hz, const SearchConfig &cfg, const halo::HaloParams &halo) {
  cfg.validate();
  const double tau = halo::coherence_time(axion_at(nu_hz), halo);
  return std::min(cfg.epsilon_safety * tau, cfg.t_cap_s);
}

Regime segment_regime(double nu_hz, const SearchConfig &cfg, const halo::HaloParams &halo) {
  return adaptive_segment(nu_hz, cfg, halo) == cfg.t_cap_s ? Regime::flat : Regime::tau_limited;
}

double look_elsewhere_z(double alpha, double n_trials) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("look_elsewhere_z: alpha must lie in (0, 1)");
  }
  if (!(n_trials >= 1.0) || !std::isfinite(n_trials)) {
    throw InvalidArgument("look_elsewhere_z: need at least one trial");
  }
  const double p = alpha / n_trials;
  if (p < std::numeric_limits<double>::min()) {
    return special::normal_isf_log(std::log(alpha) - std::log(n_trials));
  }
  return special::normal_isf(p);
}

Threshold trials_threshold(double nu_hz, const SearchConfig &cfg, const halo::HaloParams &halo) {
  const double n = cfg.bandwidth_hz * adaptive_segment(nu_hz, cfg, halo);
  if (n < 1.0) {
    throw InvalidArgument("trials_threshold: BW * T_seg must be >= 1");
  }
  return {n, look_elsewhere_z(cfg.alpha, n)};
}

signal::QubitParams SensorPreset::apply(signal::QubitParams qubit) const {
  qubit.n_spins = n_spins;
  qubit.q_resonator = q_resonator;
  qubit.eta_b_t_per_rthz = eta_b_t_per_rthz;
  return qubit;
}

SensorPreset current_preset() { return {"current", 10, 1e4, 1e-15, 1}; }
SensorPreset future_preset() { return {"future", 1000000, 1e6, 1e-16, 3}; }

SensorPreset preset_by_name(const std::string &name) {
  if (name == "current") {
    return current_preset();
  }
  if (name == "future") {
    return future_preset();
  }
  throw InvalidArgument("unknown preset '" + name + "' (expected current or future)");
}

GainSelection GainSelection::parse(const std::string &text) {
  if (text == "none") {
    return none();
  }
  if (text == "all") {
    return all();
  }
  GainSelection g;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "matched") {
      g.matched_weighting = true;
    } else if (item == "three_axis") {
      g.three_axis = true;
    } else if (item == "sqrt_n") {
      g.resource_sqrt_n = true;
    } else {
      throw InvalidArgument("unknown gain '" + item +
                            "' (expected none, all, or matched,three_axis,sqrt_n)");
    }
  }
  return g;
}

double gain_factor(const GainSelection &gains, const geometry::SiteGeometry &site) {
  if (!(gains.extra_factor > 0.0) || !std::isfinite(gains.extra_factor)) {
    throw InvalidArgument("gain_factor: extra factor must be positive");
  }
  double g = gains.extra_factor;
  if (gains.matched_weighting || gains.three_axis || gains.resource_sqrt_n) {
    const auto geo = geometry::geometric_gains(site, 3);
    if (gains.matched_weighting) {
      if (geo.matched_gain_unbounded()) {
        throw NumericalError("gain_factor: p0 = 0, matched-weighting gain is unbounded");
      }
      g *= *geo.g_daily;
    }
    if (gains.three_axis) {
      g *= geo.g_3axis;
    }
    if (gains.resource_sqrt_n) {
      g *= std::sqrt(3.0);
    }
  }
  return g;
}

SensitivityCurve g_min_curve(std::span<const double> masses_ueV, const signal::QubitParams &qubit,
                             const halo::HaloParams &halo, const geometry::SiteGeometry &site,
                             const SearchConfig &cfg, const GainSelection &gains) {
  if (masses_ueV.empty()) {
    throw InvalidArgument("g_min_curve: empty mass grid");
  }
  for (std::size_t i = 0; i < masses_ueV.size(); ++i) {
    if (!(masses_ueV[i] > 0.0) || !std::isfinite(masses_ueV[i])) {
      throw InvalidArgument("g_min_curve: masses must be positive");
    }
    if (i > 0 && !(masses_ueV[i] > masses_ueV[i - 1])) {
      throw InvalidArgument("g_min_curve: mass grid must be strictly increasing");
    }
  }
  cfg.validate();
  halo.validate();
  qubit.validate();

  SensitivityCurve curve;
  curve.gains = gains;
  curve.gain_factor = gain_factor(gains, site);
  curve.eta_eff_t_per_rthz = qubit.eta_b_t_per_rthz / std::sqrt(static_cast<double>(qubit.n_spins));

  for (double m : masses_ueV) {
    halo::AxionParams unit_axion;
    unit_axion.mass_ueV = m;
    unit_axion.g_ae = 1.0;
    const double nu = unit_axion.frequency_hz();

    SensitivityPoint pt;
    pt.mass_ueV = m;
    pt.t_seg_s = adaptive_segment(nu, cfg, halo);
    pt.regime = segment_regime(nu, cfg, halo);
    pt.t_coh_s = std::min(pt.t_seg_s, halo::coherence_time(unit_axion, halo));
    const auto thr = trials_threshold(nu, cfg, halo);
    pt.n_trials = thr.n_trials;
    pt.z_threshold = thr.z;
    pt.snr_required = std::max(cfg.n_sigma, thr.z);

    const double stack = cfg.stacking == Stacking::sqrt_total_time
                             ? std::sqrt(cfg.t_tot_s / cfg.t_cap_s)
                             : std::pow(cfg.t_tot_s / pt.t_seg_s, 0.25);
    const double b_required =
        pt.snr_required * curve.eta_eff_t_per_rthz / (std::sqrt(pt.t_coh_s) * stack);
    // B_eff is linear in g, so one evaluation at g = 1 inverts it exactly
    const double b_per_unit_g =
        halo::effective_field(unit_axion, halo, cfg.v_signal_km_s, qubit.gamma_hz_per_t);
    pt.g_min = b_required / b_per_unit_g / curve.gain_factor;
    if (!std::isfinite(pt.g_min) || !(pt.g_min > 0.0)) {
      throw NumericalError("g_min_curve: non-physical coupling at m_a = " + std::to_string(m));
    }
    curve.points.push_back(pt);
  }
  return curve;
}

double dfsz_coefficient(double tan_beta) {
  if (!(tan_beta > 0.0) || !std::isfinite(tan_beta)) {
    throw InvalidArgument("dfsz: tan beta must be positive");
  }
  const double t2 = tan_beta * tan_beta;
  return t2 / (1.0 + t2) / 3.0;
}

double dfsz_coupling(double mass_ueV, double tan_beta) {
  if (!(mass_ueV > 0.0)) {
    throw InvalidArgument("dfsz: mass must be positive");
  }
  const double f_a_eV = dfsz_mass_fa_ueV_gev / mass_ueV * 1e9;
  return dfsz_coefficient(tan_beta) * units::electron_mass_eV / f_a_eV;
}

DfszBand dfsz_band(std::span<const double> masses_ueV, double tan_beta_min,
                   double tan_beta_max) {
  if (!(tan_beta_min > 0.0) || !(tan_beta_max >= tan_beta_min)) {
    throw InvalidArgument("dfsz_band: need 0 < tan_beta_min <= tan_beta_max");
  }
  DfszBand band;
  for (double m : masses_ueV) {
    band.mass_ueV.push_back(m);
    band.lower.push_back(dfsz_coupling(m, tan_beta_min));
    band.upper.push_back(dfsz_coupling(m, tan_beta_max));
    band.benchmark.push_back(dfsz_coupling(m, 1.0));
  }
  return band;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw InvalidArgument("log_grid: need 0 < lo < hi and n >= 2");
  }
  std::vector<double> out(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

} // namespace axionkit::sensitivity
