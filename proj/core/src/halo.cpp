#include "axionkit/halo.hpp"

#include "axionkit/error.hpp"
#include "axionkit/units.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace axionkit::halo {

namespace {

constexpr double sqrt_pi = 1.7724538509055160273;

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

// N(z) = erf(z) - 2 z e^{-z^2}/sqrt(pi)
double truncation_norm(double z) {
  return std::erf(z) - 2.0 * z * std::exp(-z * z) / sqrt_pi;
}

// sqrt(u) e^{-u}, the line shape in units of x0 = nu_a v0^2 / 2c^2
double reduced_shape(double u) { return std::sqrt(u) * std::exp(-u); }

double bisect(double lo, double hi, double target, bool rising) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const bool below = reduced_shape(mid) < target;
    if (below == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace

void HaloParams::validate() const {
  if (!positive(v0_km_s)) {
    throw InvalidArgument("halo: v0 must be positive");
  }
  if (!positive(v_esc_km_s) || v_esc_km_s <= v0_km_s) {
    throw InvalidArgument("halo: v_esc must exceed v0");
  }
  if (!positive(rho_dm_gev_cm3)) {
    throw InvalidArgument("halo: rho_dm must be positive");
  }
  if (!positive(v_ref_km_s)) {
    throw InvalidArgument("halo: v_ref must be positive");
  }
}

double AxionParams::frequency_hz() const { return units::micro_ev_to_hz(mass_ueV); }

double AxionParams::angular_frequency() const { return units::two_pi * frequency_hz(); }

void AxionParams::validate() const {
  if (!positive(mass_ueV)) {
    throw InvalidArgument("axion: mass must be positive");
  }
  if (!std::isfinite(g_ae) || g_ae < 0.0) {
    throw InvalidArgument("axion: g_ae must be finite and non-negative");
  }
  if (!std::isfinite(phase_rad)) {
    throw InvalidArgument("axion: phase must be finite");
  }
}

double mean_square_speed(const HaloParams &halo) {
  halo.validate();
  const double z = halo.v_esc_km_s / halo.v0_km_s;
  const double n = truncation_norm(z);
  const double value =
      halo.v0_km_s * halo.v0_km_s * (1.5 - 2.0 * z * z * z * std::exp(-z * z) / (sqrt_pi * n));
  if (!std::isfinite(value) || value <= 0.0) {
    throw NumericalError("mean_square_speed: non-finite result for z = " + std::to_string(z));
  }
  return value;
}

double fractional_linewidth(const HaloParams &halo) {
  return mean_square_speed(halo) / (2.0 * units::c_km_s * units::c_km_s);
}

double kinematic_fractional_width(const HaloParams &halo) {
  halo.validate();
  return halo.v0_km_s * halo.v0_km_s / (2.0 * units::c_km_s * units::c_km_s);
}

double linewidth_hz(const AxionParams &axion, const HaloParams &halo) {
  axion.validate();
  return axion.frequency_hz() * fractional_linewidth(halo);
}

double coherence_time(const AxionParams &axion, const HaloParams &halo) {
  return 1.0 / (units::pi * linewidth_hz(axion, halo));
}

double quality_factor(const HaloParams &halo) { return 1.0 / fractional_linewidth(halo); }

double field_coherence_time(const AxionParams &axion, const HaloParams &halo) {
  axion.validate();
  return quality_factor(halo) / axion.angular_frequency();
}

double lineshape_support_end(const AxionParams &axion, const HaloParams &halo) {
  const double b = halo.v_esc_km_s / units::c_km_s;
  return axion.frequency_hz() * (1.0 + 0.5 * b * b);
}

double shm_lineshape_at(double nu_hz, const AxionParams &axion, const HaloParams &halo) {
  const double nu_a = axion.frequency_hz();
  const double offset = nu_hz - nu_a;
  if (!(offset > 0.0)) {
    return 0.0;
  }
  const double c = units::c_km_s;
  // v(nu) from the non-relativistic dispersion relation
  const double v = c * std::sqrt(2.0 * offset / nu_a);
  if (v > halo.v_esc_km_s) {
    return 0.0;
  }
  const double v0 = halo.v0_km_s;
  const double z = halo.v_esc_km_s / v0;
  // f(v) = v^2 e^{-v^2/v0^2} / (v0^3 sqrt(pi) N(z) / 4), dv/dnu = c^2/(nu_a v)
  const double fv_norm = 0.25 * v0 * v0 * v0 * sqrt_pi * truncation_norm(z);
  return v * std::exp(-(v * v) / (v0 * v0)) * c * c / (nu_a * fv_norm);
}

std::vector<double> shm_lineshape(std::span<const double> nu_hz, const AxionParams &axion,
                                  const HaloParams &halo) {
  axion.validate();
  halo.validate();
  if (nu_hz.empty()) {
    throw InvalidArgument("shm_lineshape: empty frequency grid");
  }
  for (std::size_t i = 1; i < nu_hz.size(); ++i) {
    if (!(nu_hz[i] > nu_hz[i - 1])) {
      throw InvalidArgument("shm_lineshape: frequency grid must be strictly increasing");
    }
  }
  std::vector<double> out;
  out.reserve(nu_hz.size());
  for (double nu : nu_hz) {
    out.push_back(shm_lineshape_at(nu, axion, halo));
  }
  return out;
}

double lineshape_fwhm(const AxionParams &axion, const HaloParams &halo) {
  axion.validate();
  halo.validate();
  // peak of sqrt(u) e^{-u} at u = 1/2
  const double half = 0.5 * reduced_shape(0.5);
  const double u_lo = bisect(0.0, 0.5, half, true);
  const double z = halo.v_esc_km_s / halo.v0_km_s;
  const double u_cut = z * z;
  double u_hi = bisect(0.5, 60.0, half, false);
  if (u_hi > u_cut) {
    u_hi = u_cut;
  }
  const double x0 = axion.frequency_hz() * kinematic_fractional_width(halo);
  return (u_hi - u_lo) * x0;
}

double effective_field(const AxionParams &axion, const HaloParams &halo, double v_km_s,
                       double gamma_hz_per_t) {
  axion.validate();
  halo.validate();
  if (!std::isfinite(v_km_s) || v_km_s < 0.0) {
    throw InvalidArgument("effective_field: speed must be finite and non-negative");
  }
  if (!positive(gamma_hz_per_t)) {
    throw InvalidArgument("effective_field: gyromagnetic ratio must be positive");
  }
  // gamma_e B = g v sqrt(2 rho) / m_e  (an energy in natural units)
  const double rho_ev4 = units::gev_per_cm3_to_ev4(halo.rho_dm_gev_cm3);
  const double energy_eV = axion.g_ae * units::speed_to_beta(v_km_s) *
                           std::sqrt(2.0 * rho_ev4) / units::electron_mass_eV;
  const double omega = units::ev_to_rad_per_s(energy_eV);
  return omega / (units::two_pi * gamma_hz_per_t);
}

} // namespace axionkit::halo
