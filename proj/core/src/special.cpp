#include "axionkit/special.hpp"

#include "axionkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace axionkit::special {

std::vector<double> bessel_j_sequence(double x, int n_max) {
  if (n_max < 0) {
    throw InvalidArgument("bessel_j_sequence: n_max must be >= 0");
  }
  if (!std::isfinite(x)) {
    throw InvalidArgument("bessel_j_sequence: argument must be finite");
  }
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }

  const double ax = std::abs(x);
  const double top = std::max<double>(n_max, ax);
  // even starting order well above both n_max and |x|
  int start = static_cast<int>(top + 20.0 + 10.0 * std::sqrt(top));
  start += start % 2;

  std::vector<double> work(static_cast<std::size_t>(start) + 2, 0.0);
  work[static_cast<std::size_t>(start)] = 1e-300;
  const double two_over_x = 2.0 / ax;
  for (int k = start; k >= 1; --k) {
    const auto uk = static_cast<std::size_t>(k);
    work[uk - 1] = k * two_over_x * work[uk] - work[uk + 1];
    if (std::abs(work[uk - 1]) > 1e250) {
      for (std::size_t j = uk - 1; j < work.size(); ++j) {
        work[j] *= 1e-250;
      }
    }
  }

  double norm = work[0];
  for (int k = 2; k <= start; k += 2) {
    norm += 2.0 * work[static_cast<std::size_t>(k)];
  }
  for (int n = 0; n <= n_max; ++n) {
    double value = work[static_cast<std::size_t>(n)] / norm;
    if (x < 0.0 && (n % 2 == 1)) {
      value = -value;
    }
    out[static_cast<std::size_t>(n)] = value;
  }
  return out;
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

namespace {

// Acklam's rational approximation to the lower-tail quantile, |rel err| < 1.2e-9.
double acklam_lower(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log1p(-p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

// ln Q(z) from the Mills-ratio series, valid for large z.
double log_tail_asymptotic(double z) {
  const double z2 = z * z;
  const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
  return -0.5 * z2 - std::log(z * std::sqrt(2.0 * std::numbers::pi)) + std::log(series);
}

} // namespace

double normal_isf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("normal_isf: tail probability must lie in (0, 1)");
  }
  if (p < 1e-300) {
    return normal_isf_log(std::log(p));
  }
  // z = -Phi^{-1}(p), refined by Halley steps on Q(z) - p
  double z = -acklam_lower(p);
  for (int iter = 0; iter < 3; ++iter) {
    const double e = normal_sf(z) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * z * z);
    z = z + u / (1.0 - 0.5 * z * u);
  }
  return z;
}

double normal_isf_log(double log_p) {
  if (!(log_p < 0.0)) {
    throw InvalidArgument("normal_isf_log: log tail probability must be negative");
  }
  if (log_p > std::log(1e-300)) {
    return normal_isf(std::exp(log_p));
  }
  double z = std::sqrt(-2.0 * log_p);
  for (int iter = 0; iter < 50; ++iter) {
    const double f = log_tail_asymptotic(z) - log_p;
    // d/dz ln Q(z) ~ -(z + 1/z) at this order
    const double df = -(z + 1.0 / z);
    const double step = f / df;
    z -= step;
    if (std::abs(step) < 1e-14 * z) {
      break;
    }
  }
  return z;
}

} // namespace axionkit::special
