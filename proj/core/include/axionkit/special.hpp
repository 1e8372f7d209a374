#pragma once

#include <vector>

namespace axionkit::special {

//! J_0(x) .. J_{n_max}(x) by Miller's downward recurrence, normalised with
//! J_0 + 2 sum J_{2k} = 1. Accurate to a few ulp-times-n for |x| up to ~1e4.
std::vector<double> bessel_j_sequence(double x, int n_max);

//! Upper-tail standard normal probability Q(z) = P(Z > z).
double normal_sf(double z);

//! One-sided Gaussian quantile: z with Q(z) = p, for 0 < p < 1.
//! Below p ~ 1e-300 the erfc route underflows and an asymptotic tail
//! expansion solved in log space takes over.
double normal_isf(double p);

//! Same, but the tail probability is given as ln p. Useful when alpha/N
//! itself would underflow.
double normal_isf_log(double log_p);

} // namespace axionkit::special
