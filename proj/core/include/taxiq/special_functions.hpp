#pragma once

namespace taxiq {

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
// Series for x < a + 1, continued fraction otherwise; relative error ~1e-14.
double regularized_gamma_p(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

// Upper tail of the chi-squared distribution with k degrees of freedom.
double chi_squared_sf(double x, int k);

// Lower quantile: x with CDF_k(x) = p, p in (0, 1). Critical value for a
// size-alpha test is chi_squared_quantile(1 - alpha, k).
double chi_squared_quantile(double p, int k);

// Asymptotic Kolmogorov survival function Q(x) = 2 sum_k (-1)^{k-1} e^{-2 k^2 x^2}.
double kolmogorov_sf(double x);

// x with kolmogorov_sf(x) = alpha, alpha in (0, 1).
double kolmogorov_critical(double alpha);

// Poisson pmf and CDF, mean >= 0. Stable in log space for large means.
double poisson_pmf(long k, double mean);
double poisson_cdf(long k, double mean);

}  // namespace taxiq
