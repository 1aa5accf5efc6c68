#pragma once

namespace idsample {

// Standard normal CDF, absolute error well under 1e-10.
double normal_cdf(double x);

// Inverse of normal_cdf on (0,1).
double normal_quantile(double p);

// Regularized lower incomplete gamma P(a,x), a > 0, x >= 0.
double gamma_p(double a, double x);

// CDF of the chi-square distribution with df degrees of freedom.
double chi_square_cdf(double x, int df);

// Quantile of the chi-square distribution: smallest x with CDF(x) >= p.
// p in (0,1), df >= 1.
double chi_square_critical(double p, int df);

}  // namespace idsample
