#include "idsample/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "idsample/errors.hpp"

namespace idsample {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace {

// Rational approximation for the normal quantile (Acklam), then one Halley
// refinement against erfc to reach ~1e-15.
double acklam(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > 1 - plow) {
    q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

// Series expansion of P(a,x), converges fast for x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a,x) = 1 - P(a,x), for x >= a+1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InputError("normal_quantile: p must lie in (0,1), got " +
                     std::to_string(p));
  }
  double x = acklam(p);
  // Halley step: e = Phi(x) - p, u = e / phi(x).
  double e = normal_cdf(x) - p;
  double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
  x = x - u / (1 + x * u / 2);
  return x;
}

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) {
    throw InputError("gamma_p: requires a > 0 and x >= 0");
  }
  if (x == 0.0) return 0.0;
  return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double chi_square_cdf(double x, int df) {
  if (df < 1) throw InputError("chi_square_cdf: df must be >= 1");
  if (x <= 0.0) return 0.0;
  return gamma_p(0.5 * df, 0.5 * x);
}

double chi_square_critical(double p, int df) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InputError("chi_square_critical: p must lie in (0,1)");
  }
  if (df < 1) throw InputError("chi_square_critical: df must be >= 1");

  // Wilson-Hilferty starting point, clamped away from zero.
  double z = normal_quantile(p);
  double n = static_cast<double>(df);
  double t = 1.0 - 2.0 / (9.0 * n) + z * std::sqrt(2.0 / (9.0 * n));
  double x = n * t * t * t;
  if (!(x > 0.0) || !std::isfinite(x)) x = n;

  // Newton on the CDF with bisection fallback.
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    double f = chi_square_cdf(x, df) - p;
    if (f > 0)
      hi = x;
    else
      lo = x;
    // Chi-square density at x.
    double logpdf = (0.5 * n - 1.0) * std::log(x) - 0.5 * x -
                    std::lgamma(0.5 * n) - 0.5 * n * std::log(2.0);
    double pdf = std::exp(logpdf);
    double step = (pdf > 0) ? f / pdf : 0.0;
    double next = x - step;
    if (!(next > lo && (next < hi))) {
      next = std::isfinite(hi) ? 0.5 * (lo + hi) : lo * 2 + 1;
    }
    if (std::fabs(next - x) <= 1e-12 * std::max(1.0, x)) {
      x = next;
      break;
    }
    x = next;
  }
  if (!std::isfinite(x)) {
    throw NumericError("chi_square_critical failed to converge (p=" +
                       std::to_string(p) + ", df=" + std::to_string(df) + ")");
  }
  return x;
}

}  // namespace idsample
