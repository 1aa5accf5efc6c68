#pragma once

// Test-only reference implementations, deliberately independent of the
// library's numerics: the normal CDF in long double via a Maclaurin series
// (small arguments) and the Laplace continued fraction (tails), and a
// characteristic-polynomial eigenvalue solver for d <= 4.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

// erf(z) = 2/sqrt(pi) * sum_n (-1)^n z^(2n+1) / (n! (2n+1)); reliable for
// |z| <= ~3 in long double.
inline long double erf_series(long double z) {
  const long double two_over_sqrt_pi = 1.1283791670955125738961589031215L;
  long double term = z;
  long double sum = z;
  for (int n = 1; n < 200; ++n) {
    term *= -z * z / n;
    const long double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs(add) < 1e-25L * std::fabs(sum)) break;
  }
  return two_over_sqrt_pi * sum;
}

// erfc(z) = exp(-z^2)/sqrt(pi) / (z + (1/2)/(z + (2/2)/(z + (3/2)/(z + ...))))
// evaluated bottom-up at fixed depth; accurate for z >= 2.
inline long double erfc_cf(long double z) {
  const long double sqrt_pi = 1.7724538509055160272981674833411L;
  long double tail = 0.0L;
  for (int n = 160; n >= 1; --n) {
    tail = (n / 2.0L) / (z + tail);
  }
  return std::exp(-z * z) / sqrt_pi / (z + tail);
}

inline long double normal_cdf(long double x) {
  const long double inv_sqrt2 = 0.70710678118654752440084436210485L;
  const long double z = x * inv_sqrt2;
  if (z < -2.0L) return 0.5L * erfc_cf(-z);
  if (z > 2.0L) return 1.0L - 0.5L * erfc_cf(z);
  return 0.5L * (1.0L + erf_series(z));
}

struct ZTest {
  long double z = 0;
  long double p = 1;
};

// Two-sample Z-test with sample variances (n-1) and two-tailed p, all in
// long double.
inline ZTest z_test(const std::vector<double>& a, const std::vector<double>& b) {
  auto moments = [](const std::vector<double>& v, long double& mean,
                    long double& var) {
    mean = 0.0L;
    for (double x : v) mean += x;
    mean /= static_cast<long double>(v.size());
    var = 0.0L;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<long double>(v.size() - 1);
  };
  long double ma = 0, va = 0, mb = 0, vb = 0;
  moments(a, ma, va);
  moments(b, mb, vb);
  ZTest out;
  out.z = (ma - mb) / std::sqrt(va / static_cast<long double>(a.size()) +
                                vb / static_cast<long double>(b.size()));
  const long double inv_sqrt2 = 0.70710678118654752440084436210485L;
  const long double u = std::fabs(out.z) * inv_sqrt2;
  out.p = u > 2.0L ? erfc_cf(u) : 1.0L - erf_series(u);
  return out;
}

// Eigenvalues of a symmetric matrix with d <= 4, via a completely different
// route than Jacobi rotations: Faddeev-LeVerrier characteristic-polynomial
// coefficients, then the roots as eigenvalues of the companion matrix
// (non-symmetric QR). Returned in descending order.
inline std::vector<double> charpoly_eigenvalues(const Eigen::MatrixXd& a) {
  const int d = static_cast<int>(a.rows());
  // p(x) = x^d + c[d-1] x^(d-1) + ... + c[0]
  std::vector<double> c(static_cast<size_t>(d), 0.0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  double ck = 1.0;
  for (int k = 1; k <= d; ++k) {
    m = a * m + ck * Eigen::MatrixXd::Identity(d, d);
    ck = -(a * m).trace() / k;
    c[static_cast<size_t>(d - k)] = ck;
  }

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -c[static_cast<size_t>(i)];

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
  std::vector<double> values;
  values.reserve(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) values.push_back(solver.eigenvalues()(i).real());
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

}  // namespace oracle
