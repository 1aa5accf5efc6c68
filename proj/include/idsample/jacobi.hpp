#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace idsample {

template <typename Scalar>
struct JacobiEigenResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns
  Eigen::Vector<Scalar, Eigen::Dynamic> values;  // in diagonal order, unsorted
  int sweeps = 0;
  bool converged = false;
};

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Sweeps rotate
// every off-diagonal pair (p,q) in row order until the off-diagonal
// Frobenius norm drops below tol * ||A||_F, or max_sweeps is reached.
template <typename Derived>
JacobiEigenResult<typename Derived::Scalar> jacobi_eigensymm(
    const Eigen::MatrixBase<Derived>& matrix,
    typename Derived::Scalar tol = typename Derived::Scalar(1e-12),
    int max_sweeps = 100) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  const Eigen::Index n = matrix.rows();
  Mat a = matrix;  // rotated in place
  JacobiEigenResult<Scalar> result;
  result.vectors = Mat::Identity(n, n);

  const Scalar norm = a.norm();
  auto off_norm = [&a, n]() {
    Scalar sum = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) sum += a(p, q) * a(p, q);
    return std::sqrt(Scalar(2) * sum);
  };

  if (norm == Scalar(0) || n < 2) {
    result.values = a.diagonal();
    result.converged = true;
    return result;
  }

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= tol * norm) {
      result.converged = true;
      break;
    }
    ++result.sweeps;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;

        // tan of the rotation angle that annihilates a(p,q).
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        Scalar t;
        if (std::abs(theta) > Scalar(1e150)) {
          t = Scalar(1) / (Scalar(2) * theta);
        } else {
          t = Scalar(theta >= 0 ? 1 : -1) /
              (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
        }
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;

        const Scalar app = a(p, p), aqq = a(q, q);
        a(p, p) = c * c * app - Scalar(2) * s * c * apq + s * s * aqq;
        a(q, q) = s * s * app + Scalar(2) * s * c * apq + c * c * aqq;
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        for (Eigen::Index i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const Scalar aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(p, i) = a(i, p);
          a(i, q) = s * aip + c * aiq;
          a(q, i) = a(i, q);
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          const Scalar vip = result.vectors(i, p), viq = result.vectors(i, q);
          result.vectors(i, p) = c * vip - s * viq;
          result.vectors(i, q) = s * vip + c * viq;
        }
      }
    }
  }
  if (!result.converged && off_norm() <= tol * norm) result.converged = true;
  result.values = a.diagonal();
  return result;
}

}  // namespace idsample
