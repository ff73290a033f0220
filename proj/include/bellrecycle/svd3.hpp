#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace bellrecycle {

/// Singular values of a real 3x3 matrix, sorted descending.
///
/// One-sided (Hestenes) Jacobi: each plane rotation applied to the columns of
/// M is the Jacobi rotation that annihilates one off-diagonal entry of M^T M,
/// so the iteration diagonalizes M^T M without forming it. Sweeps stop when
/// every column pair is orthogonal to 1e-14 relative, or after 50 sweeps.
/// Reentrant: all workspace lives on the stack.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 1> svd3(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;
  static_assert(Derived::RowsAtCompileTime == 3 && Derived::ColsAtCompileTime == 3,
                "svd3 expects a 3x3 matrix");
  constexpr int kMaxSweeps = 50;
  const Scalar threshold(1e-14);

  Eigen::Matrix<Scalar, 3, 3> a = m;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const Scalar alpha = a.col(p).squaredNorm();
        const Scalar beta = a.col(q).squaredNorm();
        const Scalar gamma = a.col(p).dot(a.col(q));
        if (gamma == Scalar(0) || abs(gamma) <= threshold * sqrt(alpha * beta)) continue;
        rotated = true;
        const Scalar zeta = (beta - alpha) / (Scalar(2) * gamma);
        const Scalar sign = zeta >= Scalar(0) ? Scalar(1) : Scalar(-1);
        const Scalar t = sign / (abs(zeta) + sqrt(Scalar(1) + zeta * zeta));
        const Scalar c = Scalar(1) / sqrt(Scalar(1) + t * t);
        const Scalar s = c * t;
        const Eigen::Matrix<Scalar, 3, 1> cp = a.col(p);
        a.col(p) = c * cp - s * a.col(q);
        a.col(q) = s * cp + c * a.col(q);
      }
    }
    if (!rotated) break;
  }
  Eigen::Matrix<Scalar, 3, 1> values(a.col(0).norm(), a.col(1).norm(), a.col(2).norm());
  std::sort(values.data(), values.data() + 3, [](Scalar x, Scalar y) { return x > y; });
  return values;
}

}  // namespace bellrecycle
