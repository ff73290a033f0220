#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "bellrecycle/errors.hpp"
#include "bellrecycle/observables.hpp"
#include "bellrecycle/states.hpp"
#include "bellrecycle/svd3.hpp"

namespace bellrecycle {

/// One observer's two settings, chosen with equal probability.
template <typename Scalar>
struct BasicMeasurementPair {
  BasicObservable<Scalar> first;
  BasicObservable<Scalar> second;
};
using MeasurementPair = BasicMeasurementPair<double>;

/// <X Y> = (B_X, S_X x^T) Theta (B_Y; S_Y y).
template <typename Scalar>
Scalar correlator(const BasicTwoQubitState<Scalar>& state, const BasicObservable<Scalar>& x,
                  const BasicObservable<Scalar>& y) {
  return x.theta_row() * state.theta() * y.theta_row().transpose();
}

/// CHSH value <XY> + <XY'> + <X'Y> - <X'Y'>.
template <typename Scalar>
Scalar chsh_value(const BasicTwoQubitState<Scalar>& state,
                  const BasicMeasurementPair<Scalar>& alice,
                  const BasicMeasurementPair<Scalar>& bob) {
  const Eigen::Matrix<Scalar, 1, 4> x = alice.first.theta_row() * state.theta();
  const Eigen::Matrix<Scalar, 1, 4> xp = alice.second.theta_row() * state.theta();
  const Eigen::Matrix<Scalar, 4, 1> y = bob.first.theta_row().transpose();
  const Eigen::Matrix<Scalar, 4, 1> yp = bob.second.theta_row().transpose();
  return (x * y)(0, 0) + (x * yp)(0, 0) + (xp * y)(0, 0) - (xp * yp)(0, 0);
}

/// Largest CHSH value reachable by projective measurements on a state with
/// correlation matrix T: 2 sqrt(s1^2 + s2^2).
template <typename Derived>
typename Derived::Scalar horodecki_sstar(const Eigen::MatrixBase<Derived>& t) {
  using std::sqrt;
  const auto s = svd3(t);
  return typename Derived::Scalar(2) * sqrt(s(0) * s(0) + s(1) * s(1));
}

/// Angle in [0, pi] between two directions.
template <typename Scalar>
Scalar direction_angle(const Vec3<Scalar>& u, const Vec3<Scalar>& v) {
  using std::atan2;
  return atan2(u.cross(v).norm(), u.dot(v));
}

/// Strength-and-angle matrix of the singlet CHSH expression for unbiased
/// observables. Only the upper 2x2 block is populated.
template <typename Scalar>
struct BasicWMatrix {
  Mat3<Scalar> entries = Mat3<Scalar>::Zero();
  Scalar angle_theta = Scalar(0);
  Scalar angle_phi = Scalar(0);
};
using WMatrix = BasicWMatrix<double>;

template <typename Scalar>
struct BasicStrengths {
  Scalar x;
  Scalar x_prime;
  Scalar y;
  Scalar y_prime;
};
using Strengths = BasicStrengths<double>;

template <typename Scalar>
BasicWMatrix<Scalar> w_matrix(const BasicStrengths<Scalar>& s, Scalar theta, Scalar phi) {
  using std::cos;
  using std::sin;
  const Scalar a = s.x * s.y + s.x * s.y_prime + s.x_prime * s.y - s.x_prime * s.y_prime;
  const Scalar b = s.x * s.y - s.x * s.y_prime + s.x_prime * s.y + s.x_prime * s.y_prime;
  const Scalar c = s.x * s.y + s.x * s.y_prime - s.x_prime * s.y + s.x_prime * s.y_prime;
  const Scalar d = -s.x * s.y + s.x * s.y_prime + s.x_prime * s.y + s.x_prime * s.y_prime;
  const Scalar ct = cos(theta / Scalar(2));
  const Scalar st = sin(theta / Scalar(2));
  const Scalar cp = cos(phi / Scalar(2));
  const Scalar sp = sin(phi / Scalar(2));
  BasicWMatrix<Scalar> w;
  w.entries(0, 0) = a * ct * cp;
  w.entries(0, 1) = b * ct * sp;
  w.entries(1, 0) = c * st * cp;
  w.entries(1, 1) = -d * st * sp;
  w.angle_theta = theta;
  w.angle_phi = phi;
  return w;
}

/// Tight bound on |S| for unbiased observables on the singlet with the given
/// strengths and within-side angles theta = angle(x, x'), phi = angle(y, y').
template <typename Scalar>
Scalar s0_bound(const BasicStrengths<Scalar>& s, Scalar theta, Scalar phi) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Scalar radicand =
      (s.x * s.x + s.x_prime * s.x_prime) * (s.y * s.y + s.y_prime * s.y_prime) +
      Scalar(2) * s.x * s.x_prime * (s.y * s.y - s.y_prime * s.y_prime) * cos(theta) +
      Scalar(2) * s.y * s.y_prime * (s.x * s.x - s.x_prime * s.x_prime) * cos(phi) +
      Scalar(4) * s.x * s.x_prime * s.y * s.y_prime * sin(theta) * sin(phi);
  if (radicand < Scalar(0)) {
    if (radicand < Scalar(-tol::interface)) {
      throw Error(ErrorCode::NegativeRadicand, "S0 radicand negative");
    }
    return Scalar(0);
  }
  return sqrt(radicand);
}

/// sqrt(tr(W~^T W~) + 2 |det W~|) = s1(W) + s2(W).
template <typename Scalar>
Scalar s0_from_w(const BasicWMatrix<Scalar>& w) {
  using std::abs;
  using std::sqrt;
  const Eigen::Matrix<Scalar, 2, 2> block = w.entries.template topLeftCorner<2, 2>();
  return sqrt(block.squaredNorm() + Scalar(2) * abs(block.determinant()));
}

}  // namespace bellrecycle
