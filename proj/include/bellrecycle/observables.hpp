#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "bellrecycle/errors.hpp"

namespace bellrecycle {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4>;

using Vector3 = Vec3<double>;
using Matrix3 = Mat3<double>;
using Matrix4 = Mat4<double>;

namespace tol {
// Checks performed when a value is constructed.
inline constexpr double construction = 1e-12;
// Checks on values crossing a module or process boundary.
inline constexpr double interface = 1e-9;
}  // namespace tol

namespace detail {

// sqrt with negative radicands inside the construction tolerance clamped to 0.
template <typename Scalar>
Scalar clamped_sqrt(Scalar radicand) {
  using std::sqrt;
  if (radicand < Scalar(0)) {
    if (radicand < Scalar(-tol::construction)) {
      throw Error(ErrorCode::NegativeRadicand, "radicand below clamping tolerance");
    }
    return Scalar(0);
  }
  return sqrt(radicand);
}

}  // namespace detail

/// Two-valued qubit observable X = bias * 1 + strength * sigma.direction.
///
/// Invariants: strength in [0,1], strength + |bias| <= 1, unit direction. A
/// zero-strength observable carries the canonical direction (0,0,1).
template <typename Scalar>
class BasicObservable {
 public:
  using Vector = Vec3<Scalar>;

  /// Projective observable along +z; the default for containers.
  BasicObservable() : bias_(0), strength_(1), direction_(Vector::UnitZ()) {}

  static BasicObservable make(Scalar bias, Scalar strength, const Vector& direction) {
    using std::abs;
    const Scalar eps(tol::construction);
    if (!(strength >= -eps && strength <= Scalar(1) + eps)) {
      throw Error(ErrorCode::ConstraintViolation, "strength outside [0,1]");
    }
    if (!(abs(bias) <= Scalar(1) + eps)) {
      throw Error(ErrorCode::ConstraintViolation, "bias outside [-1,1]");
    }
    if (strength + abs(bias) > Scalar(1) + eps) {
      throw Error(ErrorCode::ConstraintViolation, "strength + |bias| exceeds 1");
    }
    BasicObservable obs;
    obs.bias_ = bias < Scalar(-1) ? Scalar(-1) : (bias > Scalar(1) ? Scalar(1) : bias);
    // Snap onto the constraint surface so downstream radicands stay non-negative.
    Scalar s = strength < Scalar(0) ? Scalar(0) : strength;
    const Scalar cap = Scalar(1) - abs(obs.bias_);
    obs.strength_ = s > cap ? cap : s;
    if (obs.strength_ == Scalar(0)) {
      obs.direction_ = Vector::UnitZ();
      return obs;
    }
    const Scalar norm = direction.norm();
    if (!(norm >= eps)) {
      throw Error(ErrorCode::ZeroDirection, "direction must be nonzero when strength > 0");
    }
    obs.direction_ = direction / norm;
    return obs;
  }

  static BasicObservable projective(const Vector& direction) {
    return make(Scalar(0), Scalar(1), direction);
  }
  static BasicObservable trivial(Scalar bias) { return make(bias, Scalar(0), Vector::UnitZ()); }
  static BasicObservable unbiased(Scalar strength, const Vector& direction) {
    return make(Scalar(0), strength, direction);
  }

  Scalar bias() const { return bias_; }
  Scalar strength() const { return strength_; }
  const Vector& direction() const { return direction_; }
  bool is_unbiased(Scalar tolerance = Scalar(tol::interface)) const {
    using std::abs;
    return abs(bias_) <= tolerance;
  }

  /// The row (bias, strength * direction^T) that contracts against Theta.
  Eigen::Matrix<Scalar, 1, 4> theta_row() const {
    Eigen::Matrix<Scalar, 1, 4> row;
    row << bias_, strength_ * direction_.transpose();
    return row;
  }

 private:
  Scalar bias_;
  Scalar strength_;
  Vector direction_;
};

using Observable = BasicObservable<double>;

template <typename Scalar>
struct BasicReversibilityProfile {
  Scalar reversibility;
  Scalar decoherence;
};
using ReversibilityProfile = BasicReversibilityProfile<double>;

template <typename Scalar>
struct BasicStrengthBias {
  Scalar strength;
  Scalar bias;
};
using StrengthBias = BasicStrengthBias<double>;

/// Maximum reversibility of any measurement of the observable with the given
/// bias and strength (the off-diagonal factor of its square-root measurement).
template <typename Scalar>
Scalar reversibility(Scalar bias, Scalar strength) {
  // (1 +- B)^2 - S^2 factored to keep the boundary S + |B| = 1 exact.
  const Scalar plus = (Scalar(1) + bias - strength) * (Scalar(1) + bias + strength);
  const Scalar minus = (Scalar(1) - bias - strength) * (Scalar(1) - bias + strength);
  return Scalar(0.5) * detail::clamped_sqrt(plus) + Scalar(0.5) * detail::clamped_sqrt(minus);
}

template <typename Scalar>
Scalar reversibility(const BasicObservable<Scalar>& obs) {
  return reversibility(obs.bias(), obs.strength());
}

/// Minimal decoherence sqrt(1 - R^2).
template <typename Scalar>
Scalar decoherence(const BasicObservable<Scalar>& obs) {
  const Scalar r = reversibility(obs);
  return detail::clamped_sqrt(Scalar(1) - r * r);
}

template <typename Scalar>
BasicReversibilityProfile<Scalar> reversibility_profile(const BasicObservable<Scalar>& obs) {
  return {reversibility(obs), decoherence(obs)};
}

/// Strength and bias of the observable with maximum reversibility r and
/// mixing angle alpha, |alpha| <= asin(r).
template <typename Scalar>
BasicStrengthBias<Scalar> from_reversibility_angle(Scalar r, Scalar alpha) {
  using std::abs;
  using std::asin;
  using std::cos;
  using std::sin;
  if (!(r >= Scalar(0) && r <= Scalar(1))) {
    throw Error(ErrorCode::DomainError, "reversibility outside [0,1]");
  }
  if (abs(alpha) > asin(r) + Scalar(tol::construction)) {
    throw Error(ErrorCode::AngleOutOfRange, "|alpha| exceeds asin(r)");
  }
  return {detail::clamped_sqrt(Scalar(1) - r * r) * cos(alpha), r * sin(alpha)};
}

/// Upper bound (R + 2) / 3 on the average fidelity of any implementation.
template <typename Scalar>
Scalar fidelity_bound(const BasicObservable<Scalar>& obs) {
  return (reversibility(obs) + Scalar(2)) / Scalar(3);
}

/// Single-qubit mean value <X> for a qubit with the given Bloch vector.
template <typename Scalar>
Scalar expectation(const BasicObservable<Scalar>& obs, const Vec3<Scalar>& bloch) {
  if (bloch.norm() > Scalar(1) + Scalar(tol::interface)) {
    throw Error(ErrorCode::InvalidBloch, "Bloch vector longer than 1");
  }
  return obs.bias() + obs.strength() * obs.direction().dot(bloch);
}

}  // namespace bellrecycle
