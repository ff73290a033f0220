#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "bellrecycle/errors.hpp"
#include "bellrecycle/observables.hpp"
#include "bellrecycle/svd3.hpp"

namespace bellrecycle {

/// Pauli matrix sigma_mu in the basis ordering (1, sigma_1, sigma_2, sigma_3),
/// sigma_3 diagonal.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> pauli(int mu) {
  using C = std::complex<Scalar>;
  Eigen::Matrix<C, 2, 2> s;
  switch (mu) {
    case 0: s << C(1), C(0), C(0), C(1); break;
    case 1: s << C(0), C(1), C(1), C(0); break;
    case 2: s << C(0), C(0, -1), C(0, 1), C(0); break;
    default: s << C(1), C(0), C(0), C(-1); break;
  }
  return s;
}

namespace detail {

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 4, 4> pauli_product(int mu, int nu) {
  const auto left = pauli<Scalar>(mu);
  const auto right = pauli<Scalar>(nu);
  Eigen::Matrix<std::complex<Scalar>, 4, 4> out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.template block<2, 2>(2 * i, 2 * j) = left(i, j) * right;
  }
  return out;
}

}  // namespace detail

/// Two-qubit state in the correlation-tensor form Theta = (1, b^T; a, T):
/// rho = 1/4 sum_{mu,nu} Theta_{mu nu} sigma_mu (x) sigma_nu.
template <typename Scalar>
class BasicTwoQubitState {
 public:
  using Vector = Vec3<Scalar>;
  using Matrix = Mat3<Scalar>;
  using Theta = Mat4<Scalar>;
  using DensityMatrix = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

  /// Maximally mixed state.
  BasicTwoQubitState() : theta_(Theta::Zero()) { theta_(0, 0) = Scalar(1); }

  /// Validated construction; throws InvalidState unless Theta describes a
  /// density operator (see is_physical).
  static BasicTwoQubitState from_theta(const Theta& theta) {
    BasicTwoQubitState state = trusted(theta);
    state.validate();
    return state;
  }

  static BasicTwoQubitState from_blocks(const Vector& alice_bloch, const Vector& bob_bloch,
                                        const Matrix& correlations) {
    return from_theta(assemble(alice_bloch, bob_bloch, correlations));
  }

  /// Skips validation. For values produced by validity-preserving maps
  /// (local channels, noise) inside hot loops.
  static BasicTwoQubitState trusted(const Theta& theta) {
    BasicTwoQubitState state;
    state.theta_ = theta;
    state.theta_(0, 0) = Scalar(1);
    return state;
  }

  static BasicTwoQubitState trusted(const Vector& alice_bloch, const Vector& bob_bloch,
                                    const Matrix& correlations) {
    return trusted(assemble(alice_bloch, bob_bloch, correlations));
  }

  static Theta assemble(const Vector& alice_bloch, const Vector& bob_bloch,
                        const Matrix& correlations) {
    Theta theta;
    theta(0, 0) = Scalar(1);
    theta.template block<1, 3>(0, 1) = bob_bloch.transpose();
    theta.template block<3, 1>(1, 0) = alice_bloch;
    theta.template block<3, 3>(1, 1) = correlations;
    return theta;
  }

  const Theta& theta() const { return theta_; }
  Vector alice_bloch() const { return theta_.template block<3, 1>(1, 0); }
  Vector bob_bloch() const { return theta_.template block<1, 3>(0, 1).transpose(); }
  Matrix correlations() const { return theta_.template block<3, 3>(1, 1); }

  DensityMatrix density_matrix() const {
    using C = std::complex<Scalar>;
    DensityMatrix rho = DensityMatrix::Zero();
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        if (theta_(mu, nu) == Scalar(0)) continue;
        rho += C(theta_(mu, nu) / Scalar(4)) *
               detail::pauli_product<Scalar>(mu, nu);
      }
    }
    return rho;
  }

  /// Smallest eigenvalue of the reconstructed density operator.
  Scalar min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(density_matrix(),
                                                        Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
  }

  bool is_physical(Scalar tolerance = Scalar(tol::interface)) const {
    if (alice_bloch().norm() > Scalar(1) + tolerance) return false;
    if (bob_bloch().norm() > Scalar(1) + tolerance) return false;
    if (svd3(correlations())(0) > Scalar(1) + tolerance) return false;
    return min_eigenvalue() >= -tolerance;
  }

  void validate() const {
    if (!theta_.allFinite()) throw Error(ErrorCode::InvalidState, "non-finite entries");
    if (!is_physical()) {
      throw Error(ErrorCode::InvalidState, "Theta does not describe a positive density operator");
    }
  }

 private:
  Theta theta_;
};

using TwoQubitState = BasicTwoQubitState<double>;

/// Spin singlet: a = b = 0, T = -I.
template <typename Scalar = double>
BasicTwoQubitState<Scalar> singlet() {
  return BasicTwoQubitState<Scalar>::trusted(Vec3<Scalar>::Zero(), Vec3<Scalar>::Zero(),
                                            -Mat3<Scalar>::Identity());
}

/// cos(alpha)|00> + sin(alpha)|11>, alpha in [0, pi/4].
template <typename Scalar = double>
BasicTwoQubitState<Scalar> from_schmidt(Scalar alpha) {
  using std::acos;
  using std::cos;
  using std::sin;
  const Scalar quarter_pi = acos(Scalar(-1)) / Scalar(4);
  const Scalar eps(tol::construction);
  if (!(alpha >= -eps && alpha <= quarter_pi + eps)) {
    throw Error(ErrorCode::AngleOutOfRange, "Schmidt angle outside [0, pi/4]");
  }
  const Scalar c2 = cos(Scalar(2) * alpha);
  const Scalar s2 = sin(Scalar(2) * alpha);
  const Vec3<Scalar> bloch(Scalar(0), Scalar(0), c2);
  Mat3<Scalar> t = Mat3<Scalar>::Zero();
  t.diagonal() << s2, -s2, Scalar(1);
  return BasicTwoQubitState<Scalar>::trusted(bloch, bloch, t);
}

/// Theta_{mu nu} = <psi| sigma_mu (x) sigma_nu |psi> for a normalized pure state.
template <typename Scalar>
BasicTwoQubitState<Scalar> from_pure_state(const Eigen::Matrix<std::complex<Scalar>, 4, 1>& psi) {
  const Scalar norm = psi.norm();
  if (!(norm > Scalar(0))) throw Error(ErrorCode::InvalidState, "zero state vector");
  const Eigen::Matrix<std::complex<Scalar>, 4, 1> v = psi / norm;
  Mat4<Scalar> theta;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const auto op = detail::pauli_product<Scalar>(mu, nu);
      theta(mu, nu) = (v.adjoint() * op * v)(0, 0).real();
    }
  }
  return BasicTwoQubitState<Scalar>::trusted(theta);
}

/// p * rho + (1 - p) * 1/4: scales a, b and T by p.
template <typename Scalar>
BasicTwoQubitState<Scalar> add_isotropic_noise(const BasicTwoQubitState<Scalar>& state, Scalar p) {
  if (!(p >= Scalar(0) && p <= Scalar(1))) {
    throw Error(ErrorCode::ProbabilityOutOfRange, "noise parameter outside [0,1]");
  }
  Mat4<Scalar> theta = p * state.theta();
  theta(0, 0) = Scalar(1);
  return BasicTwoQubitState<Scalar>::trusted(theta);
}

}  // namespace bellrecycle
