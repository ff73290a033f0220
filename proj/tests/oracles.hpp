#pragma once

// Brute-force reference computations at the density-operator level. They
// share no code with the library beyond the value types.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

#include "bellrecycle/observables.hpp"
#include "bellrecycle/states.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Vec4c = Eigen::Vector4cd;

inline Mat2c sigma(int mu) {
  Mat2c m;
  switch (mu) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, C(0, -1), C(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Mat4c kron(const Mat2c& a, const Mat2c& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

/// Theta_{mu nu} = tr(rho sigma_mu (x) sigma_nu).
inline Eigen::Matrix4d theta_of(const Mat4c& rho) {
  Eigen::Matrix4d theta;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) theta(mu, nu) = (rho * kron(sigma(mu), sigma(nu))).trace().real();
  return theta;
}

inline Mat4c density_of(const Eigen::Matrix4d& theta) {
  Mat4c rho = Mat4c::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) rho += C(theta(mu, nu) / 4.0) * kron(sigma(mu), sigma(nu));
  return rho;
}

inline Mat4c pure(const Vec4c& psi) {
  const Vec4c v = psi.normalized();
  return v * v.adjoint();
}

/// X = B 1 + S x.sigma as a 2x2 operator.
inline Mat2c operator_of(const bellrecycle::Observable& obs) {
  Mat2c x = C(obs.bias()) * sigma(0);
  for (int i = 0; i < 3; ++i) x += C(obs.strength() * obs.direction()(i)) * sigma(i + 1);
  return x;
}

/// Principal square root of a positive semidefinite 2x2 operator.
inline Mat2c psd_sqrt(const Mat2c& m) {
  Eigen::SelfAdjointEigenSolver<Mat2c> es(m);
  // Rounding-level eigenvalues would otherwise surface as ~1e-8 after sqrt.
  const double floor = 1e-14 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  Eigen::Vector2d ev = es.eigenvalues().unaryExpr([&](double v) { return v < floor ? 0.0 : std::sqrt(v); });
  return es.eigenvectors() * ev.cast<C>().asDiagonal() * es.eigenvectors().adjoint();
}

/// Average over two equally likely settings of the non-selective square-root
/// instrument E_pm = (1 +- X)/2, acting on one side of rho.
inline Mat4c square_root_ensemble(const Mat4c& rho, const bellrecycle::Observable& first,
                                  const bellrecycle::Observable& second, bool alice) {
  Mat4c out = Mat4c::Zero();
  for (const auto* obs : {&first, &second}) {
    const Mat2c x = operator_of(*obs);
    for (double sign : {1.0, -1.0}) {
      const Mat2c k = psd_sqrt(0.5 * (sigma(0) + sign * x));
      const Mat4c kk = alice ? kron(k, sigma(0)) : kron(sigma(0), k);
      out += 0.5 * kk * rho * kk.adjoint();
    }
  }
  return out;
}

/// <X (x) Y> = tr(rho X (x) Y).
inline double correlator(const Mat4c& rho, const bellrecycle::Observable& x,
                         const bellrecycle::Observable& y) {
  return (rho * kron(operator_of(x), operator_of(y))).trace().real();
}

/// Reversibility from its definition, in long double.
inline long double reversibility_ld(long double b, long double s) {
  return 0.5L * std::sqrt(std::max(0.0L, (1 + b) * (1 + b) - s * s)) +
         0.5L * std::sqrt(std::max(0.0L, (1 - b) * (1 - b) - s * s));
}

/// Largest projective CHSH value for correlation matrix T by search. For
/// Bob's settings y, y' write y +- y' = 2 cos(t/2) e1, 2 sin(t/2) e2 with e1,
/// e2 orthonormal; Alice's best reply gives 2 (cos(t/2)|T e1| + sin(t/2)|T e2|),
/// maximal over t at 2 sqrt(|T e1|^2 + |T e2|^2). The frame (e1, e2) is
/// searched on a grid of `step` radians and then refined by pattern search.
inline double chsh_grid_search(const Eigen::Matrix3d& t, double step = std::numbers::pi / 90.0) {
  const auto value = [&](double polar, double azimuth, double psi) {
    const Eigen::Vector3d e1(std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
                             std::cos(polar));
    const Eigen::Vector3d u(std::cos(polar) * std::cos(azimuth), std::cos(polar) * std::sin(azimuth),
                            -std::sin(polar));
    const Eigen::Vector3d v = e1.cross(u);
    const Eigen::Vector3d e2 = std::cos(psi) * u + std::sin(psi) * v;
    return 2.0 * std::sqrt((t * e1).squaredNorm() + (t * e2).squaredNorm());
  };
  const double pi = std::numbers::pi;
  double best = -1.0;
  double bp = 0, ba = 0, bs = 0;
  for (double p = 0.0; p <= pi + 1e-12; p += step)
    for (double a = 0.0; a < 2.0 * pi; a += step)
      for (double s = 0.0; s < pi; s += step) {
        const double v = value(p, a, s);
        if (v > best) {
          best = v;
          bp = p;
          ba = a;
          bs = s;
        }
      }
  for (double h = step; h > 1e-9; h *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int d = 0; d < 3; ++d)
        for (double sign : {1.0, -1.0}) {
          double p = bp, a = ba, s = bs;
          (d == 0 ? p : d == 1 ? a : s) += sign * h;
          const double v = value(p, a, s);
          if (v > best + 1e-15) {
            best = v;
            bp = p;
            ba = a;
            bs = s;
            moved = true;
          }
        }
    }
  }
  return best;
}

}  // namespace oracle
