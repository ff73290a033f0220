#include "bellrecycle/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace bellrecycle {
namespace {

constexpr double kDiscriminantTol = 1e-12;
constexpr double kImagTol = 1e-9;
// A discriminant within kDiscriminantTol of zero fixes the roots only to
// about sqrt(kDiscriminantTol): a double root comes back from the eigensolver
// as a conjugate pair split by ~sqrt(eps), which is still a real root.
constexpr double kNearDegenerateImagTol = 1e-6;

double polish(double a, double b, double c, double d, double z) {
  for (int i = 0; i < 4; ++i) {
    const double f = ((a * z + b) * z + c) * z + d;
    const double df = (3.0 * a * z + 2.0 * b) * z + c;
    if (df == 0.0) break;
    const double step = f / df;
    if (!std::isfinite(step)) break;
    z -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

std::vector<double> companion_roots(double a, double b, double c, double d) {
  Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
  companion(0, 0) = -b / a;
  companion(0, 1) = -c / a;
  companion(0, 2) = -d / a;
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
  std::vector<double> roots;
  for (int i = 0; i < 3; ++i) {
    const auto lambda = solver.eigenvalues()(i);
    const double tol = std::max(kImagTol, kNearDegenerateImagTol * std::max(1.0, std::abs(lambda.real())));
    if (std::abs(lambda.imag()) < tol) roots.push_back(lambda.real());
  }
  return roots;
}

}  // namespace

std::vector<double> real_quadratic_roots(double a, double b, double c) {
  std::vector<double> roots;
  if (a == 0.0) {
    if (b != 0.0) roots.push_back(-c / b);
    return roots;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return roots;
  // Citardauq form for the small-magnitude root.
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    roots.push_back(0.0);
    roots.push_back(0.0);
    return roots;
  }
  roots.push_back(q / a);
  roots.push_back(c / q);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> real_cubic_roots(double a, double b, double c, double d) {
  const double scale = std::max({std::abs(b), std::abs(c), std::abs(d)});
  if (std::abs(a) <= 1e-14 * scale) return real_quadratic_roots(b, c, d);

  const double p2 = b / a;
  const double p1 = c / a;
  const double p0 = d / a;
  const double q = (p2 * p2 - 3.0 * p1) / 9.0;
  const double r = (p2 * (2.0 * p2 * p2 - 9.0 * p1) + 27.0 * p0) / 54.0;
  const double r2 = r * r;
  const double q3 = q * q * q;
  const double disc = r2 - q3;

  std::vector<double> roots;
  if (std::abs(disc) <= kDiscriminantTol * std::max({r2, std::abs(q3), 1.0})) {
    roots = companion_roots(a, b, c, d);
  } else if (disc < 0.0) {
    const double t = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
    const double m = -2.0 * std::sqrt(q);
    const double shift = p2 / 3.0;
    roots = {m * std::cos(t / 3.0) - shift,
             m * std::cos((t + 2.0 * std::numbers::pi) / 3.0) - shift,
             m * std::cos((t - 2.0 * std::numbers::pi) / 3.0) - shift};
  } else {
    const double big = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(disc)), r);
    const double small = big == 0.0 ? 0.0 : q / big;
    roots = {big + small - p2 / 3.0};
  }
  for (double& z : roots) z = polish(a, b, c, d, z);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace bellrecycle
