#include "bellrecycle/monogamy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bellrecycle/polynomial.hpp"

namespace bellrecycle {
namespace {

constexpr double kPreconditionTol = 1e-9;
constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

bool orthogonal_pair(const MeasurementPair& pair) {
  if (pair.first.strength() == 0.0 || pair.second.strength() == 0.0) return true;
  return std::abs(pair.first.direction().dot(pair.second.direction())) <= kPreconditionTol;
}

bool unbiased_pair(const MeasurementPair& pair) {
  return pair.first.is_unbiased(kPreconditionTol) && pair.second.is_unbiased(kPreconditionTol);
}

bool equal_strength_pair(const MeasurementPair& pair) {
  return std::abs(pair.first.strength() - pair.second.strength()) <= kPreconditionTol;
}

TheoremCheck check_against(const ScenarioConfig& cfg, double bound) {
  const ScenarioResult res = evaluate_scenario(cfg);
  const double margin = bound - (std::abs(res.s_first) + res.s_star_second);
  return {margin >= -tol::interface, margin};
}

}  // namespace

Matrix3 downstream_correlations(const ScenarioConfig& cfg) {
  const Matrix3 k = setting_channel(cfg.alice.first, cfg.alice.second, cfg.kind);
  const Matrix3 l = setting_channel(cfg.bob.first, cfg.bob.second, cfg.kind);
  return k * cfg.state.correlations() * l.transpose();
}

ScenarioResult evaluate_scenario(const ScenarioConfig& cfg) {
  ScenarioResult res;
  res.s_first = chsh_value(cfg.state, cfg.alice, cfg.bob);
  res.s_star_second = horodecki_sstar(downstream_correlations(cfg));
  return res;
}

TheoremCheck check_theorem1(const ScenarioConfig& cfg) {
  if (!unbiased_pair(cfg.alice) || !unbiased_pair(cfg.bob)) {
    throw Error(ErrorCode::PreconditionViolation, "theorem 1 needs unbiased observables");
  }
  if (!orthogonal_pair(cfg.alice) || !orthogonal_pair(cfg.bob)) {
    throw Error(ErrorCode::PreconditionViolation, "theorem 1 needs orthogonal settings per side");
  }
  return check_against(cfg, kTheorem1Bound);
}

TheoremCheck check_theorem2(const ScenarioConfig& cfg) {
  if (!unbiased_pair(cfg.alice) || !unbiased_pair(cfg.bob)) {
    throw Error(ErrorCode::PreconditionViolation, "theorem 2 needs unbiased observables");
  }
  if (!equal_strength_pair(cfg.alice) || !equal_strength_pair(cfg.bob)) {
    throw Error(ErrorCode::PreconditionViolation, "theorem 2 needs equal strengths per side");
  }
  return check_against(cfg, kTheorem2Bound);
}

double conjecture_margin(const ScenarioResult& res) {
  return 4.0 - (std::abs(res.s_first) + res.s_star_second);
}

double g_orthogonal(double x, double y) {
  const double a = std::pow(1.0 + x, 4);
  const double b = std::pow(1.0 + y, 4);
  return std::numbers::sqrt2 * (2.0 - x * x - y * y) + 0.5 * std::sqrt(a + b);
}

double f_equal_strength_squared(double x, double c) {
  const double first = (1.0 + x) * (1.0 + x) + (1.0 - x) * (1.0 - x) * c;
  const double cross = (1.0 - x * x) * (1.0 - x * x) * c;
  return std::sqrt(first * first + 4.0 * cross);
}

double g_equal_strength(double x, double c) {
  return std::sqrt(2.0 - c) * (1.0 - x * x) + f_equal_strength_squared(x, c) / std::sqrt(8.0);
}

std::pair<double, double> region1_parametric(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw Error(ErrorCode::DomainError, "R_X outside [0,1]");
  return {2.0 * (1.0 - r) * std::sqrt(1.0 + r), std::sqrt(4.0 + (1.0 + r) * (1.0 + r) * r)};
}

double region1_closed(double s) {
  if (!(s > 0.0 && s <= 2.0 + tol::construction)) {
    throw Error(ErrorCode::DomainError, "region-1 curve defined for s in (0, 2]");
  }
  // Analytic limits: the cubic loses its constant term as s -> 0 and its
  // leading term as s -> 2.
  if (s < 1e-6) return kTsirelson;
  const double s2 = s * s;
  if (4.0 - s2 < 1e-9) return 2.0;

  // h = 1 + 1/R_X is the root above 2; the other two lie below 2.
  const auto roots = real_cubic_roots(s2 - 4.0, -(3.0 * s2 - 16.0), 3.0 * s2 - 16.0, -s2);
  if (roots.empty() || roots.back() <= 1.0) {
    throw Error(ErrorCode::NoRealRoot, "no admissible real root of the region-1 cubic");
  }
  const double h = roots.back();
  const auto quad = real_quadratic_roots(4.0 * h, s2 * (1.0 - h), -s2);
  if (quad.empty() || quad.back() <= 0.0) {
    throw Error(ErrorCode::NoRealRoot, "no positive root of the region-1 quadratic");
  }
  const double sy2 = quad.back();
  const double ratio = s2 / sy2;
  if (ratio > 4.0 + tol::interface) {
    throw Error(ErrorCode::DomainError, "s^2 / S_Y^2 exceeds 4");
  }
  const double bracket = 2.0 + std::sqrt(std::max(0.0, 4.0 - ratio));
  return std::sqrt(4.0 + 0.25 * (1.0 - sy2) * bracket * bracket);
}

double region3_curve(double s) {
  if (!(s >= -tol::construction && s <= kTsirelson + tol::construction)) {
    throw Error(ErrorCode::DomainError, "region-3 curve defined for s in [0, 2 sqrt 2]");
  }
  const double inner = std::max(0.0, 2.0 - s / std::numbers::sqrt2);
  return std::numbers::sqrt2 - s / 4.0 + std::sqrt(inner);
}

double max_exponent_d() {
  const auto excess = [](double d) {
    return std::pow(kTsirelson, d) + std::pow(1.0 / std::numbers::sqrt2, d) - std::pow(2.0, d + 1.0);
  };
  double lo = 1.0;
  double hi = 3.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace bellrecycle
