#pragma once

#include <utility>

#include "bellrecycle/bell.hpp"
#include "bellrecycle/instruments.hpp"
#include "bellrecycle/observables.hpp"
#include "bellrecycle/states.hpp"

namespace bellrecycle {

/// A1 and B1 each pick one of two settings with equal probability, measure
/// with `kind`, and hand their qubits on to A2 and B2.
struct ScenarioConfig {
  TwoQubitState state;
  MeasurementPair alice;
  MeasurementPair bob;
  MeasurementKind kind = MeasurementKind::square_root();
};

struct ScenarioResult {
  double s_first = 0.0;        // S(A1, B1)
  double s_star_second = 0.0;  // S*(A2, B2), optimized over A2/B2 projective settings
};

ScenarioResult evaluate_scenario(const ScenarioConfig& cfg);

/// Correlation matrix seen by A2 and B2: K T L^T.
Matrix3 downstream_correlations(const ScenarioConfig& cfg);

struct TheoremCheck {
  bool holds = false;
  double margin = 0.0;
};

/// Orthogonal settings on each side: |S1| + S2* <= 8 sqrt(2) / 3.
/// Requires unbiased observables and x.x' = 0 = y.y' within 1e-9; a
/// zero-strength observable has no meaningful axis and is exempt.
TheoremCheck check_theorem1(const ScenarioConfig& cfg);

/// Equal strengths on each side: |S1| + S2* <= 4.
TheoremCheck check_theorem2(const ScenarioConfig& cfg);

/// 4 - (|S1| + S2*), the slack in the unbiased monogamy conjecture.
double conjecture_margin(const ScenarioResult& res);

inline constexpr double kTheorem1Bound = 3.7712361663282534;  // 8 sqrt(2) / 3
inline constexpr double kTheorem2Bound = 4.0;

/// sqrt(2) (2 - x^2 - y^2) + 1/2 sqrt((1+x)^4 + (1+y)^4), x, y in [0,1].
double g_orthogonal(double x, double y);

/// f(x,c)^2 with f^4 = [(1+x)^2 + (1-x)^2 c]^2 + 4 (1-x^2)^2 c.
double f_equal_strength_squared(double x, double c);

/// sqrt(2-c) (1-x^2) + f(x,c)^2 / sqrt(8), x, c in [0,1].
double g_equal_strength(double x, double c);

/// First boundary region in terms of r = R_X:
/// (2 (1-r) sqrt(1+r), sqrt(4 + (1+r)^2 r)).
std::pair<double, double> region1_parametric(double r);

/// First boundary region as an explicit function of s in (0, 2], through the
/// cubic for h(s) = 1 + 1/R_X and the quadratic for S_Y(s)^2.
double region1_closed(double s);

/// Third boundary region (equal strengths, orthogonal settings), s in [0, 2 sqrt(2)].
double region3_curve(double s);

/// Largest d with (2 sqrt 2)^d + (1/sqrt 2)^d <= 2^(d+1), by bisection on [1, 3].
double max_exponent_d();

}  // namespace bellrecycle
