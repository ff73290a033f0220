#pragma once

#include <vector>

namespace bellrecycle {

/// Real roots of a*z^3 + b*z^2 + c*z + d, ascending, each Newton-polished.
///
/// Closed-form Cardano (trigonometric branch for three real roots). When the
/// discriminant is within 1e-12 (relative) of zero, or the leading coefficient
/// is negligible, the roots come from the companion-matrix eigenvalues and a
/// root counts as real if its imaginary part is below 1e-9, or below 1e-6
/// (relative) for the split pair of a double root.
std::vector<double> real_cubic_roots(double a, double b, double c, double d);

/// Real roots of a*z^2 + b*z + c, ascending. Degenerates to the linear root
/// when a == 0.
std::vector<double> real_quadratic_roots(double a, double b, double c);

}  // namespace bellrecycle
