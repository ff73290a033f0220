#pragma once

#include <cstdint>
#include <random>

#include "bellrecycle/bell.hpp"
#include "bellrecycle/monogamy.hpp"
#include "bellrecycle/observables.hpp"
#include "bellrecycle/states.hpp"

namespace bellrecycle {

using Rng = std::mt19937_64;

Vector3 random_unit_vector(Rng& rng);

/// Unit vector orthogonal to `axis` (itself a unit vector), uniform on that circle.
Vector3 random_orthogonal_unit_vector(const Vector3& axis, Rng& rng);

/// Uniform (r, alpha) over the reversibility parameterization, random axis.
Observable random_observable(Rng& rng);

Observable random_unbiased_observable(Rng& rng);

/// Haar-random pure two-qubit state.
TwoQubitState random_pure_state(Rng& rng);

/// Random 3x3 correlation matrix of a valid state (mixture of a random pure
/// state with white noise).
Matrix3 random_correlation_matrix(Rng& rng);

/// Unbiased settings with x.x' = 0 and y.y' = 0 on a random pure state.
ScenarioConfig random_orthogonal_config(Rng& rng);

/// Unbiased settings with S_X = S_X', S_Y = S_Y', arbitrary directions.
ScenarioConfig random_equal_strength_config(Rng& rng);

/// Unbiased settings, arbitrary strengths and directions.
ScenarioConfig random_unbiased_config(Rng& rng);

/// The Theorem-1 saturating point: S = 2 sqrt(2)/3 on every setting at the
/// optimal CHSH directions on the singlet.
ScenarioConfig theorem1_saturating_config();

/// The Theorem-2 saturating point: projective, parallel settings per side.
ScenarioConfig theorem2_saturating_config();

/// Projective settings reaching 2 sqrt 2 on the singlet.
MeasurementPair optimal_chsh_alice(double strength = 1.0);
MeasurementPair optimal_chsh_bob(double strength = 1.0);

}  // namespace bellrecycle
