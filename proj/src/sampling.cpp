#include "bellrecycle/sampling.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace bellrecycle {

Vector3 random_unit_vector(Rng& rng) {
  std::normal_distribution<double> normal;
  Vector3 v;
  do {
    v = Vector3(normal(rng), normal(rng), normal(rng));
  } while (v.norm() < 1e-12);
  return v.normalized();
}

Vector3 random_orthogonal_unit_vector(const Vector3& axis, Rng& rng) {
  Vector3 v;
  do {
    v = random_unit_vector(rng);
    v -= v.dot(axis) * axis;
  } while (v.norm() < 1e-6);
  return v.normalized();
}

Observable random_observable(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = unit(rng);
  const double alpha = (2.0 * unit(rng) - 1.0) * std::asin(r);
  const auto sb = from_reversibility_angle(r, alpha);
  return Observable::make(sb.bias, sb.strength, random_unit_vector(rng));
}

Observable random_unbiased_observable(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return Observable::unbiased(unit(rng), random_unit_vector(rng));
}

TwoQubitState random_pure_state(Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::Vector4cd psi;
  for (int i = 0; i < 4; ++i) psi(i) = std::complex<double>(normal(rng), normal(rng));
  return from_pure_state<double>(psi);
}

Matrix3 random_correlation_matrix(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return unit(rng) * random_pure_state(rng).correlations();
}

ScenarioConfig random_orthogonal_config(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vector3 x = random_unit_vector(rng);
  const Vector3 xp = random_orthogonal_unit_vector(x, rng);
  const Vector3 y = random_unit_vector(rng);
  const Vector3 yp = random_orthogonal_unit_vector(y, rng);
  ScenarioConfig cfg;
  cfg.state = random_pure_state(rng);
  cfg.alice = {Observable::unbiased(unit(rng), x), Observable::unbiased(unit(rng), xp)};
  cfg.bob = {Observable::unbiased(unit(rng), y), Observable::unbiased(unit(rng), yp)};
  return cfg;
}

ScenarioConfig random_equal_strength_config(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double sx = unit(rng);
  const double sy = unit(rng);
  ScenarioConfig cfg;
  cfg.state = random_pure_state(rng);
  cfg.alice = {Observable::unbiased(sx, random_unit_vector(rng)),
               Observable::unbiased(sx, random_unit_vector(rng))};
  cfg.bob = {Observable::unbiased(sy, random_unit_vector(rng)),
             Observable::unbiased(sy, random_unit_vector(rng))};
  return cfg;
}

ScenarioConfig random_unbiased_config(Rng& rng) {
  ScenarioConfig cfg;
  cfg.state = random_pure_state(rng);
  cfg.alice = {random_unbiased_observable(rng), random_unbiased_observable(rng)};
  cfg.bob = {random_unbiased_observable(rng), random_unbiased_observable(rng)};
  return cfg;
}

MeasurementPair optimal_chsh_alice(double strength) {
  return {Observable::unbiased(strength, Vector3::UnitX()),
          Observable::unbiased(strength, Vector3::UnitY())};
}

MeasurementPair optimal_chsh_bob(double strength) {
  const double h = 1.0 / std::numbers::sqrt2;
  return {Observable::unbiased(strength, Vector3(-h, -h, 0.0)),
          Observable::unbiased(strength, Vector3(-h, h, 0.0))};
}

ScenarioConfig theorem1_saturating_config() {
  const double s = 2.0 * std::numbers::sqrt2 / 3.0;
  return {singlet(), optimal_chsh_alice(s), optimal_chsh_bob(s), MeasurementKind::square_root()};
}

ScenarioConfig theorem2_saturating_config() {
  const MeasurementPair alice{Observable::projective(Vector3::UnitZ()),
                              Observable::projective(Vector3::UnitZ())};
  const MeasurementPair bob{Observable::projective(-Vector3::UnitZ()),
                            Observable::projective(-Vector3::UnitZ())};
  return {singlet(), alice, bob, MeasurementKind::square_root()};
}

}  // namespace bellrecycle
