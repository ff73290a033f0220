#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "bellrecycle/sampling.hpp"
#include "bellrecycle/states.hpp"
#include "bellrecycle/svd3.hpp"
#include "oracles.hpp"

using namespace bellrecycle;

TEST(States, Singlet) {
  const auto s = singlet();
  Matrix4 expected = Matrix4::Zero();
  expected.diagonal() << 1, -1, -1, -1;
  EXPECT_TRUE(s.theta().isApprox(expected));
  EXPECT_TRUE(svd3(s.correlations()).isApprox(Vector3(1, 1, 1)));
  // Oracle: the singlet vector (|01> - |10>)/sqrt 2.
  oracle::Vec4c psi(0, 1, -1, 0);
  EXPECT_LT((oracle::theta_of(oracle::pure(psi)) - s.theta()).norm(), 1e-12);
}

TEST(States, SchmidtExamples) {
  const auto me = from_schmidt(std::numbers::pi / 4);
  EXPECT_LT(me.alice_bloch().norm(), 1e-15);
  Matrix3 t = Matrix3::Zero();
  t.diagonal() << 1, -1, 1;
  EXPECT_LT((me.correlations() - t).norm(), 1e-15);

  const auto prod = from_schmidt(0.0);
  EXPECT_LT((prod.alice_bloch() - Vector3(0, 0, 1)).norm(), 1e-15);
  EXPECT_LT((prod.bob_bloch() - Vector3(0, 0, 1)).norm(), 1e-15);
  t.diagonal() << 0, 0, 1;
  EXPECT_LT((prod.correlations() - t).norm(), 1e-15);

  EXPECT_THROW(from_schmidt(1.0), Error);
  EXPECT_THROW(from_schmidt(-0.1), Error);
}

TEST(States, SchmidtMatchesBruteForce) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, std::numbers::pi / 4);
  for (int i = 0; i < 100; ++i) {
    const double alpha = u(rng);
    oracle::Vec4c psi(std::cos(alpha), 0, 0, std::sin(alpha));
    const auto state = from_schmidt(alpha);
    EXPECT_LT((oracle::theta_of(oracle::pure(psi)) - state.theta()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NO_THROW(state.validate());
  }
}

TEST(States, PureStateMatchesOracle) {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const auto state = random_pure_state(rng);
    const Matrix4 from_density = oracle::theta_of(oracle::density_of(state.theta()));
    EXPECT_LT((from_density - state.theta()).norm(), 1e-12);
    EXPECT_TRUE(state.is_physical());
    EXPECT_NEAR(state.density_matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(States, ValidationRejectsNonPositive) {
  Matrix3 t = Matrix3::Zero();
  t.diagonal() << 0.5, 0.5, 0.5;
  EXPECT_THROW(TwoQubitState::from_blocks(Vector3::Zero(), Vector3::Zero(), t), Error);
  t.diagonal() << 1, 0.9, 0;
  EXPECT_THROW(TwoQubitState::from_blocks(Vector3::Zero(), Vector3::Zero(), t), Error);
  EXPECT_THROW(TwoQubitState::from_blocks(Vector3(1.1, 0, 0), Vector3::Zero(), Matrix3::Zero()),
               Error);
  t = -0.5 * Matrix3::Identity();
  EXPECT_NO_THROW(TwoQubitState::from_blocks(Vector3::Zero(), Vector3::Zero(), t));
}

TEST(States, IsotropicNoise) {
  const auto s = singlet();
  EXPECT_TRUE(add_isotropic_noise(s, 1.0).theta().isApprox(s.theta()));
  Matrix4 mixed = Matrix4::Zero();
  mixed(0, 0) = 1;
  EXPECT_EQ(add_isotropic_noise(s, 0.0).theta(), mixed);
  const auto n = add_isotropic_noise(s, 0.8);
  EXPECT_LT((n.correlations() + 0.8 * Matrix3::Identity()).norm(), 1e-15);
  const Vector3 sv = svd3(n.correlations());
  EXPECT_NEAR(sv(0), 0.8, 1e-12);
  EXPECT_NEAR(sv(1), 0.8, 1e-12);
  EXPECT_THROW(add_isotropic_noise(s, 1.5), Error);
}

TEST(States, NoiseComposes) {
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_pure_state(rng);
    const double p = std::uniform_real_distribution<double>(0, 1)(rng);
    const double q = std::uniform_real_distribution<double>(0, 1)(rng);
    const auto twice = add_isotropic_noise(add_isotropic_noise(s, p), q);
    EXPECT_LT((twice.theta() - add_isotropic_noise(s, p * q).theta()).norm(), 1e-12);
    // Oracle: the mixture p rho + (1-p) 1/4 at the density level.
    const oracle::Mat4c rho =
        p * oracle::density_of(s.theta()) + (1 - p) * 0.25 * oracle::Mat4c::Identity();
    EXPECT_LT((oracle::theta_of(rho) - add_isotropic_noise(s, p).theta()).norm(), 1e-12);
  }
}

TEST(States, PauliProducts) {
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const auto lib = detail::pauli_product<double>(mu, nu);
      const auto ref = oracle::kron(oracle::sigma(mu), oracle::sigma(nu));
      EXPECT_LT((lib - ref).norm(), 1e-15);
    }
}
