#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "bellrecycle/svd3.hpp"

using namespace bellrecycle;

TEST(Svd3, Examples) {
  EXPECT_TRUE(svd3(Eigen::Matrix3d::Identity()).isApprox(Eigen::Vector3d(1, 1, 1)));
  Eigen::Matrix3d d = Eigen::Matrix3d::Zero();
  d.diagonal() << 3, -2, 1;
  EXPECT_LT((svd3(d) - Eigen::Vector3d(3, 2, 1)).norm(), 1e-14);
  EXPECT_EQ(svd3(Eigen::Matrix3d::Zero()), Eigen::Vector3d::Zero());
}

TEST(Svd3, MatchesSymmetricEigensolver) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    Eigen::Matrix3d m;
    for (int k = 0; k < 9; ++k) m(k / 3, k % 3) = n(rng);
    if (i % 5 == 0) m.col(2) = 0.3 * m.col(0) - 2.0 * m.col(1);  // rank deficient
    const Eigen::Vector3d s = svd3(m);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m.transpose() * m);
    // Eigenvalues of M^T M carry absolute error ~eps |M|^2, so compare squares.
    Eigen::Vector3d ref = es.eigenvalues();
    std::sort(ref.data(), ref.data() + 3, std::greater<>());
    EXPECT_LT((s.cwiseAbs2() - ref).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, ref(0)));
    EXPECT_GE(s(0), s(1));
    EXPECT_GE(s(1), s(2));
    EXPECT_GE(s(2), 0.0);
    EXPECT_NEAR(m.squaredNorm(), s.squaredNorm(), 1e-10 * m.squaredNorm());
  }
}

TEST(Svd3, MatchesJacobiSvd) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    Eigen::Matrix3d m;
    for (int k = 0; k < 9; ++k) m(k / 3, k % 3) = u(rng);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m);
    EXPECT_LT((svd3(m) - svd.singularValues()).norm(), 1e-12);
  }
}
