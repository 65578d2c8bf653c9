#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pcd/density.hpp"
#include "pcd/sphere.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

pcd::GaussianMixture single_2d() {
  Eigen::VectorXd mean(2);
  mean << 0.0, 0.0;
  return pcd::GaussianMixture({{1.0, mean, Eigen::MatrixXd::Identity(2, 2)}});
}

pcd::GaussianMixture symmetric_pair(double offset) {
  Eigen::VectorXd m1(2), m2(2);
  m1 << -offset, 0.0;
  m2 << offset, 0.0;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2, 2);
  return pcd::GaussianMixture({{0.5, m1, eye}, {0.5, m2, eye}});
}

}  // namespace

TEST_CASE("pdf of a standard normal peaks at 1/sqrt(2 pi)", "[density]") {
  Eigen::VectorXd mean(1), x(1);
  mean << 0.0;
  x << 0.0;
  const pcd::GaussianMixture gm({{1.0, mean, Eigen::MatrixXd::Identity(1, 1)}});
  REQUIRE_THAT(pcd::eval_pdf(gm, x),
               WithinAbs(0.39894228040143267794, 1e-15));
}

TEST_CASE("pdf of a 2D identity-covariance Gaussian peaks at 1/(2 pi)", "[density]") {
  const pcd::GaussianMixture gm = single_2d();
  Eigen::VectorXd x(2);
  x << 0.0, 0.0;
  REQUIRE_THAT(pcd::eval_pdf(gm, x),
               WithinAbs(0.15915494309189533577, 1e-15));
}

TEST_CASE("pdf of an equal pair at +-1 evaluates to phi(1) at the origin", "[density]") {
  Eigen::VectorXd m1(1), m2(1), x(1);
  m1 << -1.0;
  m2 << 1.0;
  x << 0.0;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(1, 1);
  const pcd::GaussianMixture gm({{0.5, m1, eye}, {0.5, m2, eye}});
  REQUIRE_THAT(pcd::eval_pdf(gm, x), WithinAbs(0.2419707245191433498, 1e-15));
}

TEST_CASE("pdf rejects points of the wrong dimension", "[density]") {
  const pcd::GaussianMixture gm = single_2d();
  REQUIRE_THROWS_AS(pcd::eval_pdf(gm, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST_CASE("pdf integrates to 1 over a wide interval", "[density]") {
  Eigen::VectorXd m1(1), m2(1);
  m1 << -1.0;
  m2 << 2.0;
  Eigen::MatrixXd c1(1, 1), c2(1, 1);
  c1 << 0.5;
  c2 << 2.0;
  const pcd::GaussianMixture gm({{0.3, m1, c1}, {0.7, m2, c2}});
  const double sigma_max = std::sqrt(2.0);
  const double lo = -1.0 - 10.0 * sigma_max;
  const double hi = 2.0 + 10.0 * sigma_max;
  const int n = 1000000;
  const double h = (hi - lo) / n;
  Eigen::VectorXd point(1);
  point << lo;
  double sum = 0.5 * pcd::eval_pdf(gm, point);
  point << hi;
  sum += 0.5 * pcd::eval_pdf(gm, point);
  for (int i = 1; i < n; ++i) {
    point << lo + i * h;
    sum += pcd::eval_pdf(gm, point);
  }
  REQUIRE_THAT(h * sum, WithinAbs(1.0, 1e-8));
}

TEST_CASE("moments of a single component are the component parameters", "[density]") {
  Eigen::VectorXd mean(3);
  mean << 1.0, -2.0, 0.5;
  Eigen::MatrixXd cov(3, 3);
  cov << 2.0, 0.3, 0.1,
         0.3, 1.5, -0.2,
         0.1, -0.2, 0.8;
  const pcd::GaussianMixture gm({{1.0, mean, cov}});
  const pcd::Moments m = pcd::mixture_moments(gm);
  REQUIRE(m.mean == mean);
  REQUIRE(m.covariance == cov);
}

TEST_CASE("moments of a symmetric mean pair follow the total-variance rule", "[density]") {
  const pcd::Moments m = pcd::mixture_moments(symmetric_pair(1.4));
  REQUIRE_THAT(m.mean[0], WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(m.mean[1], WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(m.covariance(0, 0), WithinAbs(2.96, 1e-12));
  REQUIRE_THAT(m.covariance(1, 1), WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(m.covariance(0, 1), WithinAbs(0.0, 1e-15));
}

TEST_CASE("moments of mirrored correlated components cancel the off-diagonals", "[density]") {
  Eigen::MatrixXd c1(2, 2), c2(2, 2);
  c1 << 3.0, 1.5, 1.5, 3.0;
  c2 << 3.0, -1.5, -1.5, 3.0;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  const pcd::GaussianMixture gm({{0.5, zero, c1}, {0.5, zero, c2}});
  const pcd::Moments m = pcd::mixture_moments(gm);
  REQUIRE(m.mean == zero);
  REQUIRE_THAT(m.covariance(0, 0), WithinAbs(3.0, 1e-15));
  REQUIRE_THAT(m.covariance(1, 1), WithinAbs(3.0, 1e-15));
  REQUIRE_THAT(m.covariance(0, 1), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(m.covariance(1, 0), WithinAbs(0.0, 1e-15));
}

TEST_CASE("sample moments of one point are the point and a zero matrix", "[density]") {
  Eigen::MatrixXd loc(2, 1);
  loc << 1.5, -0.5;
  const pcd::DiracMixture dm = pcd::DiracMixture::equal_weights(loc);
  const pcd::Moments m = pcd::dirac_moments(dm);
  REQUIRE(m.mean == loc.col(0));
  REQUIRE(m.covariance == Eigen::MatrixXd::Zero(2, 2));
}

TEST_CASE("sample moments of an equal pair at +-a give a a^T", "[density]") {
  Eigen::MatrixXd loc(2, 2);
  loc << 1.0, -1.0,
         2.0, -2.0;
  const pcd::Moments m = pcd::dirac_moments(pcd::DiracMixture::equal_weights(loc));
  REQUIRE_THAT(m.mean.cwiseAbs().maxCoeff(), WithinAbs(0.0, 1e-15));
  Eigen::MatrixXd expected(2, 2);
  expected << 1.0, 2.0, 2.0, 4.0;
  REQUIRE_THAT((m.covariance - expected).cwiseAbs().maxCoeff(), WithinAbs(0.0, 1e-15));
}

TEST_CASE("sample moments of the four axis points give half the identity", "[density]") {
  Eigen::MatrixXd loc(2, 4);
  loc << 1.0, -1.0, 0.0, 0.0,
         0.0, 0.0, 1.0, -1.0;
  const pcd::Moments m = pcd::dirac_moments(pcd::DiracMixture::equal_weights(loc));
  REQUIRE_THAT(m.mean.cwiseAbs().maxCoeff(), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT((m.covariance - 0.5 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(),
               WithinAbs(0.0, 1e-15));
}

TEST_CASE("sample covariance is symmetric and positive semidefinite", "[density]") {
  pcd::Rng rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd loc(3, 8);
    for (int i = 0; i < loc.size(); ++i) {
      loc(i / 8, i % 8) = 2.0 * rng.normal();
    }
    Eigen::VectorXd w(8);
    for (int i = 0; i < 8; ++i) {
      w[i] = 0.5 + rng.uniform();
    }
    w /= w.sum();
    const pcd::Moments m = pcd::dirac_moments(pcd::DiracMixture(loc, w));
    REQUIRE(m.covariance == m.covariance.transpose().eval());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(m.covariance);
    REQUIRE(eigen.eigenvalues().minCoeff() >= -1e-12);
  }
}

TEST_CASE("mixture construction enforces the weight rules", "[density]") {
  const Eigen::VectorXd mean = Eigen::VectorXd::Zero(1);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(1, 1);
  REQUIRE_THROWS_WITH(pcd::GaussianMixture({{0.6, mean, eye}, {0.6, mean, eye}}),
                      ContainsSubstring("sum to 1"));
  REQUIRE_THROWS_WITH(pcd::GaussianMixture({{-0.2, mean, eye}, {1.2, mean, eye}}),
                      ContainsSubstring("strictly positive"));

  // Serialization round-off below 1e-9 is renormalized; larger sums are not.
  const pcd::GaussianMixture renormalized(
      {{0.5, mean, eye}, {0.5 + 4e-10, mean, eye}});
  double sum = 0.0;
  for (const auto& c : renormalized.components()) {
    sum += c.weight;
  }
  REQUIRE_THAT(sum, WithinAbs(1.0, 1e-15));
  REQUIRE_THROWS_AS(pcd::GaussianMixture({{0.5, mean, eye}, {0.5 + 2e-9, mean, eye}}),
                    std::invalid_argument);
}

TEST_CASE("mixture construction validates covariance matrices", "[density]") {
  const Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  REQUIRE_THROWS_WITH(pcd::GaussianMixture({{1.0, mean, indefinite}}),
                      ContainsSubstring("not positive definite"));

  Eigen::MatrixXd asymmetric(2, 2);
  asymmetric << 1.0, 0.2, 0.1, 1.0;
  REQUIRE_THROWS_WITH(pcd::GaussianMixture({{1.0, mean, asymmetric}}),
                      ContainsSubstring("symmetric"));

  REQUIRE_THROWS_AS(pcd::GaussianMixture({{1.0, mean, Eigen::MatrixXd::Zero(2, 2)}}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(pcd::GaussianMixture({{1.0, mean, Eigen::MatrixXd::Identity(3, 3)}}),
                    std::invalid_argument);
}

TEST_CASE("point set construction validates shapes and weights", "[density]") {
  REQUIRE_THROWS_AS(pcd::DiracMixture(Eigen::MatrixXd::Zero(2, 3), Eigen::VectorXd::Ones(2)),
                    std::invalid_argument);
  Eigen::MatrixXd bad(1, 1);
  bad << std::numeric_limits<double>::quiet_NaN();
  REQUIRE_THROWS_AS(pcd::DiracMixture(bad, Eigen::VectorXd::Ones(1)),
                    std::invalid_argument);
  const pcd::DiracMixture dm = pcd::DiracMixture::equal_weights(Eigen::MatrixXd::Zero(2, 4));
  REQUIRE(dm.count() == 4);
  REQUIRE(dm.dimension() == 2);
  REQUIRE_THAT(dm.weights().sum(), WithinAbs(1.0, 1e-15));
}
