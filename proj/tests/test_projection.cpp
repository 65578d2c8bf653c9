#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pcd/density.hpp"
#include "pcd/projection.hpp"
#include "pcd/sphere.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

TEST_CASE("directions are normalized on construction", "[projection]") {
  Eigen::VectorXd v(2);
  v << 3.0, 4.0;
  const pcd::Direction dir(v);
  REQUIRE_THAT(dir.vec()[0], WithinAbs(0.6, 1e-15));
  REQUIRE_THAT(dir.vec()[1], WithinAbs(0.8, 1e-15));
  REQUIRE_THAT(dir.vec().norm(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("near-zero direction vectors are rejected", "[projection]") {
  REQUIRE_THROWS_WITH(pcd::Direction(Eigen::VectorXd::Zero(2)),
                      ContainsSubstring("norm"));
  Eigen::VectorXd tiny(3);
  tiny << 1e-13, 0.0, 0.0;
  REQUIRE_THROWS_AS(pcd::Direction(tiny), std::invalid_argument);
}

TEST_CASE("projecting a Gaussian gives the directional mean and deviation", "[projection]") {
  Eigen::VectorXd mean(2);
  mean << 2.0, 5.0;
  Eigen::VectorXd axis(2);
  axis << 1.0, 0.0;
  const auto p = pcd::project_gaussian(mean, Eigen::MatrixXd::Identity(2, 2),
                                       pcd::Direction(axis));
  REQUIRE(p.mean == 2.0);
  REQUIRE(p.sigma == 1.0);

  Eigen::MatrixXd cov(2, 2);
  cov << 3.0, 1.5, 1.5, 3.0;
  Eigen::VectorXd diag(2);
  diag << -1.0, 1.0;
  const auto q = pcd::project_gaussian(Eigen::VectorXd::Zero(2), cov,
                                       pcd::Direction(diag));
  REQUIRE_THAT(q.mean, WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(q.sigma, WithinAbs(std::sqrt(1.5), 1e-15));

  Eigen::MatrixXd aniso(2, 2);
  aniso << 4.0, 0.0, 0.0, 0.25;
  Eigen::VectorXd second(2);
  second << 0.0, 1.0;
  const auto r = pcd::project_gaussian(mean, aniso, pcd::Direction(second));
  REQUIRE_THAT(r.mean, WithinAbs(5.0, 1e-15));
  REQUIRE_THAT(r.sigma, WithinAbs(0.5, 1e-15));
}

TEST_CASE("projecting a mixture keeps the weights and maps each component", "[projection]") {
  Eigen::VectorXd m1(2), m2(2);
  m1 << -0.7, 0.0;
  m2 << 0.7, 0.0;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2, 2);
  const pcd::GaussianMixture gm({{0.5, m1, eye}, {0.5, m2, eye}});

  Eigen::VectorXd vertical(2);
  vertical << 0.0, 1.0;
  const pcd::ProjectedMixture1D onto_y =
      pcd::project_gaussian_mixture(gm, pcd::Direction(vertical));
  REQUIRE(onto_y.components().size() == 2);
  for (const auto& c : onto_y.components()) {
    REQUIRE(c.weight == 0.5);
    REQUIRE_THAT(c.mean, WithinAbs(0.0, 1e-15));
    REQUIRE(c.sigma == 1.0);
  }

  Eigen::VectorXd horizontal(2);
  horizontal << 1.0, 0.0;
  const pcd::ProjectedMixture1D onto_x =
      pcd::project_gaussian_mixture(gm, pcd::Direction(horizontal));
  REQUIRE_THAT(onto_x.components()[0].mean, WithinAbs(-0.7, 1e-15));
  REQUIRE_THAT(onto_x.components()[1].mean, WithinAbs(0.7, 1e-15));
  REQUIRE(onto_x.min_mean() == -0.7);
  REQUIRE(onto_x.max_mean() == 0.7);
  REQUIRE(onto_x.max_sigma() == 1.0);
  REQUIRE_THAT(onto_x.weighted_mean_sigma(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("projecting points matches per-point dot products exactly", "[projection]") {
  pcd::Rng rng(7);
  Eigen::MatrixXd loc(3, 6);
  for (int i = 0; i < loc.size(); ++i) {
    loc(i % 3, i / 3) = rng.normal();
  }
  Eigen::VectorXd raw(3);
  raw << 0.3, -1.2, 0.8;
  const pcd::Direction dir(raw);
  const pcd::DiracMixture dm = pcd::DiracMixture::equal_weights(loc);
  const Eigen::VectorXd r = pcd::project_dirac_mixture(dm, dir);
  REQUIRE(r.size() == 6);
  for (int i = 0; i < 6; ++i) {
    REQUIRE(r[i] == dir.vec().dot(loc.col(i)));
  }
}

TEST_CASE("projected pdf reproduces normal density values", "[projection]") {
  const pcd::ProjectedMixture1D std_normal = pcd::ProjectedMixture1D::standard_normal();
  REQUIRE_THAT(pcd::projected_pdf(std_normal, 0.0),
               WithinAbs(0.39894228040143267794, 1e-16));
  REQUIRE_THAT(pcd::projected_pdf(std_normal, 1.0),
               WithinAbs(0.2419707245191433498, 1e-16));

  const pcd::ProjectedMixture1D pair({{0.5, -0.7, 1.0}, {0.5, 0.7, 1.0}});
  REQUIRE_THAT(pcd::projected_pdf(pair, 0.0),
               WithinAbs(0.31225393336676125711, 1e-15));
}

TEST_CASE("projected cdf hits exact anchor values", "[projection]") {
  const pcd::ProjectedMixture1D std_normal = pcd::ProjectedMixture1D::standard_normal();
  REQUIRE(pcd::projected_cdf(std_normal, 0.0) == 0.5);
  REQUIRE_THAT(pcd::projected_cdf(std_normal, 1.0),
               WithinAbs(0.84134474606854294859, 1e-15));
  REQUIRE_THAT(pcd::projected_cdf(std_normal, 40.0), WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(pcd::projected_cdf(std_normal, -40.0), WithinAbs(0.0, 1e-12));

  const pcd::ProjectedMixture1D pair({{0.5, -0.7, 1.0}, {0.5, 0.7, 1.0}});
  REQUIRE(pcd::projected_cdf(pair, 0.0) == 0.5);
}

TEST_CASE("projected pdf integrates to 1", "[projection]") {
  const pcd::ProjectedMixture1D pm({{0.3, -2.0, 0.5}, {0.7, 1.0, 1.5}});
  const double lo = -2.0 - 10.0 * 1.5;
  const double hi = 1.0 + 10.0 * 1.5;
  const int n = 400000;
  const double h = (hi - lo) / n;
  double sum = 0.5 * (pcd::projected_pdf(pm, lo) + pcd::projected_pdf(pm, hi));
  for (int i = 1; i < n; ++i) {
    sum += pcd::projected_pdf(pm, lo + i * h);
  }
  REQUIRE_THAT(h * sum, WithinAbs(1.0, 1e-8));
}

TEST_CASE("projected pdf is the derivative of the projected cdf", "[projection]") {
  const pcd::ProjectedMixture1D pm({{0.25, -1.0, 0.4}, {0.5, 0.2, 1.0}, {0.25, 2.0, 0.7}});
  pcd::Rng rng(99);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const double t = -4.0 + 8.0 * rng.uniform();
    const double fd =
        (pcd::projected_cdf(pm, t + h) - pcd::projected_cdf(pm, t - h)) / (2.0 * h);
    REQUIRE_THAT(pcd::projected_pdf(pm, t), WithinAbs(fd, 1e-6));
  }
}

TEST_CASE("projection commutes with affine pushforward of the mean", "[projection]") {
  pcd::Rng rng(3);
  Eigen::VectorXd mean(3), shift(3), raw(3);
  Eigen::MatrixXd cov(3, 3);
  cov << 2.0, 0.4, 0.1,
         0.4, 1.0, -0.3,
         0.1, -0.3, 1.5;
  for (int i = 0; i < 3; ++i) {
    mean[i] = rng.normal();
    shift[i] = rng.normal();
    raw[i] = rng.normal();
  }
  const pcd::Direction dir(raw);
  const auto base = pcd::project_gaussian(mean, cov, dir);
  const auto moved = pcd::project_gaussian(mean + shift, cov, dir);
  REQUIRE_THAT(moved.mean - base.mean, WithinAbs(dir.vec().dot(shift), 1e-12));
  REQUIRE(moved.sigma == base.sigma);
}

TEST_CASE("one-dimensional projected components reject nonpositive sigma", "[projection]") {
  REQUIRE_THROWS_AS(pcd::ProjectedMixture1D({{1.0, 0.0, 0.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(pcd::ProjectedMixture1D({{1.0, 0.0, -1.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(pcd::ProjectedMixture1D({}), std::invalid_argument);
}
