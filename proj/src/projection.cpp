#include "pcd/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "pcd/normal.hpp"

namespace pcd {

Direction::Direction(Eigen::VectorXd u) : u_(std::move(u)) {
  if (u_.size() < 1 || !u_.allFinite()) {
    throw std::invalid_argument("direction must be a finite nonempty vector");
  }
  const double norm = u_.norm();
  if (norm < 1e-12) {
    throw std::invalid_argument("direction vector norm is below 1e-12");
  }
  u_ /= norm;
}

Direction Direction::flipped() const { return Direction(-u_, Normalized{}); }

ProjectedMixture1D::ProjectedMixture1D(std::vector<ProjectedComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("projected mixture must have at least one component");
  }
  Eigen::VectorXd w(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) {
    w[static_cast<Eigen::Index>(i)] = components_[i].weight;
  }
  w = normalize_weights(std::move(w), "projected mixture weights");
  for (std::size_t i = 0; i < components_.size(); ++i) {
    auto& c = components_[i];
    c.weight = w[static_cast<Eigen::Index>(i)];
    if (!std::isfinite(c.mean) || !std::isfinite(c.sigma) || c.sigma <= 0.0) {
      throw std::invalid_argument("projected components need finite means and positive sigmas");
    }
  }
}

ProjectedMixture1D ProjectedMixture1D::standard_normal() {
  return ProjectedMixture1D({{1.0, 0.0, 1.0}});
}

double ProjectedMixture1D::min_mean() const {
  double v = components_[0].mean;
  for (const auto& c : components_) v = std::min(v, c.mean);
  return v;
}

double ProjectedMixture1D::max_mean() const {
  double v = components_[0].mean;
  for (const auto& c : components_) v = std::max(v, c.mean);
  return v;
}

double ProjectedMixture1D::min_sigma() const {
  double v = components_[0].sigma;
  for (const auto& c : components_) v = std::min(v, c.sigma);
  return v;
}

double ProjectedMixture1D::max_sigma() const {
  double v = components_[0].sigma;
  for (const auto& c : components_) v = std::max(v, c.sigma);
  return v;
}

double ProjectedMixture1D::weighted_mean_sigma() const {
  double v = 0.0;
  for (const auto& c : components_) v += c.weight * c.sigma;
  return v;
}

ProjectedGaussian project_gaussian(const Eigen::VectorXd& mean,
                                   const Eigen::MatrixXd& cov,
                                   const Direction& dir) {
  const Eigen::VectorXd& u = dir.vec();
  if (mean.size() != u.size() || cov.rows() != u.size() || cov.cols() != u.size()) {
    throw std::invalid_argument("project_gaussian: dimension mismatch");
  }
  const double variance = u.dot(cov * u);
  if (!(variance > 0.0)) {
    throw std::invalid_argument("projected variance must be positive");
  }
  return {u.dot(mean), std::sqrt(variance)};
}

ProjectedMixture1D project_gaussian_mixture(const GaussianMixture& gm,
                                            const Direction& dir) {
  if (gm.dimension() != dir.dimension()) {
    throw std::invalid_argument("project_gaussian_mixture: dimension mismatch");
  }
  std::vector<ProjectedComponent> out;
  out.reserve(gm.components().size());
  for (const auto& c : gm.components()) {
    const ProjectedGaussian p = project_gaussian(c.mean, c.covariance, dir);
    out.push_back({c.weight, p.mean, p.sigma});
  }
  return ProjectedMixture1D(std::move(out));
}

Eigen::VectorXd project_dirac_mixture(const DiracMixture& dm, const Direction& dir) {
  if (dm.dimension() != dir.dimension()) {
    throw std::invalid_argument("project_dirac_mixture: dimension mismatch");
  }
  const Eigen::VectorXd& u = dir.vec();
  Eigen::VectorXd r(dm.count());
  for (int i = 0; i < dm.count(); ++i) {
    r[i] = u.dot(dm.locations().col(i));
  }
  return r;
}

double projected_pdf(const ProjectedMixture1D& pm, double r) {
  double total = 0.0;
  for (const auto& c : pm.components()) {
    total += c.weight * normal_pdf((r - c.mean) / c.sigma) / c.sigma;
  }
  return total;
}

double projected_cdf(const ProjectedMixture1D& pm, double r) {
  double total = 0.0;
  for (const auto& c : pm.components()) {
    total += c.weight * normal_cdf((r - c.mean) / c.sigma);
  }
  return total;
}

}  // namespace pcd
