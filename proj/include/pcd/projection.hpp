#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pcd/density.hpp"

namespace pcd {

// Unit vector on the hypersphere. Construction normalizes the input and
// rejects vectors with norm below 1e-12.
class Direction {
 public:
  explicit Direction(Eigen::VectorXd u);

  // Exact negation. The result is already unit length, so no renormalization
  // takes place and flipping twice restores the original bits.
  Direction flipped() const;

  int dimension() const { return static_cast<int>(u_.size()); }
  const Eigen::VectorXd& vec() const { return u_; }

 private:
  struct Normalized {};
  Direction(Eigen::VectorXd u, Normalized) : u_(std::move(u)) {}

  Eigen::VectorXd u_;
};

struct ProjectedGaussian {
  double mean = 0.0;
  double sigma = 0.0;
};

struct ProjectedComponent {
  double weight = 0.0;
  double mean = 0.0;
  double sigma = 0.0;
};

// One-dimensional Gaussian mixture produced by projecting a multivariate one
// onto a direction.
class ProjectedMixture1D {
 public:
  explicit ProjectedMixture1D(std::vector<ProjectedComponent> components);
  static ProjectedMixture1D standard_normal();

  int component_count() const { return static_cast<int>(components_.size()); }
  const std::vector<ProjectedComponent>& components() const { return components_; }

  double min_mean() const;
  double max_mean() const;
  double min_sigma() const;
  double max_sigma() const;
  // Weighted mean of the component standard deviations (the step-cap scale).
  double weighted_mean_sigma() const;

 private:
  std::vector<ProjectedComponent> components_;
};

ProjectedGaussian project_gaussian(const Eigen::VectorXd& mean,
                                   const Eigen::MatrixXd& cov,
                                   const Direction& dir);

ProjectedMixture1D project_gaussian_mixture(const GaussianMixture& gm,
                                            const Direction& dir);

// Projected sample locations, one dot product per column of dm.locations().
Eigen::VectorXd project_dirac_mixture(const DiracMixture& dm, const Direction& dir);

double projected_pdf(const ProjectedMixture1D& pm, double r);
double projected_cdf(const ProjectedMixture1D& pm, double r);

}  // namespace pcd
