#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace pcd {

// Shared weight rule: entries must be finite and strictly positive; the vector
// is renormalized if its sum deviates from 1 by less than 1e-9 and rejected
// otherwise. `what` names the offending field in error messages.
Eigen::VectorXd normalize_weights(Eigen::VectorXd weights, const std::string& what);

struct GaussianComponent {
  double weight = 0.0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

// Weighted sum of Gaussian densities. Covariances are validated at
// construction by a Cholesky factorization, so every instance is usable in
// any projection direction. Immutable after construction.
class GaussianMixture {
 public:
  explicit GaussianMixture(std::vector<GaussianComponent> components);

  int dimension() const { return dimension_; }
  int component_count() const { return static_cast<int>(components_.size()); }
  const std::vector<GaussianComponent>& components() const { return components_; }
  const GaussianComponent& component(int i) const { return components_.at(i); }
  // Lower-triangular factor A of component i's covariance, C = A A^T.
  const Eigen::MatrixXd& cholesky_factor(int i) const { return factors_.at(i); }

 private:
  std::vector<GaussianComponent> components_;
  std::vector<Eigen::MatrixXd> factors_;
  int dimension_ = 0;
};

double eval_pdf(const GaussianMixture& gm, const Eigen::VectorXd& x);

// Weighted point mass set: locations are columns of an N x L matrix.
class DiracMixture {
 public:
  DiracMixture(Eigen::MatrixXd locations, Eigen::VectorXd weights);
  static DiracMixture equal_weights(Eigen::MatrixXd locations);

  int dimension() const { return static_cast<int>(locations_.rows()); }
  int count() const { return static_cast<int>(locations_.cols()); }
  const Eigen::MatrixXd& locations() const { return locations_; }
  const Eigen::VectorXd& weights() const { return weights_; }

 private:
  Eigen::MatrixXd locations_;
  Eigen::VectorXd weights_;
};

struct Moments {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

Moments mixture_moments(const GaussianMixture& gm);
Moments dirac_moments(const DiracMixture& dm);

}  // namespace pcd
