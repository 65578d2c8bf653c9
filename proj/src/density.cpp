#include "pcd/density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace pcd {
namespace {

constexpr double kWeightSumTolerance = 1e-9;
constexpr double kSymmetryTolerance = 1e-12;

void require_finite(const Eigen::MatrixXd& m, const std::string& what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(what + " must be finite");
  }
}

}  // namespace

Eigen::VectorXd normalize_weights(Eigen::VectorXd weights, const std::string& what) {
  if (weights.size() == 0) {
    throw std::invalid_argument(what + " must not be empty");
  }
  if (!weights.allFinite()) {
    throw std::invalid_argument(what + " must be finite");
  }
  if ((weights.array() <= 0.0).any()) {
    throw std::invalid_argument(what + " must be strictly positive");
  }
  const double sum = weights.sum();
  if (std::abs(sum - 1.0) >= kWeightSumTolerance) {
    throw std::invalid_argument(what + " must sum to 1 (got " + std::to_string(sum) + ")");
  }
  if (sum != 1.0) {
    weights /= sum;
  }
  return weights;
}

GaussianMixture::GaussianMixture(std::vector<GaussianComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("mixture must have at least one component");
  }
  dimension_ = static_cast<int>(components_[0].mean.size());
  if (dimension_ < 1) {
    throw std::invalid_argument("component means must have dimension >= 1");
  }
  Eigen::VectorXd w(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) {
    w[static_cast<Eigen::Index>(i)] = components_[i].weight;
  }
  w = normalize_weights(std::move(w), "mixture weights");
  factors_.reserve(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) {
    auto& c = components_[i];
    c.weight = w[static_cast<Eigen::Index>(i)];
    if (c.mean.size() != dimension_) {
      throw std::invalid_argument("component means must share a common dimension");
    }
    require_finite(c.mean, "component mean");
    if (c.covariance.rows() != dimension_ || c.covariance.cols() != dimension_) {
      throw std::invalid_argument("covariance matrix must match the mean dimension");
    }
    require_finite(c.covariance, "covariance matrix");
    const double asym = (c.covariance - c.covariance.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTolerance) {
      throw std::invalid_argument("covariance matrix must be symmetric");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(c.covariance);
    if (llt.info() != Eigen::Success) {
      throw std::invalid_argument("covariance matrix is not positive definite");
    }
    factors_.push_back(llt.matrixL());
  }
}

double eval_pdf(const GaussianMixture& gm, const Eigen::VectorXd& x) {
  const int n = gm.dimension();
  if (x.size() != n) {
    throw std::invalid_argument("eval_pdf: point dimension mismatch");
  }
  const double base = std::pow(2.0 * std::numbers::pi, -0.5 * n);
  double total = 0.0;
  for (int i = 0; i < gm.component_count(); ++i) {
    const auto& c = gm.component(i);
    const Eigen::MatrixXd& a = gm.cholesky_factor(i);
    const Eigen::VectorXd z =
        a.triangularView<Eigen::Lower>().solve(x - c.mean);
    const double det_root = a.diagonal().prod();
    total += c.weight * base / det_root * std::exp(-0.5 * z.squaredNorm());
  }
  return total;
}

DiracMixture::DiracMixture(Eigen::MatrixXd locations, Eigen::VectorXd weights)
    : locations_(std::move(locations)) {
  if (locations_.rows() < 1 || locations_.cols() < 1) {
    throw std::invalid_argument("sample locations must be a nonempty matrix");
  }
  if (!locations_.allFinite()) {
    throw std::invalid_argument("sample locations must be finite");
  }
  if (weights.size() != locations_.cols()) {
    throw std::invalid_argument("sample weights must match the location count");
  }
  weights_ = normalize_weights(std::move(weights), "sample weights");
}

DiracMixture DiracMixture::equal_weights(Eigen::MatrixXd locations) {
  const Eigen::Index l = locations.cols();
  return DiracMixture(std::move(locations),
                      Eigen::VectorXd::Constant(l, 1.0 / static_cast<double>(l)));
}

Moments mixture_moments(const GaussianMixture& gm) {
  const int n = gm.dimension();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
  for (const auto& c : gm.components()) {
    mean += c.weight * c.mean;
  }
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  for (const auto& c : gm.components()) {
    const Eigen::VectorXd d = c.mean - mean;
    cov += c.weight * (c.covariance + d * d.transpose());
  }
  cov = 0.5 * (cov + cov.transpose()).eval();
  return {std::move(mean), std::move(cov)};
}

Moments dirac_moments(const DiracMixture& dm) {
  const int n = dm.dimension();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < dm.count(); ++i) {
    mean += dm.weights()[i] * dm.locations().col(i);
  }
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < dm.count(); ++i) {
    const Eigen::VectorXd d = dm.locations().col(i) - mean;
    // Evaluate the outer product before scaling; folding the weight into one
    // factor would break the exact symmetry of the result.
    const Eigen::MatrixXd outer = d * d.transpose();
    cov += dm.weights()[i] * outer;
  }
  return {std::move(mean), std::move(cov)};
}

}  // namespace pcd
