#pragma once

#include <Eigen/Dense>

#include "pcd/diagnostics.hpp"
#include "pcd/projection.hpp"

namespace pcd {

// Weighted point set on the real line.
class Samples1D {
 public:
  Samples1D(Eigen::VectorXd locations, Eigen::VectorXd weights);
  static Samples1D equal_weights(Eigen::VectorXd locations);

  int count() const { return static_cast<int>(locations_.size()); }
  const Eigen::VectorXd& locations() const { return locations_; }
  const Eigen::VectorXd& weights() const { return weights_; }

 private:
  Eigen::VectorXd locations_;
  Eigen::VectorXd weights_;
};

// Step-function CDF of the sample set evaluated at the samples themselves.
// At sample i the step contributes half of w_i; exact location ties between
// distinct indices likewise contribute half of the tied weight.
Eigen::VectorXd ecdf_at_samples(const Samples1D& samples);

// Integral over the real line of the squared difference between the mixture
// CDF and the sample step CDF. The step CDF is constant between consecutive
// sorted samples, so each inter-sample panel (and the two tails, truncated
// ten sigma beyond the extremes of samples and component means, where the
// remaining mass contributes below 1e-12) is integrated by 16-point
// Gauss-Legendre quadrature on subpanels no longer than twice the smallest
// component sigma.
double distance_1d(const ProjectedMixture1D& mixture, const Samples1D& samples);

// Partial derivatives of distance_1d with respect to the sample locations.
Eigen::VectorXd gradient_1d(const ProjectedMixture1D& mixture, const Samples1D& samples);

// Diagonal of the second-derivative matrix; off-diagonal terms vanish.
Eigen::VectorXd hessian_diag_1d(const ProjectedMixture1D& mixture, const Samples1D& samples);

// Per-sample Newton step -(F(r_i) - ecdf_i) / pdf(r_i), with the denominator
// floored at 1e-12 and the step magnitude capped at three weighted-mean
// sigmas so tail samples with underflowed pdf still move a bounded amount.
Eigen::VectorXd newton_step_1d(const ProjectedMixture1D& mixture, const Samples1D& samples);

// Closed-form equal-weight solution for the standard normal: location i is
// sqrt(2) * erf_inv((2i - 1 - L) / L), strictly increasing and antisymmetric.
Eigen::VectorXd standard_normal_locations(int count);

// Default initialization: equal-weight samples at the quantile targets
// (2i - 1) / (2L), located by coarse bisection of the mixture CDF.
Samples1D quantile_init_1d(const ProjectedMixture1D& mixture, int count);

struct Solve1DOptions {
  double step_size = 1.0;
  // Nonpositive: defaults to 1e-10 * (range of component means + 6 max sigma).
  double threshold = 0.0;
  int max_iterations = 200;
};

struct Solve1DResult {
  Samples1D samples;
  RunDiagnostics diagnostics;
};

// Damped Newton iteration on the sample locations. Non-convergence within
// max_iterations is reported through diagnostics, not thrown.
Solve1DResult solve_1d(const ProjectedMixture1D& mixture, const Samples1D& init,
                       const Solve1DOptions& options = {});
Solve1DResult solve_1d(const ProjectedMixture1D& mixture, int count,
                       const Solve1DOptions& options = {});

}  // namespace pcd
