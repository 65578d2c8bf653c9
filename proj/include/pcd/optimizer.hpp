#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pcd/density.hpp"
#include "pcd/diagnostics.hpp"
#include "pcd/projection.hpp"
#include "pcd/sphere.hpp"

namespace pcd {

enum class InitKind {
  DrawFromDensity,    // L independent draws from the target density
  ExplicitLocations,  // user-supplied N x L matrix
  PrincipalAxes,      // mean plus symmetric points along covariance eigenvectors
};

struct InitPolicy {
  InitKind kind = InitKind::DrawFromDensity;
  Eigen::MatrixXd locations;  // consumed by ExplicitLocations only
};

struct OptimizerConfig {
  int sample_count = 1;
  int direction_count = 0;  // 0: defaults to 10 * dimension
  double step_size = 0.5;
  double threshold = 0.0;  // <= 0: defaults to 1e-6 * sqrt(trace of covariance)
  int max_iterations = 5000;
  DirectionKind scheme = DirectionKind::RandomGaussian;
  std::uint64_t seed = 0;
  InitPolicy init;
  Eigen::VectorXd sample_weights;  // empty: equal weights 1/L
  int threads = 1;                 // 0: hardware concurrency
};

// Maps a per-sample scalar change along `dir` back into state space:
// column i of the result is delta_r[i] * u.
Eigen::MatrixXd backproject(const Eigen::VectorXd& delta_r, const Direction& dir);

// One direction's Newton update: project both mixtures onto `dir`, take the
// capped per-sample Newton step in 1D, and backproject it. The direction sign
// is canonicalized internally (first nonzero component made positive), which
// makes the result for u and -u bit-identical.
Eigen::MatrixXd directional_update(const GaussianMixture& gm, const DiracMixture& dm,
                                   const Direction& dir);

// Average of the directional updates scaled by the step size, accumulated in
// direction-list order: sum_k (s/K) * update_k.
Eigen::MatrixXd combined_update(const GaussianMixture& gm, const DiracMixture& dm,
                                const std::vector<Direction>& directions,
                                double step_size);

// Mean over the direction set of the 1D CDF distance between the projected
// mixtures.
double distance_nd_estimate(const GaussianMixture& gm, const DiracMixture& dm,
                            const std::vector<Direction>& directions);

// Starting locations for the configured initialization policy.
Eigen::MatrixXd initial_locations(const GaussianMixture& gm,
                                  const OptimizerConfig& config);

struct ApproximationResult {
  DiracMixture samples;
  RunDiagnostics diagnostics;
};

// Full optimization loop: apply combined updates until the largest per-sample
// location change drops below the threshold or max_iterations is reached.
// Initial and final distances in the diagnostics are estimated on a fixed
// 256-direction evaluation set derived from the seed. Non-convergence is
// reported in the diagnostics; non-finite updates throw std::runtime_error
// naming the iteration and direction.
ApproximationResult approximate(const GaussianMixture& gm, const OptimizerConfig& config);

}  // namespace pcd
