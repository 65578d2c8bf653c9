#include "pcd/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "pcd/univariate.hpp"

namespace pcd {
namespace {

constexpr std::uint64_t kInitSeedSalt = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kEvalSeedSalt = 0xD1B54A32D192ED03ull;
constexpr int kEvalDirectionCount = 256;

// Flips the direction so its first nonzero component is positive. Negation is
// exact, so u and -u canonicalize to bit-identical vectors.
Direction canonical_direction(const Direction& dir) {
  const Eigen::VectorXd& u = dir.vec();
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u[i] != 0.0) {
      return u[i] < 0.0 ? dir.flipped() : dir;
    }
  }
  return dir;
}

struct DirectionalResult {
  Eigen::MatrixXd delta;
  bool reordered = false;
};

std::vector<int> ranking(const Eigen::VectorXd& x) {
  std::vector<int> order(static_cast<std::size_t>(x.size()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&x](int a, int b) { return x[a] < x[b]; });
  return order;
}

DirectionalResult directional_result(const GaussianMixture& gm, const DiracMixture& dm,
                                     const Direction& dir) {
  const Direction canon = canonical_direction(dir);
  const ProjectedMixture1D pm = project_gaussian_mixture(gm, canon);
  const Eigen::VectorXd r = project_dirac_mixture(dm, canon);
  const Eigen::VectorXd delta_r =
      newton_step_1d(pm, Samples1D(r, dm.weights()));
  DirectionalResult out;
  out.delta = backproject(delta_r, canon);
  out.reordered = ranking(r) != ranking(r + delta_r);
  return out;
}

int resolve_thread_count(int configured, int direction_count) {
  int threads = configured;
  if (threads == 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  return std::min(threads, direction_count);
}

// Runs fn(k) for k in [0, count), possibly on a thread pool. Results are
// written by index, so the caller's reduction order is independent of the
// execution interleaving.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (int k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&next, count, &fn] {
      for (int k = next.fetch_add(1); k < count; k = next.fetch_add(1)) {
        fn(k);
      }
    });
  }
  for (auto& worker : pool) worker.join();
}

Eigen::VectorXd resolved_weights(const OptimizerConfig& config) {
  if (config.sample_weights.size() == 0) {
    return Eigen::VectorXd::Constant(config.sample_count,
                                     1.0 / static_cast<double>(config.sample_count));
  }
  if (config.sample_weights.size() != config.sample_count) {
    throw std::invalid_argument("sample weights must match the sample count");
  }
  return normalize_weights(config.sample_weights, "sample weights");
}

void validate(const OptimizerConfig& config, int dimension) {
  if (config.sample_count < 1) {
    throw std::invalid_argument("sample count must be at least 1");
  }
  if (!(config.step_size > 0.0) || config.step_size > 1.0) {
    throw std::invalid_argument("step size must lie in (0, 1]");
  }
  if (config.max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be at least 1");
  }
  if (config.direction_count < 0) {
    throw std::invalid_argument("direction count must be nonnegative");
  }
  if (config.threads < 0) {
    throw std::invalid_argument("thread count must be nonnegative");
  }
  if (config.scheme == DirectionKind::Equiangular2D && dimension != 2) {
    throw std::invalid_argument("equiangular directions require dimension 2");
  }
}

}  // namespace

Eigen::MatrixXd backproject(const Eigen::VectorXd& delta_r, const Direction& dir) {
  return dir.vec() * delta_r.transpose();
}

Eigen::MatrixXd directional_update(const GaussianMixture& gm, const DiracMixture& dm,
                                   const Direction& dir) {
  return directional_result(gm, dm, dir).delta;
}

Eigen::MatrixXd combined_update(const GaussianMixture& gm, const DiracMixture& dm,
                                const std::vector<Direction>& directions,
                                double step_size) {
  if (directions.empty()) {
    throw std::invalid_argument("combined_update needs at least one direction");
  }
  const double scale = step_size / static_cast<double>(directions.size());
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(dm.dimension(), dm.count());
  for (std::size_t k = 0; k < directions.size(); ++k) {
    const Eigen::MatrixXd delta = directional_update(gm, dm, directions[k]);
    if (!delta.allFinite()) {
      throw std::runtime_error("non-finite directional update (direction " +
                               std::to_string(k) + ")");
    }
    total += scale * delta;
  }
  return total;
}

double distance_nd_estimate(const GaussianMixture& gm, const DiracMixture& dm,
                            const std::vector<Direction>& directions) {
  if (directions.empty()) {
    throw std::invalid_argument("distance estimate needs at least one direction");
  }
  double total = 0.0;
  for (const Direction& dir : directions) {
    const ProjectedMixture1D pm = project_gaussian_mixture(gm, dir);
    const Eigen::VectorXd r = project_dirac_mixture(dm, dir);
    total += distance_1d(pm, Samples1D(r, dm.weights()));
  }
  return total / static_cast<double>(directions.size());
}

Eigen::MatrixXd initial_locations(const GaussianMixture& gm,
                                  const OptimizerConfig& config) {
  const int n = gm.dimension();
  const int l = config.sample_count;
  if (l < 1) {
    throw std::invalid_argument("sample count must be at least 1");
  }
  switch (config.init.kind) {
    case InitKind::ExplicitLocations: {
      const Eigen::MatrixXd& x = config.init.locations;
      if (x.rows() != n || x.cols() != l) {
        throw std::invalid_argument("explicit initial locations must be N x L");
      }
      if (!x.allFinite()) {
        throw std::invalid_argument("explicit initial locations must be finite");
      }
      return x;
    }
    case InitKind::DrawFromDensity: {
      Rng rng(config.seed ^ kInitSeedSalt);
      Eigen::MatrixXd x(n, l);
      for (int i = 0; i < l; ++i) {
        const double pick = rng.uniform();
        int comp = gm.component_count() - 1;
        double cum = 0.0;
        for (int m = 0; m < gm.component_count(); ++m) {
          cum += gm.component(m).weight;
          if (pick < cum) {
            comp = m;
            break;
          }
        }
        Eigen::VectorXd z(n);
        for (int d = 0; d < n; ++d) z[d] = rng.normal();
        x.col(i) = gm.component(comp).mean + gm.cholesky_factor(comp) * z;
      }
      return x;
    }
    case InitKind::PrincipalAxes: {
      if (gm.component_count() != 1) {
        throw std::invalid_argument(
            "principal-axes initialization is defined for a single Gaussian");
      }
      const auto& c = gm.component(0);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(c.covariance);
      if (eigen.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition of the covariance failed");
      }
      Eigen::MatrixXd x(n, l);
      int filled = 0;
      if (l % 2 == 1) {
        x.col(filled++) = c.mean;
      }
      // Symmetric pairs at half-sigma multiples along the eigenvectors,
      // widest axis first.
      for (int ring = 1; filled < l; ++ring) {
        for (int axis = n - 1; axis >= 0 && filled < l; --axis) {
          const Eigen::VectorXd offset = 0.5 * ring *
                                         std::sqrt(eigen.eigenvalues()[axis]) *
                                         eigen.eigenvectors().col(axis);
          x.col(filled++) = c.mean + offset;
          if (filled < l) {
            x.col(filled++) = c.mean - offset;
          }
        }
      }
      return x;
    }
  }
  throw std::logic_error("unknown initialization policy");
}

ApproximationResult approximate(const GaussianMixture& gm, const OptimizerConfig& config) {
  const int n = gm.dimension();
  validate(config, n);
  const int l = config.sample_count;
  const int k = config.direction_count > 0 ? config.direction_count : 10 * n;
  const Eigen::VectorXd weights = resolved_weights(config);
  const double threshold =
      config.threshold > 0.0
          ? config.threshold
          : 1e-6 * std::sqrt(mixture_moments(gm).covariance.trace());
  const DirectionScheme scheme{config.scheme, k, config.seed};
  const int threads = resolve_thread_count(config.threads, k);

  std::vector<Direction> eval_set;
  eval_set.reserve(kEvalDirectionCount);
  {
    Rng rng(config.seed ^ kEvalSeedSalt);
    for (int i = 0; i < kEvalDirectionCount; ++i) {
      eval_set.push_back(random_unit_vector(rng, n));
    }
  }

  Eigen::MatrixXd x = initial_locations(gm, config);
  RunDiagnostics diag;
  diag.initial_distance = distance_nd_estimate(gm, DiracMixture(x, weights), eval_set);
  diag.max_change_history.reserve(static_cast<std::size_t>(config.max_iterations));

  const double scale = config.step_size / static_cast<double>(k);
  for (int t = 0; t < config.max_iterations; ++t) {
    const std::vector<Direction> directions = iteration_directions(scheme, n, t);
    const DiracMixture snapshot(x, weights);
    std::vector<DirectionalResult> results(directions.size());
    parallel_for(static_cast<int>(directions.size()), threads, [&](int idx) {
      results[static_cast<std::size_t>(idx)] =
          directional_result(gm, snapshot, directions[static_cast<std::size_t>(idx)]);
    });

    Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(n, l);
    for (std::size_t idx = 0; idx < results.size(); ++idx) {
      if (!results[idx].delta.allFinite()) {
        throw std::runtime_error("non-finite directional update (iteration " +
                                 std::to_string(t) + ", direction " +
                                 std::to_string(idx) + ")");
      }
      delta += scale * results[idx].delta;
      if (results[idx].reordered) {
        ++diag.reorder_events;
      }
    }

    x += delta;
    const double max_change = delta.colwise().norm().maxCoeff();
    diag.max_change_history.push_back(max_change);
    diag.iterations = t + 1;
    if (max_change < threshold) {
      diag.converged = true;
      break;
    }
  }

  DiracMixture result(std::move(x), weights);
  diag.final_distance = distance_nd_estimate(gm, result, eval_set);
  return {std::move(result), std::move(diag)};
}

}  // namespace pcd
