#include "pcd/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pcd/normal.hpp"

namespace pcd {
namespace {

constexpr double kPdfFloor = 1e-12;
constexpr double kStepCapSigmas = 3.0;
constexpr double kTailSigmas = 10.0;
// A Gauss-Legendre panel stays accurate while it spans at most about two
// standard deviations of the narrowest component.
constexpr double kMaxPanelSigmas = 2.0;
constexpr int kBisectionSteps = 20;

struct GaussNode {
  double x;
  double w;
};

constexpr GaussNode kGauss16[16] = {
    {-0.9894009349916499, 0.027152459411754037},
    {-0.9445750230732326, 0.062253523938647706},
    {-0.8656312023878318, 0.09515851168249259},
    {-0.755404408355003, 0.12462897125553403},
    {-0.6178762444026438, 0.14959598881657676},
    {-0.45801677765722737, 0.16915651939500262},
    {-0.2816035507792589, 0.1826034150449236},
    {-0.09501250983763745, 0.18945061045506859},
    {0.09501250983763745, 0.18945061045506859},
    {0.2816035507792589, 0.1826034150449236},
    {0.45801677765722737, 0.16915651939500262},
    {0.6178762444026438, 0.14959598881657676},
    {0.755404408355003, 0.12462897125553403},
    {0.8656312023878318, 0.09515851168249259},
    {0.9445750230732326, 0.062253523938647706},
    {0.9894009349916499, 0.027152459411754037},
};

std::vector<int> sorted_order(const Eigen::VectorXd& x) {
  std::vector<int> order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&x](int a, int b) { return x[a] < x[b]; });
  return order;
}

Eigen::VectorXd ecdf_impl(const Eigen::VectorXd& x, const Eigen::VectorXd& w) {
  const int n = static_cast<int>(x.size());
  const std::vector<int> order = sorted_order(x);
  Eigen::VectorXd out(n);
  double below = 0.0;
  int i = 0;
  while (i < n) {
    int j = i;
    double tied = 0.0;
    while (j < n && x[order[static_cast<std::size_t>(j)]] == x[order[static_cast<std::size_t>(i)]]) {
      tied += w[order[static_cast<std::size_t>(j)]];
      ++j;
    }
    const double level = below + 0.5 * tied;
    for (int k = i; k < j; ++k) {
      out[order[static_cast<std::size_t>(k)]] = level;
    }
    below += tied;
    i = j;
  }
  return out;
}

double distance_impl(const ProjectedMixture1D& pm, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& w) {
  const int n = static_cast<int>(x.size());
  const std::vector<int> order = sorted_order(x);
  const double tail = kTailSigmas * pm.max_sigma();

  std::vector<double> edge;
  std::vector<double> level;
  edge.reserve(static_cast<std::size_t>(n) + 2);
  level.reserve(static_cast<std::size_t>(n) + 1);
  edge.push_back(std::min(x[order[0]], pm.min_mean()) - tail);
  level.push_back(0.0);
  double cum = 0.0;
  for (int i = 0; i < n; ++i) {
    edge.push_back(x[order[static_cast<std::size_t>(i)]]);
    cum += w[order[static_cast<std::size_t>(i)]];
    level.push_back(cum);
  }
  edge.push_back(std::max(x[order[static_cast<std::size_t>(n - 1)]], pm.max_mean()) + tail);

  const double max_len = kMaxPanelSigmas * pm.min_sigma();
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < edge.size(); ++p) {
    const double a = edge[p];
    const double b = edge[p + 1];
    if (!(b > a)) {
      continue;
    }
    const double c = level[p];
    const int parts = std::max(1, static_cast<int>(std::ceil((b - a) / max_len)));
    const double h = (b - a) / parts;
    for (int q = 0; q < parts; ++q) {
      const double mid = a + (q + 0.5) * h;
      const double half = 0.5 * h;
      double acc = 0.0;
      for (const auto& node : kGauss16) {
        const double d = projected_cdf(pm, mid + half * node.x) - c;
        acc += node.w * d * d;
      }
      total += half * acc;
    }
  }
  return total;
}

Eigen::VectorXd newton_impl(const ProjectedMixture1D& pm, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& w) {
  const Eigen::VectorXd ecdf = ecdf_impl(x, w);
  const double cap = kStepCapSigmas * pm.weighted_mean_sigma();
  Eigen::VectorXd delta(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double residual = projected_cdf(pm, x[i]) - ecdf[i];
    const double density = std::max(projected_pdf(pm, x[i]), kPdfFloor);
    delta[i] = std::clamp(-residual / density, -cap, cap);
  }
  return delta;
}

double default_threshold(const ProjectedMixture1D& pm) {
  return 1e-10 * (pm.max_mean() - pm.min_mean() + 6.0 * pm.max_sigma());
}

}  // namespace

Samples1D::Samples1D(Eigen::VectorXd locations, Eigen::VectorXd weights)
    : locations_(std::move(locations)) {
  if (locations_.size() < 1 || !locations_.allFinite()) {
    throw std::invalid_argument("sample locations must be finite and nonempty");
  }
  if (weights.size() != locations_.size()) {
    throw std::invalid_argument("sample weights must match the location count");
  }
  weights_ = normalize_weights(std::move(weights), "sample weights");
}

Samples1D Samples1D::equal_weights(Eigen::VectorXd locations) {
  const Eigen::Index l = locations.size();
  return Samples1D(std::move(locations),
                   Eigen::VectorXd::Constant(l, 1.0 / static_cast<double>(l)));
}

Eigen::VectorXd ecdf_at_samples(const Samples1D& samples) {
  return ecdf_impl(samples.locations(), samples.weights());
}

double distance_1d(const ProjectedMixture1D& mixture, const Samples1D& samples) {
  return distance_impl(mixture, samples.locations(), samples.weights());
}

Eigen::VectorXd gradient_1d(const ProjectedMixture1D& mixture, const Samples1D& samples) {
  const Eigen::VectorXd ecdf = ecdf_at_samples(samples);
  Eigen::VectorXd g(samples.count());
  for (int i = 0; i < samples.count(); ++i) {
    g[i] = 2.0 * samples.weights()[i] *
           (projected_cdf(mixture, samples.locations()[i]) - ecdf[i]);
  }
  return g;
}

Eigen::VectorXd hessian_diag_1d(const ProjectedMixture1D& mixture, const Samples1D& samples) {
  Eigen::VectorXd h(samples.count());
  for (int i = 0; i < samples.count(); ++i) {
    h[i] = 2.0 * samples.weights()[i] * projected_pdf(mixture, samples.locations()[i]);
  }
  return h;
}

Eigen::VectorXd newton_step_1d(const ProjectedMixture1D& mixture, const Samples1D& samples) {
  return newton_impl(mixture, samples.locations(), samples.weights());
}

Eigen::VectorXd standard_normal_locations(int count) {
  if (count < 1) {
    throw std::invalid_argument("sample count must be at least 1");
  }
  Eigen::VectorXd x(count);
  for (int i = 1; i <= count; ++i) {
    const double arg = (2.0 * i - 1.0 - count) / count;
    x[i - 1] = std::numbers::sqrt2 * erf_inv(arg);
  }
  return x;
}

Samples1D quantile_init_1d(const ProjectedMixture1D& mixture, int count) {
  if (count < 1) {
    throw std::invalid_argument("sample count must be at least 1");
  }
  const double tail = kTailSigmas * mixture.max_sigma();
  Eigen::VectorXd x(count);
  for (int i = 1; i <= count; ++i) {
    const double target = (2.0 * i - 1.0) / (2.0 * count);
    double lo = mixture.min_mean() - tail;
    double hi = mixture.max_mean() + tail;
    for (int step = 0; step < kBisectionSteps; ++step) {
      const double mid = 0.5 * (lo + hi);
      if (projected_cdf(mixture, mid) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    x[i - 1] = 0.5 * (lo + hi);
  }
  return Samples1D::equal_weights(std::move(x));
}

Solve1DResult solve_1d(const ProjectedMixture1D& mixture, const Samples1D& init,
                       const Solve1DOptions& options) {
  if (!(options.step_size > 0.0) || options.step_size > 1.0) {
    throw std::invalid_argument("step size must lie in (0, 1]");
  }
  if (options.max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be at least 1");
  }
  const double threshold =
      options.threshold > 0.0 ? options.threshold : default_threshold(mixture);

  Eigen::VectorXd x = init.locations();
  const Eigen::VectorXd& w = init.weights();
  RunDiagnostics diag;
  diag.initial_distance = distance_impl(mixture, x, w);
  diag.max_change_history.reserve(static_cast<std::size_t>(options.max_iterations));
  std::vector<int> order = sorted_order(x);

  for (int t = 1; t <= options.max_iterations; ++t) {
    const Eigen::VectorXd applied = options.step_size * newton_impl(mixture, x, w);
    x += applied;
    std::vector<int> new_order = sorted_order(x);
    if (new_order != order) {
      ++diag.reorder_events;
      order = std::move(new_order);
    }
    const double max_change = applied.cwiseAbs().maxCoeff();
    diag.max_change_history.push_back(max_change);
    diag.iterations = t;
    if (max_change < threshold) {
      diag.converged = true;
      break;
    }
  }

  diag.final_distance = distance_impl(mixture, x, w);
  return {Samples1D(std::move(x), w), std::move(diag)};
}

Solve1DResult solve_1d(const ProjectedMixture1D& mixture, int count,
                       const Solve1DOptions& options) {
  return solve_1d(mixture, quantile_init_1d(mixture, count), options);
}

}  // namespace pcd
