#include "pcd/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pcd {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_positive()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Direction random_unit_vector(Rng& rng, int dimension) {
  if (dimension < 1) {
    throw std::invalid_argument("dimension must be at least 1");
  }
  Eigen::VectorXd z(dimension);
  do {
    for (int i = 0; i < dimension; ++i) {
      z[i] = rng.normal();
    }
  } while (z.norm() < 1e-9);
  return Direction(std::move(z));
}

std::vector<Direction> deterministic_directions(const DirectionScheme& scheme,
                                                int dimension) {
  if (scheme.count < 1) {
    throw std::invalid_argument("direction count must be at least 1");
  }
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(scheme.count));
  switch (scheme.kind) {
    case DirectionKind::Equiangular2D: {
      if (dimension != 2) {
        throw std::invalid_argument("equiangular directions require dimension 2");
      }
      for (int k = 0; k < scheme.count; ++k) {
        const double theta = std::numbers::pi * k / scheme.count;
        Eigen::VectorXd u(2);
        u << std::cos(theta), std::sin(theta);
        out.emplace_back(std::move(u));
      }
      break;
    }
    case DirectionKind::FixedSeedRandom: {
      Rng rng(scheme.seed);
      for (int k = 0; k < scheme.count; ++k) {
        out.push_back(random_unit_vector(rng, dimension));
      }
      break;
    }
    case DirectionKind::RandomGaussian:
      throw std::invalid_argument(
          "a redraw-per-iteration scheme has no fixed direction set");
  }
  return out;
}

std::vector<Direction> iteration_directions(const DirectionScheme& scheme,
                                            int dimension, int iteration) {
  if (scheme.kind != DirectionKind::RandomGaussian) {
    return deterministic_directions(scheme, dimension);
  }
  if (scheme.count < 1) {
    throw std::invalid_argument("direction count must be at least 1");
  }
  if (iteration < 0) {
    throw std::invalid_argument("iteration index must be nonnegative");
  }
  Rng rng(scheme.seed ^ static_cast<std::uint64_t>(iteration));
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(scheme.count));
  for (int k = 0; k < scheme.count; ++k) {
    out.push_back(random_unit_vector(rng, dimension));
  }
  return out;
}

double sphere_surface_area(int dimension) {
  if (dimension < 0) {
    throw std::invalid_argument("dimension must be nonnegative");
  }
  if (dimension == 0) {
    return 0.0;
  }
  double area = (dimension % 2 == 1) ? 2.0 : 2.0 * std::numbers::pi;
  for (int n = (dimension % 2 == 1) ? 3 : 4; n <= dimension; n += 2) {
    area *= 2.0 * std::numbers::pi / (n - 2);
  }
  return area;
}

double sphere_surface_area_closed_form(int dimension) {
  if (dimension < 1) {
    throw std::invalid_argument("dimension must be at least 1");
  }
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dimension) /
         std::tgamma(0.5 * dimension);
}

}  // namespace pcd
