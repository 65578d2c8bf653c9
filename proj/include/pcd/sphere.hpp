#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pcd/projection.hpp"

namespace pcd {

// Deterministic random stream: mt19937_64 with a pinned bits-to-double
// mapping, so sequences are bit-reproducible for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  // Uniform on (0, 1]; safe as a logarithm argument.
  double uniform_positive() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }
  // Standard normal via Box-Muller, with the second draw cached.
  double normal();

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class DirectionKind {
  RandomGaussian,   // redraw per outer iteration
  Equiangular2D,    // fixed half-circle grid, 2D only
  FixedSeedRandom,  // one random set, reused every iteration
};

struct DirectionScheme {
  DirectionKind kind = DirectionKind::RandomGaussian;
  int count = 1;
  std::uint64_t seed = 0;
};

// Uniformly distributed unit vector: normalized standard normal draw.
Direction random_unit_vector(Rng& rng, int dimension);

// The fixed direction set of an Equiangular2D or FixedSeedRandom scheme.
// Equiangular angles are pi * k / K for k = 0..K-1; the half circle suffices
// because opposite directions carry the same projection information.
std::vector<Direction> deterministic_directions(const DirectionScheme& scheme,
                                                int dimension);

// Directions used by outer iteration t: a fresh draw seeded with
// seed xor t for RandomGaussian, the fixed set otherwise.
std::vector<Direction> iteration_directions(const DirectionScheme& scheme,
                                            int dimension, int iteration);

// Surface area of the unit sphere in N-dimensional space, by the recursion
// A_1 = 2, A_2 = 2*pi, A_N = 2*pi/(N-2) * A_{N-2}. A_0 is defined as 0.
double sphere_surface_area(int dimension);

// Same quantity via 2 * pi^{N/2} / Gamma(N/2), kept as a cross-check.
double sphere_surface_area_closed_form(int dimension);

}  // namespace pcd
