#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace trisq {

/// Sampling density used by the verifiers.
struct SampleOptions {
  int grid_resolution = 6;
  int random_per_simplex = 100;
  int time_steps = 8;
  std::uint64_t seed = 20240917;
};

/// Mixes a base seed with keys (simplex index, segment index, ...) so that
/// every sampling site gets its own reproducible stream.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys);

/// Uniform point of the open standard simplex with `n` vertices.
Eigen::VectorXd random_barycentric(std::mt19937_64& rng, int n);

/// Barycentric grid { k / resolution : sum k = resolution } on `n` vertices;
/// with `interior_only` all coordinates are strictly positive.
std::vector<Eigen::VectorXd> barycentric_grid(int n, int resolution, bool interior_only);

/// Uniform double in [0, 1).
double uniform01(std::mt19937_64& rng);

}  // namespace trisq
