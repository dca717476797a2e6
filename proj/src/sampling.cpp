#include "trisq/sampling.hpp"

#include <cmath>
#include <functional>

namespace trisq {

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(base);
  for (auto k : keys) h = mix(h ^ mix(k));
  return h;
}

double uniform01(std::mt19937_64& rng) {
  // 53 random bits; independent of the standard library's distribution code
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Eigen::VectorXd random_barycentric(std::mt19937_64& rng, int n) {
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w(i) = -std::log1p(-uniform01(rng)) + 1e-12;
  return w / w.sum();
}

std::vector<Eigen::VectorXd> barycentric_grid(int n, int resolution, bool interior_only) {
  std::vector<Eigen::VectorXd> out;
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  const int lo = interior_only ? 1 : 0;
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == n - 1) {
      if (remaining < lo) return;
      counts[static_cast<std::size_t>(pos)] = remaining;
      Eigen::VectorXd w(n);
      for (int i = 0; i < n; ++i) w(i) = static_cast<double>(counts[static_cast<std::size_t>(i)]) / resolution;
      out.push_back(std::move(w));
      return;
    }
    for (int k = lo; k <= remaining; ++k) {
      counts[static_cast<std::size_t>(pos)] = k;
      rec(pos + 1, remaining - k);
    }
  };
  if (n >= 1) rec(0, resolution);
  return out;
}

}  // namespace trisq
