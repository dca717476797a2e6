#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace trisq {

/// Euclidean projection of `v` onto the probability simplex
/// { y : y >= 0, sum(y) = 1 } by the sort-and-threshold method.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> project_to_probability_simplex(
    const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = v.size();
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> dense = v;
  std::vector<Scalar> sorted(dense.data(), dense.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<Scalar>());
  Scalar running = 0;
  Scalar threshold = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    running += sorted[static_cast<std::size_t>(k)];
    const Scalar candidate = (running - Scalar(1)) / Scalar(k + 1);
    if (sorted[static_cast<std::size_t>(k)] - candidate > Scalar(0)) threshold = candidate;
  }
  return (dense.array() - threshold).max(Scalar(0)).matrix();
}

/// Barycentric coordinates of the orthogonal projection of `x` onto the
/// affine hull of the columns of `vertices` (least squares for degenerate hulls).
template <typename DerivedV, typename DerivedX>
Eigen::Matrix<typename DerivedV::Scalar, Eigen::Dynamic, 1> affine_coordinates(
    const Eigen::MatrixBase<DerivedV>& vertices, const Eigen::MatrixBase<DerivedX>& x) {
  using Scalar = typename DerivedV::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index m = vertices.cols();
  Vec lambda(m);
  if (m == 1) {
    lambda(0) = Scalar(1);
    return lambda;
  }
  Mat edges = vertices.rightCols(m - 1).colwise() - vertices.col(0);
  Vec rhs = x - vertices.col(0);
  Vec alpha = edges.completeOrthogonalDecomposition().solve(rhs);
  lambda(0) = Scalar(1) - alpha.sum();
  lambda.tail(m - 1) = alpha;
  return lambda;
}

template <typename Scalar>
struct ClosestPoint {
  Scalar distance = std::numeric_limits<Scalar>::infinity();
  /// Convex weights on the input vertices realising the minimum.
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
};

/// Exact distance from `x` to the convex hull of the columns of `vertices`.
///
/// The unconstrained affine projection is accepted when its coordinates are
/// nonnegative; otherwise the minimum lies on the relative boundary and every
/// facet is searched. Exponential in the column count, which is bounded by the
/// simplex capacity.
template <typename DerivedV, typename DerivedX>
ClosestPoint<typename DerivedV::Scalar> closest_point_on_simplex(const Eigen::MatrixBase<DerivedV>& vertices,
                                                                 const Eigen::MatrixBase<DerivedX>& x) {
  using Scalar = typename DerivedV::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index m = vertices.cols();
  ClosestPoint<Scalar> best;
  auto lambda = affine_coordinates(vertices, x);
  if ((lambda.array() >= Scalar(-1e-14)).all()) {
    lambda = lambda.cwiseMax(Scalar(0));
    lambda /= lambda.sum();
    best.distance = (vertices * lambda - x).norm();
    best.weights = lambda;
    return best;
  }
  for (Eigen::Index drop = 0; drop < m; ++drop) {
    Mat facet(vertices.rows(), m - 1);
    for (Eigen::Index c = 0, k = 0; c < m; ++c)
      if (c != drop) facet.col(k++) = vertices.col(c);
    auto sub = closest_point_on_simplex(facet, x);
    if (sub.distance < best.distance) {
      best.distance = sub.distance;
      best.weights = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(m);
      for (Eigen::Index c = 0, k = 0; c < m; ++c)
        if (c != drop) best.weights(c) = sub.weights(k++);
    }
  }
  return best;
}

/// Altitude of a standard n-simplex (edge length sqrt 2): sqrt((n+1)/n).
template <typename Scalar = double>
Scalar standard_altitude(int n) {
  return std::sqrt(Scalar(n + 1) / Scalar(n));
}

/// Inradius-type quantity of the standard n-simplex: distance from its
/// barycentre to its boundary, 1/sqrt(n(n+1)).
template <typename Scalar = double>
Scalar standard_radius(int n) {
  return Scalar(1) / std::sqrt(Scalar(n) * Scalar(n + 1));
}

}  // namespace trisq
