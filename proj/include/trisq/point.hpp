#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>

#include "trisq/complex.hpp"

namespace trisq {

/// Weights at or below this are treated as zero when canonicalising points.
inline constexpr double kZeroWeight = 1e-13;

/// A point of a complex: its minimal carrier simplex and strictly positive
/// barycentric coordinates aligned with the carrier's vertices.
///
/// In the standard metric each simplex is the standard simplex in
/// R^{n+1}, so the chart coordinates of a point are its barycentric
/// coordinates and chart distances are plain Euclidean norms of weight
/// differences over any simplex containing both points.
struct PointInComplex {
  Simplex carrier;
  Eigen::VectorXd coords;

  double weight(VertexId v) const {
    const int i = carrier.index_of(v);
    return i < 0 ? 0.0 : coords(i);
  }
  std::string to_string() const;
};

/// Canonical point from weights over `support`: drops weights <= kZeroWeight,
/// clamps negatives, renormalises.
PointInComplex make_point(const Simplex& support, const Eigen::Ref<const Eigen::VectorXd>& weights);
PointInComplex vertex_point(VertexId v);
PointInComplex barycentre(const Simplex& s);

/// Coordinates of `p` over the vertices of `chart`. Requires carrier ⊆ chart.
Eigen::VectorXd expand(const PointInComplex& p, const Simplex& chart);

/// Convex combination Σ w_k pts_k. If `geometry` is given the union of the
/// carriers must be one of its simplices, otherwise IntegrityError.
PointInComplex combine(std::span<const PointInComplex> pts, const Eigen::Ref<const Eigen::VectorXd>& weights,
                       const SimplicialComplex* geometry);

/// (1 - t) a + t b inside a common closed simplex of `geometry`.
PointInComplex interpolate(const PointInComplex& a, const PointInComplex& b, double t,
                           const SimplicialComplex& geometry);

/// Smallest simplex of `geometry` holding both points, if any.
std::optional<Simplex> common_chart(const PointInComplex& a, const PointInComplex& b,
                                    const SimplicialComplex& geometry);

/// True when all weight outside `s` is at most `tol`.
bool lies_in(const PointInComplex& p, const Simplex& s, double tol = 1e-9);

/// Largest Euclidean chart difference between two points (0 for identical points);
/// used for round-trip comparisons, requires a common chart.
double chart_gap(const PointInComplex& a, const PointInComplex& b);

}  // namespace trisq
