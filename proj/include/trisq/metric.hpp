#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "trisq/point.hpp"
#include "trisq/sampling.hpp"
#include "trisq/subdivision.hpp"

namespace trisq {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Closed interval bracketing a path-metric distance.
struct Interval {
  double lower = 0;
  double upper = kInfinity;
  bool exact() const noexcept { return lower == upper; }
};

enum class Membership { inside, outside, unknown };
const char* to_string(Membership m);

/// Shared state for distance queries in one geometry complex.
///
/// Holds the graph used for path upper bounds: the vertices of the
/// level-`refinement` subdivision, with every pair lying in one closed
/// simplex joined by its chord. Built eagerly; every query afterwards is const.
class MetricContext {
 public:
  explicit MetricContext(ComplexPtr geometry, int refinement = 1);

  const ComplexPtr& geometry() const noexcept { return geometry_; }
  int refinement() const noexcept { return refinement_; }

  /// Exact when both points share a closed simplex; otherwise a graph
  /// shortest path (upper) and a barycentric-Lipschitz bound (lower).
  Interval path_dist(const PointInComplex& x, const PointInComplex& y) const;

  /// Lipschitz constant, in the standard path metric, of the total barycentric
  /// weight on the vertices of `s`.
  double mass_lipschitz(const Simplex& s) const;

 private:
  int component_of(const PointInComplex& x) const;

  ComplexPtr geometry_;
  int refinement_;
  RecordPtr record_;
  std::vector<PointInComplex> nodes_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
  std::vector<int> component_;  // per geometry vertex
};

/// ℓ2 distance in the chart of a common simplex. Throws DomainMismatchError
/// when the points share no closed simplex (use path_dist instead).
double dist_in_simplex(const PointInComplex& x, const PointInComplex& y, const SimplicialComplex& geometry);

/// Distance from `x` to a face of the geometry, computed in the chart of a
/// simplex holding both by projecting onto the probability simplex of the face.
double dist_point_to_face(const PointInComplex& x, const Simplex& face, const SimplicialComplex& geometry);

/// Distance from `x` to the affine simplex spanned by `vertices`, all inside
/// one closed simplex of the geometry together with `x`.
double dist_point_to_realized(const PointInComplex& x, std::span<const PointInComplex> vertices,
                              const SimplicialComplex& geometry);

/// Distance from `x` to the boundary of the realised simplex with `vertices`
/// (minimum over facets). +inf for a vertex.
double dist_to_boundary(const PointInComplex& x, std::span<const PointInComplex> vertices,
                        const SimplicialComplex& geometry);

inline Interval path_dist(const PointInComplex& x, const PointInComplex& y, const MetricContext& ctx) {
  return ctx.path_dist(x, y);
}

double diam_measured(const Simplex& sigma, const Realization& p);
/// Distance from the affine image of the barycentre to the image of the boundary.
double rad_measured(const Simplex& sigma, const Realization& p);
double mesh(const Realization& p);
/// Throws DegenerateInputError for complexes without positive-dimensional simplices.
double comesh(const Realization& p);

/// Distance bracket from `x` to the union of realised simplices `set`.
Interval dist_to_set(const PointInComplex& x, std::span<const std::vector<PointInComplex>> set,
                     const MetricContext& ctx);

/// inside if the upper bound is < ε, outside if the lower bound is > ε.
Membership in_neighborhood(const PointInComplex& x, std::span<const std::vector<PointInComplex>> set,
                           double epsilon, const MetricContext& ctx);
/// Same for a subcomplex of the context geometry.
Membership in_neighborhood(const PointInComplex& x, const SimplicialComplex& subcomplex, double epsilon,
                           const MetricContext& ctx);

using PointFunction = std::function<PointInComplex(const PointInComplex&)>;

struct ControlEstimate {
  double bound = 0;  // sup over samples only
  std::size_t samples = 0;
  PointInComplex worst;
};

/// Sampled sup of d(p(x), F(x)) over a grid and random points of every
/// maximal simplex of `domain`, using path upper bounds in ctx's geometry.
ControlEstimate control_of_map(const PointFunction& map, const PointFunction& control, const Realization& domain,
                               const MetricContext& ctx, const SampleOptions& options = {});

/// Grid plus random sample points of every maximal simplex of `domain`, realised.
std::vector<PointInComplex> sample_complex(const Realization& domain, const SampleOptions& options,
                                           bool interior_only = false);

}  // namespace trisq
