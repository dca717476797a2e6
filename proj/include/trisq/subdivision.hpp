#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "trisq/complex.hpp"
#include "trisq/point.hpp"

namespace trisq {

/// Default cap on the number of simplices a subdivision step may produce.
inline constexpr std::size_t kDefaultSimplexBudget = 10'000'000;

/// Affine realisation of a complex's vertices in a geometry complex that
/// carries the standard metric. Each simplex is mapped affinely, so its
/// vertex images must share a closed simplex of the geometry.
struct Realization {
  ComplexPtr complex;
  ComplexPtr geometry;
  std::vector<PointInComplex> positions;  // aligned with complex->vertices()

  const PointInComplex& position(VertexId v) const { return positions[complex->vertex_index(v)]; }
  /// Positions of the vertices of `s`, in vertex order.
  std::vector<PointInComplex> positions_of(const Simplex& s) const;
  /// Affine image of the barycentre of `s`.
  PointInComplex barycentre_of(const Simplex& s) const;
};

/// A complex standing for itself under the standard metric.
Realization identity_realization(ComplexPtr x);

/// Realisation of the domain of `f` through the realisation of its codomain.
Realization realize(const SimplicialMap& f, const Realization& codomain);

/// Iterated barycentric subdivisions Sd^i X with flag labels and carriers.
///
/// Level 0 is X; the vertex of level j with id k is the barycentre of the
/// k-th simplex (in canonical order) of level j-1, so ids are deterministic.
/// Every level is realised in one geometry complex: subdivisions are always
/// measured in the metric of the space they subdivide. Records are immutable;
/// subdividing further yields a new record that shares the existing levels.
class SubdivisionRecord {
 public:
  /// X measured in its own standard metric.
  static std::shared_ptr<const SubdivisionRecord> create(ComplexPtr base);
  /// X realised in another complex (e.g. a declared subdivision of it).
  static std::shared_ptr<const SubdivisionRecord> create(Realization base);

  /// The same tower seen from level `level`: that level becomes level 0.
  std::shared_ptr<const SubdivisionRecord> rebase(int level) const;

  int depth() const noexcept { return static_cast<int>(levels_.size()) - offset_ - 1; }
  const ComplexPtr& base() const { return complex(0); }
  const ComplexPtr& complex(int level) const;
  const ComplexPtr& geometry() const { return levels_.front()->realization.geometry; }
  const Realization& realization(int level) const;
  const PointInComplex& position(int level, VertexId v) const { return realization(level).position(v); }

  /// Simplex of level-1 whose barycentre is vertex `v` of `level` (level >= 1).
  const Simplex& flag_label(int level, VertexId v) const;

  /// Smallest simplex of level `target` containing `tau` (a simplex of `level`).
  Simplex carrier(const Simplex& tau, int level, int target = 0) const;
  /// Base carrier of a vertex of `level`.
  const Simplex& vertex_carrier(int level, VertexId v) const;

  /// The vertex of `level` sitting at the barycentre of simplex `s` of `s_level` < level.
  VertexId barycentre_vertex(const Simplex& s, int s_level, int level) const;

  /// Re-coordinatises a point of the geometry as a point of complex(level).
  PointInComplex locate(const PointInComplex& x, int level) const;
  /// Point of complex(level) back to the geometry.
  PointInComplex realize(const PointInComplex& located, int level) const;

 private:
  friend std::shared_ptr<const SubdivisionRecord> barycentric_subdivide(const SubdivisionRecord&, std::size_t);

  struct Level {
    ComplexPtr complex;
    Realization realization;
  };

  int absolute(int level) const;
  PointInComplex locate_root(const PointInComplex& x) const;
  static PointInComplex locate_in_subdivision(const PointInComplex& y, const SimplicialComplex& parent);
  void compute_carriers();

  std::vector<std::shared_ptr<const Level>> levels_;  // levels_[0] is the root of the tower
  int offset_ = 0;
  bool root_is_geometry_ = true;
  // carriers_[l][k]: base simplex carrying the k-th vertex of relative level l.
  std::vector<std::shared_ptr<const std::vector<Simplex>>> carriers_;
};

using RecordPtr = std::shared_ptr<const SubdivisionRecord>;

/// One more level. Throws BudgetExceededError when the projected simplex count
/// of the new level exceeds `budget`.
RecordPtr barycentric_subdivide(const SubdivisionRecord& record, std::size_t budget = kDefaultSimplexBudget);

/// A record of depth at least `i` extending `record`.
RecordPtr iterate_subdivide(const RecordPtr& record, int i, std::size_t budget = kDefaultSimplexBudget);
RecordPtr iterate_subdivide(ComplexPtr x, int i, std::size_t budget = kDefaultSimplexBudget);

/// Upper bound on the simplex count of the next subdivision level.
std::size_t projected_subdivision_size(const SimplicialComplex& x);

/// Sd f : Sd(domain) -> Sd(codomain), sending the barycentre of σ to the
/// barycentre of f(σ). `sd_domain` and `sd_codomain` must be the barycentric
/// subdivisions of f's domain and codomain.
SimplicialMap subdivide_map(const SimplicialMap& f, ComplexPtr sd_domain, ComplexPtr sd_codomain);

/// Sd^i f between the levels `dom_level + i` and `cod_level + i` of two records.
SimplicialMap subdivide_map(const SimplicialMap& f, const SubdivisionRecord& domain, int dom_level,
                            const SubdivisionRecord& codomain, int cod_level, int i);

/// Closed dual cell D(σ, Y) ⊂ Sd Y.
struct DualCell {
  Simplex sigma;
  SimplicialComplex cell;
};

/// D(σ, Y) where Y is level 0 of `y` (depth >= 1).
DualCell dual_cell(const Simplex& sigma, const SubdivisionRecord& y);

/// Simplices of `level` whose vertices are barycentres of level-(level-1)
/// simplices having `sigma` as a face, optionally restricted to simplices
/// carried by the base simplex `within`. Face-closed.
SimplicialComplex dual_cell_at(const SubdivisionRecord& record, int level, const Simplex& sigma,
                               const std::optional<Simplex>& within = std::nullopt);

/// Point of the geometry to a point of complex(level) of `record`.
inline PointInComplex locate_point(const PointInComplex& x, const SubdivisionRecord& record, int level) {
  return record.locate(x, level);
}

}  // namespace trisq
