#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "trisq/simplex.hpp"

namespace trisq {

/// A finite, face-closed simplicial complex over integer vertex ids.
///
/// Simplices are kept grouped by dimension and sorted, which gives every
/// simplex a stable global index (dimension first, then lexicographic).
/// Barycentric subdivision uses that index as the id of the new barycentre
/// vertex, so the ordering is part of the public contract.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Face closure of the given simplices.
  static SimplicialComplex from_simplices(std::vector<Simplex> simplices);

  /// -1 for the empty complex.
  int dim() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.back(); }
  bool empty() const noexcept { return by_dim_.empty(); }

  std::span<const Simplex> simplices(int d) const;
  std::span<const Simplex> vertices() const { return simplices(0); }
  std::size_t num_vertices() const { return simplices(0).size(); }

  bool contains(const Simplex& s) const { return index_of(s).has_value(); }
  /// Global (dimension, lexicographic) index.
  std::optional<std::size_t> index_of(const Simplex& s) const;
  /// Throws NotInComplexError when absent.
  std::size_t require_index(const Simplex& s) const;
  const Simplex& at(std::size_t global_index) const;

  /// Position of `v` among the sorted vertices; throws NotInComplexError.
  std::size_t vertex_index(VertexId v) const;
  bool has_vertex(VertexId v) const;

  std::vector<Simplex> maximal_simplices() const;
  /// Simplices having `s` as a face (including `s`).
  std::vector<Simplex> cofaces(const Simplex& s) const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const auto& layer : by_dim_)
      for (const auto& s : layer) fn(s);
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.by_dim_ == b.by_dim_;
  }

 private:
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::size_t> offsets_;  // offsets_[d] = index of first d-simplex; back() = size
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

/// Face closure of a list of vertex tuples. A repeated vertex inside one
/// tuple raises MalformedSimplexError.
SimplicialComplex build_complex(const std::vector<std::vector<VertexId>>& maximal_simplices);
ComplexPtr make_complex(const std::vector<std::vector<VertexId>>& maximal_simplices);
ComplexPtr share(SimplicialComplex complex);

/// The standard n-simplex on vertices 0..n.
ComplexPtr standard_simplex(int n);

/// Smallest subcomplex containing every simplex of `x` that has `sigma` as a face.
SimplicialComplex closed_star(const Simplex& sigma, const SimplicialComplex& x);

/// Structural or pointer equality.
bool same_complex(const ComplexPtr& a, const ComplexPtr& b);

/// A simplicial map given by its vertex assignment.
class SimplicialMap {
 public:
  SimplicialMap() = default;

  ComplexPtr domain() const { return domain_; }
  ComplexPtr codomain() const { return codomain_; }

  /// Image of a domain vertex.
  VertexId operator()(VertexId v) const { return images_[domain_->vertex_index(v)]; }
  VertexId image_at(std::size_t vertex_index) const { return images_[vertex_index]; }
  std::span<const VertexId> images() const { return images_; }

  /// Image simplex with repeated vertices collapsed.
  Simplex apply(const Simplex& s) const;

  friend bool operator==(const SimplicialMap& a, const SimplicialMap& b) {
    return same_complex(a.domain_, b.domain_) && same_complex(a.codomain_, b.codomain_) &&
           a.images_ == b.images_;
  }

 private:
  friend SimplicialMap build_simplicial_map(std::vector<VertexId>, ComplexPtr, ComplexPtr);
  ComplexPtr domain_;
  ComplexPtr codomain_;
  std::vector<VertexId> images_;  // aligned with domain_->vertices()
};

/// `images[k]` is the image of the k-th (sorted) domain vertex. Throws
/// NonSimplicialError with the first offending simplex as witness.
SimplicialMap build_simplicial_map(std::vector<VertexId> images, ComplexPtr domain, ComplexPtr codomain);

/// Builds from (source, target) pairs; every domain vertex must be assigned.
SimplicialMap build_simplicial_map(std::span<const std::pair<VertexId, VertexId>> assignment,
                                   ComplexPtr domain, ComplexPtr codomain);

SimplicialMap identity_map(ComplexPtr x);

/// f ∘ g. Requires codomain(g) = domain(f).
SimplicialMap compose(const SimplicialMap& f, const SimplicialMap& g);

struct TriangularityResult {
  bool triangular = true;
  std::optional<Simplex> witness;
  explicit operator bool() const noexcept { return triangular; }
};

/// Exact Y-triangularity of `f` over the control `p` (both from the same
/// domain into Y, with Y controlled by the identity): f(τ) must be a face of
/// p(τ) for every domain simplex τ.
TriangularityResult is_triangular(const SimplicialMap& f, const SimplicialMap& p);

}  // namespace trisq
