#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "trisq/errors.hpp"

namespace trisq {

using VertexId = std::int32_t;

/// Largest number of vertices a simplex may carry (dimension 7).
inline constexpr int kMaxSimplexVertices = 8;

/// A nonempty simplex stored as a strictly increasing list of vertex ids.
///
/// Storage is inline so that large subdivided complexes stay compact. The
/// total order compares dimension first and then the vertex lists
/// lexicographically; complexes rely on it for their canonical ordering.
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<VertexId> verts) : Simplex(std::span<const VertexId>(verts.begin(), verts.size())) {}
  /// Sorts `verts`; throws MalformedSimplexError on repeats, negative ids or
  /// an empty list.
  explicit Simplex(std::span<const VertexId> verts);

  /// Builds from an already strictly increasing list without re-sorting.
  static Simplex from_sorted(std::span<const VertexId> verts);
  static Simplex vertex(VertexId v) { return from_sorted(std::span<const VertexId>(&v, 1)); }

  int dim() const noexcept { return static_cast<int>(n_) - 1; }
  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  const VertexId* begin() const noexcept { return v_.data(); }
  const VertexId* end() const noexcept { return v_.data() + n_; }
  VertexId operator[](std::size_t i) const noexcept { return v_[i]; }
  VertexId front() const noexcept { return v_[0]; }
  VertexId back() const noexcept { return v_[n_ - 1]; }
  std::span<const VertexId> vertices() const noexcept { return {v_.data(), n_}; }

  bool contains(VertexId v) const noexcept { return std::binary_search(begin(), end(), v); }
  /// Face relation (non-strict): every vertex of *this is a vertex of `other`.
  bool is_face_of(const Simplex& other) const noexcept {
    return std::includes(other.begin(), other.end(), begin(), end());
  }
  /// Position of `v` in the vertex list, or -1.
  int index_of(VertexId v) const noexcept;

  /// The facet obtained by dropping vertex position `i`. Requires dim() >= 1.
  Simplex without(std::size_t i) const;

  std::string to_string() const;

  friend bool operator==(const Simplex& a, const Simplex& b) noexcept {
    return a.n_ == b.n_ && std::equal(a.begin(), a.end(), b.begin());
  }
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) noexcept {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  std::array<VertexId, kMaxSimplexVertices> v_{};
  std::uint8_t n_ = 0;
};

/// Vertex-set union; throws MalformedSimplexError if the result exceeds capacity.
Simplex simplex_union(const Simplex& a, const Simplex& b);

/// All proper nonempty faces, ordered by dimension then lexicographically.
std::vector<Simplex> faces(const Simplex& s);

/// All nonempty faces including `s` itself.
std::vector<Simplex> closed_faces(const Simplex& s);

}  // namespace trisq
