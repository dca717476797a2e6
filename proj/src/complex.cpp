#include "trisq/complex.hpp"

#include <algorithm>

namespace trisq {

SimplicialComplex SimplicialComplex::from_simplices(std::vector<Simplex> simplices) {
  std::vector<Simplex> all;
  std::size_t estimate = 0;
  for (const auto& s : simplices) estimate += (std::size_t{1} << s.size()) - 1;
  all.reserve(estimate);
  std::array<VertexId, kMaxSimplexVertices> buf{};
  for (const auto& s : simplices) {
    const std::size_t n = s.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::size_t k = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) buf[k++] = s[i];
      all.push_back(Simplex::from_sorted({buf.data(), k}));
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  SimplicialComplex c;
  for (auto& s : all) {
    const auto d = static_cast<std::size_t>(s.dim());
    if (c.by_dim_.size() <= d) c.by_dim_.resize(d + 1);
    c.by_dim_[d].push_back(s);
  }
  c.offsets_.assign(c.by_dim_.size() + 1, 0);
  for (std::size_t d = 0; d < c.by_dim_.size(); ++d) c.offsets_[d + 1] = c.offsets_[d] + c.by_dim_[d].size();
  return c;
}

std::span<const Simplex> SimplicialComplex::simplices(int d) const {
  if (d < 0 || d >= static_cast<int>(by_dim_.size())) return {};
  return by_dim_[static_cast<std::size_t>(d)];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty() || s.dim() > dim()) return std::nullopt;
  const auto& layer = by_dim_[static_cast<std::size_t>(s.dim())];
  auto it = std::lower_bound(layer.begin(), layer.end(), s);
  if (it == layer.end() || !(*it == s)) return std::nullopt;
  return offsets_[static_cast<std::size_t>(s.dim())] + static_cast<std::size_t>(it - layer.begin());
}

std::size_t SimplicialComplex::require_index(const Simplex& s) const {
  auto idx = index_of(s);
  if (!idx) throw NotInComplexError("simplex " + s.to_string() + " is not in the complex");
  return *idx;
}

const Simplex& SimplicialComplex::at(std::size_t global_index) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global_index);
  if (global_index >= size()) throw NotInComplexError("simplex index out of range");
  const auto d = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return by_dim_[d][global_index - offsets_[d]];
}

std::size_t SimplicialComplex::vertex_index(VertexId v) const {
  auto verts = vertices();
  auto it = std::lower_bound(verts.begin(), verts.end(), Simplex::vertex(v));
  if (it == verts.end() || it->front() != v)
    throw NotInComplexError("vertex " + std::to_string(v) + " is not in the complex");
  return static_cast<std::size_t>(it - verts.begin());
}

bool SimplicialComplex::has_vertex(VertexId v) const { return v >= 0 && contains(Simplex::vertex(v)); }

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
  std::vector<char> is_face(size(), 0);
  for (int d = 1; d <= dim(); ++d)
    for (const auto& s : simplices(d))
      for (std::size_t i = 0; i < s.size(); ++i) is_face[*index_of(s.without(i))] = 1;
  std::vector<Simplex> out;
  for (std::size_t k = 0; k < size(); ++k)
    if (!is_face[k]) out.push_back(at(k));
  return out;
}

std::vector<Simplex> SimplicialComplex::cofaces(const Simplex& s) const {
  std::vector<Simplex> out;
  for (int d = s.dim(); d <= dim(); ++d)
    for (const auto& t : simplices(d))
      if (s.is_face_of(t)) out.push_back(t);
  return out;
}

SimplicialComplex build_complex(const std::vector<std::vector<VertexId>>& maximal_simplices) {
  std::vector<Simplex> simplices;
  simplices.reserve(maximal_simplices.size());
  for (const auto& tuple : maximal_simplices) simplices.emplace_back(std::span<const VertexId>(tuple));
  return SimplicialComplex::from_simplices(std::move(simplices));
}

ComplexPtr make_complex(const std::vector<std::vector<VertexId>>& maximal_simplices) {
  return share(build_complex(maximal_simplices));
}

ComplexPtr share(SimplicialComplex complex) {
  return std::make_shared<const SimplicialComplex>(std::move(complex));
}

ComplexPtr standard_simplex(int n) {
  std::vector<VertexId> verts(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) verts[static_cast<std::size_t>(i)] = i;
  return make_complex({verts});
}

SimplicialComplex closed_star(const Simplex& sigma, const SimplicialComplex& x) {
  if (!x.contains(sigma)) throw NotInComplexError("simplex " + sigma.to_string() + " is not in the complex");
  return SimplicialComplex::from_simplices(x.cofaces(sigma));
}

bool same_complex(const ComplexPtr& a, const ComplexPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Simplex SimplicialMap::apply(const Simplex& s) const {
  std::array<VertexId, kMaxSimplexVertices> buf{};
  std::size_t n = 0;
  for (VertexId v : s) buf[n++] = (*this)(v);
  std::sort(buf.begin(), buf.begin() + n);
  n = static_cast<std::size_t>(std::unique(buf.begin(), buf.begin() + n) - buf.begin());
  return Simplex::from_sorted({buf.data(), n});
}

SimplicialMap build_simplicial_map(std::vector<VertexId> images, ComplexPtr domain, ComplexPtr codomain) {
  if (!domain || !codomain) throw DomainMismatchError("simplicial map needs a domain and a codomain");
  if (images.size() != domain->num_vertices())
    throw DomainMismatchError("vertex assignment has " + std::to_string(images.size()) + " entries for " +
                              std::to_string(domain->num_vertices()) + " domain vertices");
  SimplicialMap f;
  f.domain_ = std::move(domain);
  f.codomain_ = std::move(codomain);
  f.images_ = std::move(images);
  for (std::size_t k = 0; k < f.images_.size(); ++k)
    if (!f.codomain_->has_vertex(f.images_[k]))
      throw NonSimplicialError("vertex image " + std::to_string(f.images_[k]) + " is not a codomain vertex",
                               f.domain_->vertices()[k].to_string());
  for (int d = 1; d <= f.domain_->dim(); ++d)
    for (const auto& s : f.domain_->simplices(d))
      if (!f.codomain_->contains(f.apply(s)))
        throw NonSimplicialError("image of " + s.to_string() + " is not a simplex of the codomain", s.to_string());
  return f;
}

SimplicialMap build_simplicial_map(std::span<const std::pair<VertexId, VertexId>> assignment, ComplexPtr domain,
                                   ComplexPtr codomain) {
  if (!domain) throw DomainMismatchError("simplicial map needs a domain");
  std::vector<VertexId> images(domain->num_vertices(), -1);
  for (auto [src, dst] : assignment) images[domain->vertex_index(src)] = dst;
  for (std::size_t k = 0; k < images.size(); ++k)
    if (images[k] < 0)
      throw DomainMismatchError("domain vertex " + std::to_string(domain->vertices()[k].front()) + " is unassigned");
  return build_simplicial_map(std::move(images), std::move(domain), std::move(codomain));
}

SimplicialMap identity_map(ComplexPtr x) {
  std::vector<VertexId> images;
  images.reserve(x->num_vertices());
  for (const auto& v : x->vertices()) images.push_back(v.front());
  return build_simplicial_map(std::move(images), x, x);
}

SimplicialMap compose(const SimplicialMap& f, const SimplicialMap& g) {
  if (!same_complex(g.codomain(), f.domain()))
    throw DomainMismatchError("compose: codomain of the inner map differs from the domain of the outer map");
  std::vector<VertexId> images;
  images.reserve(g.images().size());
  for (VertexId v : g.images()) images.push_back(f(v));
  return build_simplicial_map(std::move(images), g.domain(), f.codomain());
}

TriangularityResult is_triangular(const SimplicialMap& f, const SimplicialMap& p) {
  if (!same_complex(f.domain(), p.domain()))
    throw DomainMismatchError("is_triangular: map and control have different domains");
  if (!same_complex(f.codomain(), p.codomain()))
    throw DomainMismatchError("is_triangular: map and control have different codomains");
  TriangularityResult result;
  f.domain()->for_each([&](const Simplex& tau) {
    if (!result.triangular) return;
    if (!f.apply(tau).is_face_of(p.apply(tau))) {
      result.triangular = false;
      result.witness = tau;
    }
  });
  return result;
}

}  // namespace trisq
