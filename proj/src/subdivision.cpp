#include "trisq/subdivision.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "trisq/simplex_geometry.hpp"

namespace trisq {

std::vector<PointInComplex> Realization::positions_of(const Simplex& s) const {
  std::vector<PointInComplex> out;
  out.reserve(s.size());
  for (VertexId v : s) out.push_back(position(v));
  return out;
}

PointInComplex Realization::barycentre_of(const Simplex& s) const {
  const auto pts = positions_of(s);
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(s.size()), 1.0 / static_cast<double>(s.size()));
  return combine(pts, w, geometry.get());
}

Realization identity_realization(ComplexPtr x) {
  Realization r;
  r.complex = x;
  r.geometry = x;
  r.positions.reserve(x->num_vertices());
  for (const auto& v : x->vertices()) r.positions.push_back(vertex_point(v.front()));
  return r;
}

Realization realize(const SimplicialMap& f, const Realization& codomain) {
  if (!same_complex(f.codomain(), codomain.complex))
    throw DomainMismatchError("realize: map codomain differs from the realised complex");
  Realization r;
  r.complex = f.domain();
  r.geometry = codomain.geometry;
  r.positions.reserve(f.images().size());
  for (VertexId w : f.images()) r.positions.push_back(codomain.position(w));
  return r;
}

namespace {

void check_realization(const Realization& r) {
  if (!r.complex || !r.geometry) throw DomainMismatchError("realisation needs a complex and a geometry");
  if (r.positions.size() != r.complex->num_vertices())
    throw DomainMismatchError("realisation has the wrong number of vertex positions");
  r.complex->for_each([&](const Simplex& s) {
    if (s.dim() < 1) return;
    Simplex chart = r.position(s.front()).carrier;
    for (VertexId v : s) chart = simplex_union(chart, r.position(v).carrier);
    if (!r.geometry->contains(chart))
      throw IntegrityError("realised simplex " + s.to_string() + " is not inside one simplex of the geometry");
  });
}

}  // namespace

std::shared_ptr<const SubdivisionRecord> SubdivisionRecord::create(ComplexPtr base) {
  return create(identity_realization(std::move(base)));
}

std::shared_ptr<const SubdivisionRecord> SubdivisionRecord::create(Realization base) {
  check_realization(base);
  auto rec = std::make_shared<SubdivisionRecord>();
  rec->root_is_geometry_ = same_complex(base.complex, base.geometry);
  if (rec->root_is_geometry_) {
    for (std::size_t k = 0; k < base.positions.size(); ++k)
      if (!(base.positions[k].carrier == base.complex->vertices()[k])) rec->root_is_geometry_ = false;
  }
  auto level = std::make_shared<Level>();
  level->complex = base.complex;
  level->realization = std::move(base);
  rec->levels_.push_back(std::move(level));
  rec->compute_carriers();
  return rec;
}

std::shared_ptr<const SubdivisionRecord> SubdivisionRecord::rebase(int level) const {
  auto rec = std::make_shared<SubdivisionRecord>(*this);
  rec->offset_ = absolute(level);
  rec->compute_carriers();
  return rec;
}

int SubdivisionRecord::absolute(int level) const {
  if (level < 0 || level > depth())
    throw OutOfRangeError("subdivision level " + std::to_string(level) + " outside [0, " + std::to_string(depth()) + "]");
  return offset_ + level;
}

const ComplexPtr& SubdivisionRecord::complex(int level) const {
  return levels_[static_cast<std::size_t>(absolute(level))]->complex;
}

const Realization& SubdivisionRecord::realization(int level) const {
  return levels_[static_cast<std::size_t>(absolute(level))]->realization;
}

const Simplex& SubdivisionRecord::flag_label(int level, VertexId v) const {
  const int a = absolute(level);
  if (a == 0) throw OutOfRangeError("the root level has no flag labels");
  return levels_[static_cast<std::size_t>(a - 1)]->complex->at(static_cast<std::size_t>(v));
}

void SubdivisionRecord::compute_carriers() {
  carriers_.clear();
  auto base_level = std::make_shared<std::vector<Simplex>>();
  for (const auto& v : complex(0)->vertices()) base_level->push_back(v);
  carriers_.push_back(std::move(base_level));
  for (int l = 1; l <= depth(); ++l) {
    const auto& prev_complex = *complex(l - 1);
    const auto& prev = *carriers_.back();
    auto cur = std::make_shared<std::vector<Simplex>>();
    cur->reserve(complex(l)->num_vertices());
    for (const auto& v : complex(l)->vertices()) {
      const Simplex& label = flag_label(l, v.front());
      Simplex c = prev[prev_complex.vertex_index(label.front())];
      for (VertexId u : label) c = simplex_union(c, prev[prev_complex.vertex_index(u)]);
      cur->push_back(c);
    }
    carriers_.push_back(std::move(cur));
  }
}

const Simplex& SubdivisionRecord::vertex_carrier(int level, VertexId v) const {
  return (*carriers_[static_cast<std::size_t>(level)])[complex(level)->vertex_index(v)];
}

Simplex SubdivisionRecord::carrier(const Simplex& tau, int level, int target) const {
  if (target < 0 || target > level) throw OutOfRangeError("carrier target level must lie in [0, level]");
  if (!complex(level)->contains(tau))
    throw NotInComplexError("simplex " + tau.to_string() + " is not in level " + std::to_string(level));
  if (target == 0) {
    Simplex c = vertex_carrier(level, tau.front());
    for (VertexId v : tau) c = simplex_union(c, vertex_carrier(level, v));
    return c;
  }
  Simplex s = tau;
  for (int l = level; l > target; --l) {
    Simplex c = flag_label(l, s.front());
    for (VertexId v : s) c = simplex_union(c, flag_label(l, v));
    s = c;
  }
  return s;
}

VertexId SubdivisionRecord::barycentre_vertex(const Simplex& s, int s_level, int level) const {
  if (level <= s_level) throw OutOfRangeError("barycentre vertex must live on a finer level");
  auto id = static_cast<VertexId>(complex(s_level)->require_index(s));
  for (int l = s_level + 1; l < level; ++l) id = static_cast<VertexId>(complex(l)->vertex_index(id));
  return id;
}

PointInComplex SubdivisionRecord::locate_root(const PointInComplex& x) const {
  const auto& root = *levels_.front();
  if (root_is_geometry_) {
    if (!root.complex->contains(x.carrier))
      throw NotInComplexError("point carrier " + x.carrier.to_string() + " is not in the complex");
    return x;
  }
  const auto& real = root.realization;
  for (const auto& top : root.complex->maximal_simplices()) {
    const auto pts = real.positions_of(top);
    Simplex chart = x.carrier;
    for (const auto& p : pts) chart = simplex_union(chart, p.carrier);
    if (!real.geometry->contains(chart)) continue;
    Eigen::MatrixXd cols(static_cast<Eigen::Index>(chart.size()), static_cast<Eigen::Index>(pts.size()));
    for (std::size_t k = 0; k < pts.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = expand(pts[k], chart);
    const Eigen::VectorXd target = expand(x, chart);
    const Eigen::VectorXd lambda = affine_coordinates(cols, target);
    if ((lambda.array() < -1e-10).any()) continue;
    if ((cols * lambda - target).norm() > 1e-10) continue;
    return make_point(top, lambda);
  }
  throw NotInComplexError("point " + x.to_string() + " is not covered by the realised complex");
}

PointInComplex SubdivisionRecord::locate_in_subdivision(const PointInComplex& y, const SimplicialComplex& parent) {
  const std::size_t n = y.carrier.size();
  std::array<std::size_t, kMaxSimplexVertices> order{};
  std::iota(order.begin(), order.begin() + n, std::size_t{0});
  std::sort(order.begin(), order.begin() + n, [&](std::size_t a, std::size_t b) {
    const double wa = y.coords(static_cast<Eigen::Index>(a));
    const double wb = y.coords(static_cast<Eigen::Index>(b));
    return wa != wb ? wa > wb : a < b;
  });
  std::array<VertexId, kMaxSimplexVertices> ids{};
  std::array<double, kMaxSimplexVertices> mu{};
  std::array<VertexId, kMaxSimplexVertices> prefix{};
  std::size_t m = 0;
  for (std::size_t k = 0; k < n; ++k) {
    prefix[k] = y.carrier[order[k]];
    const double here = y.coords(static_cast<Eigen::Index>(order[k]));
    const double next = k + 1 < n ? y.coords(static_cast<Eigen::Index>(order[k + 1])) : 0.0;
    const double weight = static_cast<double>(k + 1) * (here - next);
    if (weight <= kZeroWeight) continue;
    ids[m] = static_cast<VertexId>(parent.require_index(Simplex(std::span<const VertexId>(prefix.data(), k + 1))));
    mu[m++] = weight;
  }
  std::array<std::size_t, kMaxSimplexVertices> perm{};
  std::iota(perm.begin(), perm.begin() + m, std::size_t{0});
  std::sort(perm.begin(), perm.begin() + m, [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
  std::array<VertexId, kMaxSimplexVertices> sorted_ids{};
  Eigen::VectorXd w(static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k) {
    sorted_ids[k] = ids[perm[k]];
    w(static_cast<Eigen::Index>(k)) = mu[perm[k]];
  }
  return make_point(Simplex::from_sorted({sorted_ids.data(), m}), w);
}

PointInComplex SubdivisionRecord::locate(const PointInComplex& x, int level) const {
  const int target = absolute(level);
  PointInComplex y = locate_root(x);
  for (int a = 1; a <= target; ++a) y = locate_in_subdivision(y, *levels_[static_cast<std::size_t>(a - 1)]->complex);
  return y;
}

PointInComplex SubdivisionRecord::realize(const PointInComplex& located, int level) const {
  const auto& real = realization(level);
  return combine(real.positions_of(located.carrier), located.coords, real.geometry.get());
}

std::size_t projected_subdivision_size(const SimplicialComplex& x) {
  std::size_t total = 0;
  for (const auto& top : x.maximal_simplices()) {
    std::size_t flags = 1;
    for (std::size_t k = 2; k <= top.size(); ++k) flags *= k;
    total += flags * ((std::size_t{1} << top.size()) - 1);
  }
  return total;
}

RecordPtr barycentric_subdivide(const SubdivisionRecord& record, std::size_t budget) {
  const auto& parent_ptr = record.complex(record.depth());
  const auto& parent = *parent_ptr;
  const std::size_t projected = projected_subdivision_size(parent);
  if (projected > budget)
    throw BudgetExceededError("subdividing would produce up to " + std::to_string(projected) +
                              " simplices, over the budget of " + std::to_string(budget));

  std::vector<Simplex> flags;
  std::array<VertexId, kMaxSimplexVertices> perm{};
  std::array<VertexId, kMaxSimplexVertices> ids{};
  for (const auto& top : parent.maximal_simplices()) {
    const std::size_t n = top.size();
    std::copy(top.begin(), top.end(), perm.begin());
    do {
      for (std::size_t k = 0; k < n; ++k)
        ids[k] = static_cast<VertexId>(parent.require_index(Simplex(std::span<const VertexId>(perm.data(), k + 1))));
      flags.emplace_back(std::span<const VertexId>(ids.data(), n));
    } while (std::next_permutation(perm.begin(), perm.begin() + n));
  }

  auto level = std::make_shared<SubdivisionRecord::Level>();
  level->complex = share(SimplicialComplex::from_simplices(std::move(flags)));
  const auto& prev_real = record.realization(record.depth());
  level->realization.complex = level->complex;
  level->realization.geometry = prev_real.geometry;
  level->realization.positions.reserve(level->complex->num_vertices());
  for (const auto& v : level->complex->vertices())
    level->realization.positions.push_back(prev_real.barycentre_of(parent.at(static_cast<std::size_t>(v.front()))));

  auto out = std::make_shared<SubdivisionRecord>(record);
  out->levels_.resize(static_cast<std::size_t>(out->offset_ + record.depth() + 1));
  out->levels_.push_back(std::move(level));
  out->compute_carriers();
  return out;
}

RecordPtr iterate_subdivide(const RecordPtr& record, int i, std::size_t budget) {
  if (i < 0) throw OutOfRangeError("subdivision depth must be nonnegative");
  RecordPtr cur = record;
  while (cur->depth() < i) cur = barycentric_subdivide(*cur, budget);
  return cur;
}

RecordPtr iterate_subdivide(ComplexPtr x, int i, std::size_t budget) {
  return iterate_subdivide(SubdivisionRecord::create(std::move(x)), i, budget);
}

SimplicialMap subdivide_map(const SimplicialMap& f, ComplexPtr sd_domain, ComplexPtr sd_codomain) {
  const auto& dom = *f.domain();
  const auto& cod = *f.codomain();
  if (sd_domain->num_vertices() != dom.size() || sd_codomain->num_vertices() != cod.size())
    throw DomainMismatchError("subdivide_map: complexes are not the subdivisions of the map's domain and codomain");
  std::vector<VertexId> images;
  images.reserve(sd_domain->num_vertices());
  for (const auto& v : sd_domain->vertices())
    images.push_back(static_cast<VertexId>(cod.require_index(f.apply(dom.at(static_cast<std::size_t>(v.front()))))));
  return build_simplicial_map(std::move(images), std::move(sd_domain), std::move(sd_codomain));
}

SimplicialMap subdivide_map(const SimplicialMap& f, const SubdivisionRecord& domain, int dom_level,
                            const SubdivisionRecord& codomain, int cod_level, int i) {
  if (!same_complex(f.domain(), domain.complex(dom_level)) || !same_complex(f.codomain(), codomain.complex(cod_level)))
    throw DomainMismatchError("subdivide_map: map does not match the given record levels");
  SimplicialMap cur = f;
  for (int k = 1; k <= i; ++k)
    cur = subdivide_map(cur, domain.complex(dom_level + k), codomain.complex(cod_level + k));
  return cur;
}

SimplicialComplex dual_cell_at(const SubdivisionRecord& record, int level, const Simplex& sigma,
                               const std::optional<Simplex>& within) {
  if (!record.complex(level - 1)->contains(sigma))
    throw NotInComplexError("simplex " + sigma.to_string() + " is not in level " + std::to_string(level - 1));
  std::vector<Simplex> members;
  record.complex(level)->for_each([&](const Simplex& tau) {
    for (VertexId v : tau)
      if (!sigma.is_face_of(record.flag_label(level, v))) return;
    if (within && !record.carrier(tau, level).is_face_of(*within)) return;
    members.push_back(tau);
  });
  return SimplicialComplex::from_simplices(std::move(members));
}

DualCell dual_cell(const Simplex& sigma, const SubdivisionRecord& y) {
  if (y.depth() < 1) throw OutOfRangeError("dual_cell needs a record of depth >= 1");
  return {sigma, dual_cell_at(y, 1, sigma)};
}

}  // namespace trisq
