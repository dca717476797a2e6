#include "trisq/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "trisq/simplex_geometry.hpp"

namespace trisq {

const char* to_string(Membership m) {
  switch (m) {
    case Membership::inside:
      return "inside";
    case Membership::outside:
      return "outside";
    case Membership::unknown:
      return "unknown";
  }
  return "?";
}

double dist_in_simplex(const PointInComplex& x, const PointInComplex& y, const SimplicialComplex& geometry) {
  auto chart = common_chart(x, y, geometry);
  if (!chart) throw DomainMismatchError("points share no closed simplex; use path_dist");
  return (expand(x, *chart) - expand(y, *chart)).norm();
}

double dist_point_to_face(const PointInComplex& x, const Simplex& face, const SimplicialComplex& geometry) {
  if (!geometry.contains(face)) throw NotInComplexError("face " + face.to_string() + " is not in the complex");
  const Simplex chart = simplex_union(x.carrier, face);
  if (!geometry.contains(chart))
    throw DomainMismatchError("face " + face.to_string() + " shares no closed simplex with " + x.to_string());
  const Eigen::VectorXd coords = expand(x, chart);
  Eigen::VectorXd inside(static_cast<Eigen::Index>(face.size()));
  double outside_sq = 0;
  for (std::size_t i = 0, k = 0; i < chart.size(); ++i) {
    const double w = coords(static_cast<Eigen::Index>(i));
    if (face.contains(chart[i]))
      inside(static_cast<Eigen::Index>(k++)) = w;
    else
      outside_sq += w * w;
  }
  const Eigen::VectorXd projected = project_to_probability_simplex(inside);
  return std::sqrt(outside_sq + (projected - inside).squaredNorm());
}

double dist_point_to_realized(const PointInComplex& x, std::span<const PointInComplex> vertices,
                              const SimplicialComplex& geometry) {
  Simplex chart = x.carrier;
  for (const auto& p : vertices) chart = simplex_union(chart, p.carrier);
  if (!geometry.contains(chart)) throw DomainMismatchError("point and simplex share no closed simplex");
  Eigen::MatrixXd cols(static_cast<Eigen::Index>(chart.size()), static_cast<Eigen::Index>(vertices.size()));
  for (std::size_t k = 0; k < vertices.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = expand(vertices[k], chart);
  return closest_point_on_simplex(cols, expand(x, chart)).distance;
}

double dist_to_boundary(const PointInComplex& x, std::span<const PointInComplex> vertices,
                        const SimplicialComplex& geometry) {
  if (vertices.size() < 2) return kInfinity;
  double best = kInfinity;
  std::vector<PointInComplex> facet;
  for (std::size_t drop = 0; drop < vertices.size(); ++drop) {
    facet.clear();
    for (std::size_t k = 0; k < vertices.size(); ++k)
      if (k != drop) facet.push_back(vertices[k]);
    best = std::min(best, dist_point_to_realized(x, facet, geometry));
  }
  return best;
}

MetricContext::MetricContext(ComplexPtr geometry, int refinement)
    : geometry_(std::move(geometry)), refinement_(refinement) {
  if (refinement_ < 0) throw OutOfRangeError("graph refinement must be nonnegative");
  record_ = iterate_subdivide(geometry_, refinement_);
  nodes_ = record_->realization(refinement_).positions;
  adjacency_.assign(nodes_.size(), {});
  // every pair of nodes in one closed geometry simplex, joined by its chord
  for (const auto& top : geometry_->maximal_simplices()) {
    std::vector<std::size_t> inside;
    for (std::size_t v = 0; v < nodes_.size(); ++v)
      if (nodes_[v].carrier.is_face_of(top)) inside.push_back(v);
    for (std::size_t a = 0; a < inside.size(); ++a)
      for (std::size_t b = a + 1; b < inside.size(); ++b) {
        const double w = dist_in_simplex(nodes_[inside[a]], nodes_[inside[b]], *geometry_);
        adjacency_[inside[a]].emplace_back(inside[b], w);
        adjacency_[inside[b]].emplace_back(inside[a], w);
      }
  }
  // components of the geometry's 1-skeleton
  const auto n = geometry_->num_vertices();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const auto& e : geometry_->simplices(1))
    parent[find(geometry_->vertex_index(e[0]))] = find(geometry_->vertex_index(e[1]));
  component_.resize(n);
  for (std::size_t v = 0; v < n; ++v) component_[v] = static_cast<int>(find(v));
}

int MetricContext::component_of(const PointInComplex& x) const {
  return component_[geometry_->vertex_index(x.carrier.front())];
}

double MetricContext::mass_lipschitz(const Simplex& s) const {
  double best = 0;
  geometry_->for_each([&](const Simplex& rho) {
    if (rho.dim() < 1) return;
    double k = 0;
    for (VertexId v : rho)
      if (s.contains(v)) k += 1;
    const double m = static_cast<double>(rho.size());
    best = std::max(best, std::sqrt(k * (m - k) / m));
  });
  return best;
}

Interval MetricContext::path_dist(const PointInComplex& x, const PointInComplex& y) const {
  if (auto chart = common_chart(x, y, *geometry_)) {
    const double d = (expand(x, *chart) - expand(y, *chart)).norm();
    return {d, d};
  }
  if (component_of(x) != component_of(y)) return {kInfinity, kInfinity};

  std::vector<double> dist(nodes_.size(), kInfinity);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (std::size_t v = 0; v < nodes_.size(); ++v)
    if (auto chart = common_chart(x, nodes_[v], *geometry_)) {
      dist[v] = (expand(x, *chart) - expand(nodes_[v], *chart)).norm();
      queue.emplace(dist[v], v);
    }
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (auto [w, len] : adjacency_[v])
      if (d + len < dist[w]) {
        dist[w] = d + len;
        queue.emplace(dist[w], w);
      }
  }
  double upper = kInfinity;
  for (std::size_t v = 0; v < nodes_.size(); ++v)
    if (dist[v] < kInfinity)
      if (auto chart = common_chart(y, nodes_[v], *geometry_))
        upper = std::min(upper, dist[v] + (expand(y, *chart) - expand(nodes_[v], *chart)).norm());

  double lower = 0;
  const Simplex both = simplex_union(x.carrier, y.carrier);
  for (VertexId v : both) {
    const double lip = mass_lipschitz(Simplex::vertex(v));
    if (lip > 0) lower = std::max(lower, std::abs(x.weight(v) - y.weight(v)) / lip);
  }
  return {std::min(lower, upper), upper};
}

double diam_measured(const Simplex& sigma, const Realization& p) {
  double best = 0;
  for (std::size_t a = 0; a < sigma.size(); ++a)
    for (std::size_t b = a + 1; b < sigma.size(); ++b)
      best = std::max(best, dist_in_simplex(p.position(sigma[a]), p.position(sigma[b]), *p.geometry));
  return best;
}

double rad_measured(const Simplex& sigma, const Realization& p) {
  if (sigma.dim() < 1) throw DegenerateInputError("rad is undefined for a vertex");
  const auto pts = p.positions_of(sigma);
  return dist_to_boundary(p.barycentre_of(sigma), pts, *p.geometry);
}

double mesh(const Realization& p) {
  double best = 0;
  for (const auto& e : p.complex->simplices(1)) best = std::max(best, diam_measured(e, p));
  return best;
}

double comesh(const Realization& p) {
  if (p.complex->dim() < 1) throw DegenerateInputError("comesh is undefined without positive-dimensional simplices");
  double best = kInfinity;
  for (int d = 1; d <= p.complex->dim(); ++d)
    for (const auto& s : p.complex->simplices(d)) best = std::min(best, rad_measured(s, p));
  return best;
}

Interval dist_to_set(const PointInComplex& x, std::span<const std::vector<PointInComplex>> set,
                     const MetricContext& ctx) {
  const auto& geometry = *ctx.geometry();
  Interval out{kInfinity, kInfinity};
  for (const auto& simplex : set) {
    Simplex support = simplex.front().carrier;
    for (const auto& p : simplex) support = simplex_union(support, p.carrier);
    if (geometry.contains(simplex_union(support, x.carrier))) {
      const double d = dist_point_to_realized(x, simplex, geometry);
      out.lower = std::min(out.lower, d);
      out.upper = std::min(out.upper, d);
      continue;
    }
    double mass = 0;
    for (VertexId v : support) mass += x.weight(v);
    const double lip = ctx.mass_lipschitz(support);
    double lower = 0;
    if (1.0 - mass > 0) lower = lip > 0 ? (1.0 - mass) / lip : kInfinity;
    double upper = kInfinity;
    for (const auto& p : simplex) upper = std::min(upper, ctx.path_dist(x, p).upper);
    out.lower = std::min(out.lower, std::min(lower, upper));
    out.upper = std::min(out.upper, upper);
  }
  return out;
}

Membership in_neighborhood(const PointInComplex& x, std::span<const std::vector<PointInComplex>> set,
                           double epsilon, const MetricContext& ctx) {
  if (epsilon < 0) throw OutOfRangeError("neighbourhood radius must be nonnegative");
  const Interval d = dist_to_set(x, set, ctx);
  if (d.upper < epsilon) return Membership::inside;
  if (d.lower > epsilon) return Membership::outside;
  return Membership::unknown;
}

Membership in_neighborhood(const PointInComplex& x, const SimplicialComplex& subcomplex, double epsilon,
                           const MetricContext& ctx) {
  std::vector<std::vector<PointInComplex>> set;
  for (const auto& s : subcomplex.maximal_simplices()) {
    std::vector<PointInComplex> verts;
    for (VertexId v : s) verts.push_back(vertex_point(v));
    set.push_back(std::move(verts));
  }
  return in_neighborhood(x, set, epsilon, ctx);
}

std::vector<PointInComplex> sample_complex(const Realization& domain, const SampleOptions& options,
                                           bool interior_only) {
  std::vector<PointInComplex> out;
  const auto tops = domain.complex->maximal_simplices();
  for (std::size_t t = 0; t < tops.size(); ++t) {
    const auto pts = domain.positions_of(tops[t]);
    const int n = static_cast<int>(tops[t].size());
    for (const auto& w : barycentric_grid(n, options.grid_resolution, interior_only))
      out.push_back(combine(pts, w, domain.geometry.get()));
    std::mt19937_64 rng(derive_seed(options.seed, {t}));
    for (int k = 0; k < options.random_per_simplex; ++k)
      out.push_back(combine(pts, random_barycentric(rng, n), domain.geometry.get()));
  }
  return out;
}

ControlEstimate control_of_map(const PointFunction& map, const PointFunction& control, const Realization& domain,
                               const MetricContext& ctx, const SampleOptions& options) {
  ControlEstimate est;
  for (const auto& x : sample_complex(domain, options)) {
    const double d = ctx.path_dist(control(x), map(x)).upper;
    ++est.samples;
    if (est.samples == 1 || d > est.bound) {
      est.bound = d;
      est.worst = x;
    }
  }
  return est;
}

}  // namespace trisq
