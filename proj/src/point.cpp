#include "trisq/point.hpp"

#include <array>
#include <sstream>

namespace trisq {

std::string PointInComplex::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '{';
  for (std::size_t i = 0; i < carrier.size(); ++i)
    os << (i ? ", " : "") << carrier[i] << ':' << coords(static_cast<Eigen::Index>(i));
  os << '}';
  return os.str();
}

PointInComplex make_point(const Simplex& support, const Eigen::Ref<const Eigen::VectorXd>& weights) {
  std::array<VertexId, kMaxSimplexVertices> verts{};
  std::array<double, kMaxSimplexVertices> w{};
  std::size_t n = 0;
  double total = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double value = weights(static_cast<Eigen::Index>(i));
    if (value > kZeroWeight) {
      verts[n] = support[i];
      w[n++] = value;
      total += value;
    }
  }
  if (n == 0) throw DegenerateInputError("point has no positive barycentric weight");
  PointInComplex p;
  p.carrier = Simplex::from_sorted({verts.data(), n});
  p.coords.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) p.coords(static_cast<Eigen::Index>(i)) = w[i] / total;
  return p;
}

PointInComplex vertex_point(VertexId v) {
  PointInComplex p;
  p.carrier = Simplex::vertex(v);
  p.coords = Eigen::VectorXd::Ones(1);
  return p;
}

PointInComplex barycentre(const Simplex& s) {
  PointInComplex p;
  p.carrier = s;
  p.coords = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(s.size()), 1.0 / static_cast<double>(s.size()));
  return p;
}

Eigen::VectorXd expand(const PointInComplex& p, const Simplex& chart) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(chart.size()));
  for (std::size_t i = 0; i < p.carrier.size(); ++i) {
    const int k = chart.index_of(p.carrier[i]);
    if (k < 0) throw IntegrityError("point " + p.to_string() + " is not in chart " + chart.to_string());
    out(k) = p.coords(static_cast<Eigen::Index>(i));
  }
  return out;
}

PointInComplex combine(std::span<const PointInComplex> pts, const Eigen::Ref<const Eigen::VectorXd>& weights,
                       const SimplicialComplex* geometry) {
  Simplex chart = pts[0].carrier;
  for (std::size_t k = 1; k < pts.size(); ++k)
    if (weights(static_cast<Eigen::Index>(k)) > 0.0) chart = simplex_union(chart, pts[k].carrier);
  if (geometry && !geometry->contains(chart))
    throw IntegrityError("combined points do not share a closed simplex: " + chart.to_string());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(chart.size()));
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double w = weights(static_cast<Eigen::Index>(k));
    if (w <= 0.0) continue;
    const auto& p = pts[k];
    for (std::size_t i = 0; i < p.carrier.size(); ++i)
      acc(chart.index_of(p.carrier[i])) += w * p.coords(static_cast<Eigen::Index>(i));
  }
  return make_point(chart, acc);
}

PointInComplex interpolate(const PointInComplex& a, const PointInComplex& b, double t,
                           const SimplicialComplex& geometry) {
  if (t <= 0.0) return a;
  if (t >= 1.0) return b;
  const std::array<PointInComplex, 2> pts{a, b};
  return combine(pts, Eigen::Vector2d(1.0 - t, t), &geometry);
}

std::optional<Simplex> common_chart(const PointInComplex& a, const PointInComplex& b,
                                    const SimplicialComplex& geometry) {
  Simplex u = simplex_union(a.carrier, b.carrier);
  if (!geometry.contains(u)) return std::nullopt;
  return u;
}

bool lies_in(const PointInComplex& p, const Simplex& s, double tol) {
  double outside = 0;
  for (std::size_t i = 0; i < p.carrier.size(); ++i)
    if (!s.contains(p.carrier[i])) outside += p.coords(static_cast<Eigen::Index>(i));
  return outside <= tol;
}

double chart_gap(const PointInComplex& a, const PointInComplex& b) {
  const Simplex u = simplex_union(a.carrier, b.carrier);
  return (expand(a, u) - expand(b, u)).norm();
}

}  // namespace trisq
