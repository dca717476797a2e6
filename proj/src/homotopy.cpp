#include "trisq/homotopy.hpp"

#include "trisq/errors.hpp"

namespace trisq {

namespace {

void check_simplices(const SimplicialComplex& domain, const SimplicialComplex& geometry,
                     const std::vector<const std::vector<PointInComplex>*>& image_sets, const char* what) {
  domain.for_each([&](const Simplex& s) {
    if (s.dim() < 1 && image_sets.size() < 2) return;
    Simplex chart;
    bool first = true;
    for (const auto* images : image_sets)
      for (VertexId v : s) {
        const auto& c = (*images)[domain.vertex_index(v)].carrier;
        chart = first ? c : simplex_union(chart, c);
        first = false;
      }
    if (!geometry.contains(chart))
      throw IntegrityError(std::string(what) + ": images of " + s.to_string() + " do not share a closed simplex");
  });
}

}  // namespace

PLMap::PLMap(RecordPtr domain, int level, ComplexPtr codomain, std::vector<PointInComplex> images) {
  const auto& dom = *domain->complex(level);
  if (images.size() != dom.num_vertices()) throw DomainMismatchError("PL map needs one image per domain vertex");
  for (const auto& p : images)
    if (!codomain->contains(p.carrier)) throw NotInComplexError("PL map image " + p.to_string() + " is not in the codomain");
  std::vector<const std::vector<PointInComplex>*> sets{&images};
  check_simplices(dom, *codomain, sets, "PL map");
  data_ = std::make_shared<const Data>(Data{std::move(domain), level, std::move(codomain), std::move(images)});
}

PLMap PLMap::from_simplicial(RecordPtr domain, int level, const SimplicialMap& f, const Realization& codomain) {
  if (!same_complex(f.domain(), domain->complex(level)))
    throw DomainMismatchError("simplicial map domain is not the given subdivision level");
  if (!same_complex(f.codomain(), codomain.complex))
    throw DomainMismatchError("simplicial map codomain is not the realised complex");
  std::vector<PointInComplex> images;
  images.reserve(f.images().size());
  for (VertexId w : f.images()) images.push_back(codomain.position(w));
  return PLMap(std::move(domain), level, codomain.geometry, std::move(images));
}

PLMap PLMap::identity(RecordPtr domain, int level) {
  auto images = domain->realization(level).positions;
  auto geometry = domain->geometry();
  return PLMap(std::move(domain), level, std::move(geometry), std::move(images));
}

const PointInComplex& PLMap::image(VertexId v) const {
  return data_->images[data_->domain->complex(data_->level)->vertex_index(v)];
}

PointInComplex PLMap::eval_located(const PointInComplex& y) const {
  std::vector<PointInComplex> pts;
  pts.reserve(y.carrier.size());
  for (VertexId v : y.carrier) pts.push_back(image(v));
  return combine(pts, y.coords, data_->codomain.get());
}

PointFunction PLMap::as_function() const {
  return [m = *this](const PointInComplex& x) { return m(x); };
}

PointInComplex HomotopySegment::eval(const PointInComplex& x, double s) const {
  const PointInComplex base = pre ? pre(x) : x;
  const PointInComplex y = from.domain()->locate(base, from.level());
  const PointInComplex a = from.eval_located(y);
  const PointInComplex b = to.eval_located(y);
  PointInComplex mid = s <= 0 ? a : (s >= 1 ? b : interpolate(a, b, s, *from.codomain()));
  return post ? post(mid) : mid;
}

HomotopySegment straight_line(std::string label, PLMap from, PLMap to) {
  if (from.domain() != to.domain() || from.level() != to.level())
    throw DomainMismatchError("segment ends must be PL on the same subdivision level");
  if (!same_complex(from.codomain(), to.codomain())) throw DomainMismatchError("segment ends have different codomains");
  const auto& dom = *from.domain()->complex(from.level());
  std::vector<PointInComplex> a, b;
  for (const auto& v : dom.vertices()) {
    a.push_back(from.image(v.front()));
    b.push_back(to.image(v.front()));
  }
  std::vector<const std::vector<PointInComplex>*> sets{&a, &b};
  check_simplices(dom, *from.codomain(), sets, ("segment " + label).c_str());
  return HomotopySegment{std::move(label), {}, std::move(from), std::move(to), {}};
}

std::pair<std::size_t, double> HomotopyChain::locate_time(double t) const {
  if (!(t >= 0 && t <= 1)) throw OutOfRangeError("homotopy time must lie in [0, 1]");
  const double n = static_cast<double>(segments_.size());
  const double scaled = t * n;
  auto k = static_cast<std::size_t>(scaled);
  if (k >= segments_.size()) k = segments_.size() - 1;
  return {k, scaled - static_cast<double>(k)};
}

PointInComplex HomotopyChain::eval(const PointInComplex& x, double t) const {
  if (segments_.empty()) {
    if (!(t >= 0 && t <= 1)) throw OutOfRangeError("homotopy time must lie in [0, 1]");
    return x;
  }
  auto [k, s] = locate_time(t);
  return segments_[k].eval(x, s);
}

HomotopyChain HomotopyChain::reversed() const {
  std::vector<HomotopySegment> out(segments_.rbegin(), segments_.rend());
  for (auto& seg : out) std::swap(seg.from, seg.to);
  return HomotopyChain(std::move(out));
}

PointFunction compose_functions(PointFunction outer, PointFunction inner) {
  if (!outer) return inner;
  if (!inner) return outer;
  return [outer = std::move(outer), inner = std::move(inner)](const PointInComplex& x) { return outer(inner(x)); };
}

HomotopyChain HomotopyChain::precompose(const PointFunction& g) const {
  auto out = segments_;
  for (auto& seg : out) seg.pre = compose_functions(seg.pre, g);
  return HomotopyChain(std::move(out));
}

HomotopyChain HomotopyChain::postcompose(const PointFunction& g) const {
  auto out = segments_;
  for (auto& seg : out) seg.post = compose_functions(g, seg.post);
  return HomotopyChain(std::move(out));
}

HomotopyChain HomotopyChain::then(const HomotopyChain& next) const {
  auto out = segments_;
  out.insert(out.end(), next.segments_.begin(), next.segments_.end());
  return HomotopyChain(std::move(out));
}

}  // namespace trisq
