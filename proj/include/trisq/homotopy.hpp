#pragma once

#include <memory>
#include <string>
#include <vector>

#include "trisq/metric.hpp"
#include "trisq/subdivision.hpp"

namespace trisq {

/// Piecewise-linear map from the geometry of a subdivision record, linear on
/// every simplex of one level, into a codomain geometry.
class PLMap {
 public:
  PLMap() = default;
  /// `images` aligned with the vertices of `domain->complex(level)`. Every
  /// simplex's vertex images must share a closed simplex of the codomain.
  PLMap(RecordPtr domain, int level, ComplexPtr codomain, std::vector<PointInComplex> images);

  /// A simplicial map from level `level` of `domain`, realised through `codomain`.
  static PLMap from_simplicial(RecordPtr domain, int level, const SimplicialMap& f, const Realization& codomain);
  /// The inclusion of level `level` into the record's geometry (the identity of the space).
  static PLMap identity(RecordPtr domain, int level);

  const RecordPtr& domain() const { return data_->domain; }
  int level() const { return data_->level; }
  const ComplexPtr& codomain() const { return data_->codomain; }
  const PointInComplex& image(VertexId v) const;

  PointInComplex operator()(const PointInComplex& x) const { return eval_located(data_->domain->locate(x, data_->level)); }
  /// `y` already located in the domain level.
  PointInComplex eval_located(const PointInComplex& y) const;

  PointFunction as_function() const;

 private:
  struct Data {
    RecordPtr domain;
    int level = 0;
    ComplexPtr codomain;
    std::vector<PointInComplex> images;
  };
  std::shared_ptr<const Data> data_;
};

/// One straight-line piece: x ↦ post((1-s)·from(pre(x)) + s·to(pre(x))).
/// `from` and `to` live on the same domain level and, on every simplex of
/// it, their images share a closed simplex, so the interpolation is defined.
struct HomotopySegment {
  std::string label;
  PointFunction pre;   // empty: identity
  PLMap from;
  PLMap to;
  PointFunction post;  // empty: identity

  PointInComplex eval(const PointInComplex& x, double s) const;
};

/// Checks the carrier condition of a segment on every simplex of the domain
/// level; throws IntegrityError naming the first bad simplex.
HomotopySegment straight_line(std::string label, PLMap from, PLMap to);

/// Concatenation of straight-line segments, time split uniformly.
class HomotopyChain {
 public:
  HomotopyChain() = default;
  explicit HomotopyChain(std::vector<HomotopySegment> segments) : segments_(std::move(segments)) {}

  const std::vector<HomotopySegment>& segments() const noexcept { return segments_; }
  std::size_t size() const noexcept { return segments_.size(); }
  bool empty() const noexcept { return segments_.empty(); }

  /// t in [0,1]; the empty chain is the constant identity homotopy.
  PointInComplex eval(const PointInComplex& x, double t) const;
  /// Segment index and local time for global time t.
  std::pair<std::size_t, double> locate_time(double t) const;

  HomotopyChain reversed() const;
  /// H(g(x), t).
  HomotopyChain precompose(const PointFunction& g) const;
  /// g(H(x, t)).
  HomotopyChain postcompose(const PointFunction& g) const;
  HomotopyChain then(const HomotopyChain& next) const;

 private:
  std::vector<HomotopySegment> segments_;
};

PointFunction compose_functions(PointFunction outer, PointFunction inner);

}  // namespace trisq
