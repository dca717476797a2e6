#include "trisq/squeeze.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "trisq/errors.hpp"

namespace trisq {

namespace {

Simplex only_maximal(const SimplicialComplex& c, const char* what) {
  const auto tops = c.maximal_simplices();
  if (tops.size() != 1) throw DomainMismatchError(std::string(what) + " must be a single simplex");
  return tops.front();
}

Eigen::VectorXd push_forward(const SimplicialMap& f, const Simplex& sigma, const Eigen::VectorXd& w,
                             const Simplex& tau) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(tau.size()));
  for (std::size_t a = 0; a < sigma.size(); ++a) out(tau.index_of(f(sigma[a]))) += w(static_cast<Eigen::Index>(a));
  return out;
}

Simplex from_ids(std::vector<VertexId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return Simplex(std::span<const VertexId>(ids));
}

enum class Verdict { pass, unknown, fail, vacuous };

// premise "p < p_thr" implies conclusion "c < c_thr", with a margin on both
Verdict implication(double p, double p_thr, double c, double c_thr, double margin) {
  if (p >= p_thr + margin) return Verdict::vacuous;
  if (c < c_thr - margin) return Verdict::pass;
  if (p < p_thr - margin && c >= c_thr + margin) return Verdict::fail;
  return Verdict::unknown;
}

struct Counts {
  std::size_t pass = 0, fail = 0, unknown = 0, vacuous = 0;
  void add(Verdict v) {
    switch (v) {
      case Verdict::pass: ++pass; break;
      case Verdict::fail: ++fail; break;
      case Verdict::unknown: ++unknown; break;
      case Verdict::vacuous: ++vacuous; break;
    }
  }
  std::string text() const {
    return "pass=" + std::to_string(pass) + " fail=" + std::to_string(fail) + " unknown=" + std::to_string(unknown) +
           " vacuous=" + std::to_string(vacuous);
  }
};

void record(CheckTally& tally, Verdict v, const std::function<std::string()>& witness) {
  switch (v) {
    case Verdict::pass: tally.add_pass(); break;
    case Verdict::unknown: tally.add_unknown(); break;
    case Verdict::vacuous: tally.add_vacuous(); break;
    case Verdict::fail: tally.add_fail(witness); break;
  }
}

// grid and random interior points of a simplex of `level`, realised in the geometry
std::vector<PointInComplex> interior_points(const SubdivisionRecord& rec, int level, const Simplex& s,
                                            const SampleOptions& o, std::uint64_t seed) {
  const auto pts = rec.realization(level).positions_of(s);
  if (s.size() == 1) return {pts.front()};
  const int n = static_cast<int>(s.size());
  std::vector<PointInComplex> out;
  for (const auto& w : barycentric_grid(n, o.grid_resolution, true)) out.push_back(combine(pts, w, rec.geometry().get()));
  std::mt19937_64 rng(seed);
  for (int k = 0; k < o.random_per_simplex; ++k)
    out.push_back(combine(pts, random_barycentric(rng, n), rec.geometry().get()));
  return out;
}

std::vector<double> time_grid(const HomotopyChain& h, int steps) {
  std::vector<double> ts;
  const std::size_t n = std::max<std::size_t>(h.size(), 1);
  for (std::size_t k = 0; k < n; ++k)
    for (int j = 0; j <= steps; ++j)
      ts.push_back((static_cast<double>(k) + static_cast<double>(j) / steps) / static_cast<double>(n));
  return ts;
}

Verdict membership(const SubdivisionRecord& rec, const PointInComplex& p, const Simplex& sigma,
                   const SqueezeOptions& o) {
  const auto q = rec.locate(p, 0);
  if (lies_in(q, sigma, o.tolerance)) return Verdict::pass;
  if (lies_in(q, sigma, o.unknown_band)) return Verdict::unknown;
  return Verdict::fail;
}

// one tally per segment, in chain order
std::vector<CheckTally*> segment_tallies(Report& rep, const std::string& prefix, const HomotopyChain& h) {
  std::vector<CheckTally*> out;
  for (const auto& seg : h.segments()) out.push_back(&rep.add(prefix + ": " + seg.label));
  return out;
}

HomotopyChain relabel(const HomotopyChain& h, const std::string& prefix) {
  auto segs = h.segments();
  for (auto& s : segs) s.label = prefix + " " + s.label;
  return HomotopyChain(std::move(segs));
}

}  // namespace

LemmaConstants lemma_constants(const Simplex& sigma, const Realization& x, const Simplex& tau, const Realization& y) {
  if (sigma.dim() < 1 || tau.dim() < 1) throw DegenerateInputError("lemma constants need positive-dimensional simplices");
  const double rs = rad_measured(sigma, x), ds = diam_measured(sigma, x);
  const double rt = rad_measured(tau, y), dt = diam_measured(tau, y);
  if (rs <= 0 || ds <= 0 || rt <= 0 || dt <= 0) throw DegenerateInputError("zero radius or diameter");
  return {dt / (2 * rs), 2 * rt / ds};
}

Report verify_sandwich(const SimplicialMap& f, const Simplex& rho, double epsilon, const SandwichOptions& options) {
  const Simplex sigma = only_maximal(*f.domain(), "domain");
  const Simplex tau = only_maximal(*f.codomain(), "codomain");
  if (!(f.apply(sigma) == tau)) throw DomainMismatchError("map is not onto " + tau.to_string());
  if (!rho.is_face_of(tau) || rho == tau) throw OutOfRangeError(rho.to_string() + " is not a proper face of " + tau.to_string());
  if (epsilon < 0) throw OutOfRangeError("negative epsilon");

  const auto cx = identity_realization(f.domain());
  const auto cy = identity_realization(f.codomain());
  const auto c = lemma_constants(sigma, cx, tau, cy);

  std::vector<VertexId> pre_ids, rest_ids;
  for (VertexId v : sigma) (rho.contains(f(v)) ? pre_ids : rest_ids).push_back(v);

  Report rep;
  rep.title = "sandwich " + sigma.to_string() + " -> " + tau.to_string() + " around " + rho.to_string();
  rep.note("k", format_number(c.k));
  rep.note("K", format_number(c.K));
  rep.note("epsilon", format_number(epsilon));

  auto& join = rep.add("join decomposition", true);
  if (!pre_ids.empty() && !rest_ids.empty() && pre_ids.size() + rest_ids.size() == sigma.size())
    join.add_pass();
  else
    join.add_fail([&] { return "preimages do not split " + sigma.to_string(); });
  if (pre_ids.empty()) return rep;
  const Simplex pre = from_ids(pre_ids);
  rep.note("preimage of face", pre.to_string());

  auto& inner = rep.add("inner inclusion");
  auto& outer = rep.add("outer inclusion");
  Counts printed_inner, printed_outer;

  std::mt19937_64 rng(derive_seed(options.seed, {sigma.size(), tau.size(), rho.size()}));
  const int n = static_cast<int>(sigma.size());
  const double reach = std::min(1.0, 2.0 * std::max(c.k, c.K) * epsilon + 1e-3);
  for (std::size_t s = 0; s < options.samples; ++s) {
    Eigen::VectorXd w = random_barycentric(rng, n);
    if (s % 2 == 1) {
      // pull toward the preimage face to populate the thresholds
      Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
      const Eigen::VectorXd yw = random_barycentric(rng, static_cast<int>(pre.size()));
      for (std::size_t a = 0; a < pre.size(); ++a) y(sigma.index_of(pre[a])) = yw(static_cast<Eigen::Index>(a));
      w = y + uniform01(rng) * reach * (w - y);
    }
    const auto x = make_point(sigma, w);
    const auto fx = make_point(tau, push_forward(f, sigma, w, tau));
    const double a = dist_point_to_face(x, pre, *f.domain());
    const double b = dist_point_to_face(fx, rho, *f.codomain());
    auto witness = [&, a, b] {
      return x.to_string() + " d(x,pre)=" + format_number(a) + " d(f(x),rho)=" + format_number(b);
    };
    record(inner, implication(b, c.K * epsilon, a, epsilon, options.margin), witness);
    record(outer, implication(a, epsilon, b, c.k * epsilon, options.margin), witness);
    printed_inner.add(implication(b, c.k * epsilon, a, epsilon, options.margin));
    printed_outer.add(implication(a, epsilon, b, c.K * epsilon, options.margin));
  }
  rep.note("inner inclusion with k as printed", printed_inner.text());
  rep.note("outer inclusion with K as printed", printed_outer.text());
  return rep;
}

SqueezeConstants squeeze_constants(const RecordPtr& x, const RecordPtr& y, std::optional<double> epsilon) {
  const auto& rx = x->realization(0);
  const auto& ry = y->realization(0);
  SqueezeConstants s;
  const double mx = mesh(rx), cx = comesh(rx), my = mesh(ry), cy = comesh(ry);
  s.k = my / (2 * cx);
  s.K = 2 * cy / mx;
  s.eps_xy = std::min(s.k * cx, s.k * cy / s.K);
  if (!epsilon) return s;
  s.epsilon = *epsilon;
  if (!(*epsilon > 0) || !(*epsilon < s.eps_xy))
    throw OutOfRangeError("epsilon " + format_number(*epsilon) + " must lie in (0, " + format_number(s.eps_xy) + ")");
  s.depth_x = subdivision_depth(x, *epsilon / s.k);
  s.depth_y = subdivision_depth(y, s.K * *epsilon / s.k);
  s.depth = std::max(s.depth_x, s.depth_y);
  return s;
}

PLMap EquivalenceData::f_map() const { return PLMap::from_simplicial(x, f_level, f, y->realization(0)); }
PLMap EquivalenceData::g_map() const { return PLMap::from_simplicial(y, g_level, g, x->realization(0)); }

HomotopyChain straight_line_to_identity(const std::string& label, const RecordPtr& rec, int level,
                                        const SimplicialMap& from, const Realization& target) {
  return HomotopyChain({straight_line(label, PLMap::from_simplicial(rec, level, from, target),
                                      PLMap::identity(rec, level))});
}

double ControlMeasurements::max() const { return std::max({f, g, h1, h2}); }

ControlMeasurements measure_controls(const EquivalenceData& d, const SampleOptions& sampling) {
  const MetricContext ctx(d.y->geometry());
  const auto f = d.f_map().as_function();
  const auto g = d.g_map().as_function();
  const PointFunction id = [](const PointInComplex& p) { return p; };
  ControlMeasurements m;
  m.f = control_of_map(f, f, d.x->realization(0), ctx, sampling).bound;
  m.g = control_of_map(compose_functions(f, g), id, d.y->realization(0), ctx, sampling).bound;
  for (int j = 0; j <= sampling.time_steps; ++j) {
    const double t = static_cast<double>(j) / sampling.time_steps;
    const PointFunction h1 = [&d, t](const PointInComplex& p) { return d.h1.eval(p, t); };
    const PointFunction h2 = [&d, t](const PointInComplex& p) { return d.h2.eval(p, t); };
    m.h1 = std::max(m.h1, control_of_map(h1, id, d.y->realization(0), ctx, sampling).bound);
    m.h2 = std::max(m.h2, control_of_map(compose_functions(f, h2), f, d.x->realization(0), ctx, sampling).bound);
  }
  return m;
}

PLMap TriangularEquivalence::f_tri_map() const {
  return PLMap::from_simplicial(rx.record, f_tri_level(), f_tri, ry.record->realization(0));
}
PLMap TriangularEquivalence::g_tri_map() const {
  return PLMap::from_simplicial(ry.record, g_tri_level(), g_tri, rx.record->realization(0));
}

std::vector<Simplex> image_support(const SubdivisionRecord& rec, int level, int target, const SimplicialMap& f) {
  const auto& base = *rec.complex(target);
  std::vector<std::vector<VertexId>> sets(base.size());
  for (const auto& w : rec.complex(level)->vertices()) {
    const Simplex c = rec.carrier(w, level, target);
    sets[*base.index_of(c)].push_back(f(w.front()));
  }
  for (int dim = 1; dim <= base.dim(); ++dim)
    for (const auto& s : base.simplices(dim)) {
      auto& own = sets[*base.index_of(s)];
      for (std::size_t k = 0; k < s.size(); ++k) {
        const auto& sub = sets[*base.index_of(s.without(k))];
        own.insert(own.end(), sub.begin(), sub.end());
      }
      std::sort(own.begin(), own.end());
      own.erase(std::unique(own.begin(), own.end()), own.end());
    }
  std::vector<Simplex> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.push_back(from_ids(std::move(s)));
  return out;
}

CheckTally triangular_over(const SimplicialMap& g, const SubdivisionRecord& yrec, int g_level, int y_target,
                           const SimplicialMap& f, const SubdivisionRecord& xrec, int f_level, int x_target,
                           std::string name) {
  CheckTally tally;
  tally.name = std::move(name);
  tally.exact = true;
  const auto support = image_support(xrec, f_level, x_target, f);
  const auto& xbase = *xrec.complex(x_target);
  g.domain()->for_each([&](const Simplex& tau) {
    const Simplex img = g.apply(tau);
    const Simplex& s = support[*xbase.index_of(img)];
    const Simplex carrier = yrec.carrier(tau, g_level, y_target);
    if (s.is_face_of(carrier))
      tally.add_pass();
    else
      tally.add_fail([&] {
        return tau.to_string() + " -> " + img.to_string() + " whose image " + s.to_string() + " leaves " +
               carrier.to_string();
      });
  });
  return tally;
}

TriangularEquivalence squeeze(const EquivalenceData& data, const SqueezeOptions& options) {
  TriangularEquivalence t;
  t.data = data;
  t.constants = squeeze_constants(data.x, data.y, data.epsilon);
  t.controls = measure_controls(data, options.sampling);
  if (!(t.controls.max() < t.constants.eps_xy))
    throw OutOfRangeError("control precondition fails: f=" + format_number(t.controls.f) +
                          " g=" + format_number(t.controls.g) + " h1=" + format_number(t.controls.h1) +
                          " h2=" + format_number(t.controls.h2) + " against " + format_number(t.constants.eps_xy));
  const int i = t.constants.depth;
  const auto xrec = iterate_subdivide(data.x, data.f_level + i);
  const auto yrec = iterate_subdivide(data.y, data.g_level + i);
  t.rx = build_retraction(xrec, data.epsilon / t.constants.k, i);
  t.ry = build_retraction(yrec, t.constants.K * data.epsilon / t.constants.k, i);

  const auto sd_f = subdivide_map(data.f, *t.rx.record, data.f_level, *t.ry.record, 0, i);
  const auto sd_g = subdivide_map(data.g, *t.ry.record, data.g_level, *t.rx.record, 0, i);
  t.f_tri = compose(t.ry.r, sd_f);
  t.g_tri = compose(t.rx.r, sd_g);

  const auto f = data.f_map().as_function();
  const auto g = data.g_map().as_function();
  const auto r_x = t.rx.r_map.as_function();
  const auto r_y = t.ry.r_map.as_function();

  const auto px = relabel(t.rx.P.reversed(), "P_X back");
  const auto py = relabel(t.ry.P.reversed(), "P_Y back");
  t.h_y = relabel(px.precompose(g).postcompose(compose_functions(r_y, f)), "r_Y f")
              .then(relabel(data.h1.postcompose(r_y), "r_Y after"))
              .then(py);
  t.h_x = relabel(py.precompose(f).postcompose(compose_functions(r_x, g)), "r_X g")
              .then(relabel(data.h2.postcompose(r_x), "r_X after"))
              .then(px);
  t.connect = relabel(t.ry.P.precompose(f), "P_Y after f");

  t.certificate = verify_triangular_equivalence(t, options);
  return t;
}

Report verify_triangular_equivalence(const TriangularEquivalence& t, const SqueezeOptions& options) {
  Report rep;
  rep.title = "triangular equivalence";
  const auto& c = t.constants;
  rep.note("k", format_number(c.k));
  rep.note("K", format_number(c.K));
  rep.note("eps(X,Y)", format_number(c.eps_xy));
  rep.note("epsilon", format_number(c.epsilon));
  rep.note("depth", std::to_string(c.depth) + " (X " + std::to_string(c.depth_x) + ", Y " + std::to_string(c.depth_y) + ")");
  rep.note("control f", format_number(t.controls.f));
  rep.note("control g", format_number(t.controls.g));
  rep.note("control h1", format_number(t.controls.h1));
  rep.note("control h2", format_number(t.controls.h2));

  const auto& xrec = *t.rx.record;
  const auto& yrec = *t.ry.record;
  const int fl = t.f_tri_level(), gl = t.g_tri_level();

  // f_tri over itself, then g_tri over f_tri
  auto& self = rep.add("f_tri triangular over itself", true);
  const auto st = is_triangular(t.f_tri, t.f_tri);
  if (st)
    self.add_pass();
  else
    self.add_fail([&] { return st.witness->to_string(); });
  rep.checks.push_back(triangular_over(t.g_tri, yrec, gl, 0, t.f_tri, xrec, fl, 0, "g_tri triangular over f_tri"));

  const auto f_tri = t.f_tri_map();
  const auto g_tri = t.g_tri_map();
  const auto f = t.data.f_map();

  // endpoints on sampled points
  auto& ends = rep.add("homotopy endpoints");
  {
    std::mt19937_64 rng(derive_seed(options.sampling.seed, {1}));
    const auto yt = yrec.complex(0)->maximal_simplices();
    const auto xt = xrec.complex(0)->maximal_simplices();
    auto random_in = [&](const SubdivisionRecord& rec, const std::vector<Simplex>& tops) {
      const Simplex& s = tops[rng() % tops.size()];
      return combine(rec.realization(0).positions_of(s), random_barycentric(rng, static_cast<int>(s.size())),
                     rec.geometry().get());
    };
    auto compare = [&](const PointInComplex& a, const PointInComplex& b, const char* what, const PointInComplex& at) {
      const double gap = chart_gap(a, b);
      if (gap <= 1e-12)
        ends.add_pass();
      else
        ends.add_fail([&] { return std::string(what) + " at " + at.to_string() + " off by " + format_number(gap); });
    };
    for (std::size_t s = 0; s < options.endpoint_samples; ++s) {
      const auto y = random_in(yrec, yt);
      compare(t.h_y.eval(y, 0.0), f_tri(g_tri(y)), "H_Y(.,0) = f_tri g_tri", y);
      compare(t.h_y.eval(y, 1.0), y, "H_Y(.,1) = id", y);
      const auto x = random_in(xrec, xt);
      compare(t.h_x.eval(x, 0.0), g_tri(f_tri(x)), "H_X(.,0) = g_tri f_tri", x);
      compare(t.h_x.eval(x, 1.0), x, "H_X(.,1) = id", x);
    }
  }

  // f ≃ f_tri, at the vertices where both are determined
  auto& conn = rep.add("f homotopic to f_tri", true);
  for (const auto& w : xrec.complex(fl)->vertices()) {
    const auto& p = xrec.position(fl, w.front());
    const double g0 = chart_gap(t.connect.eval(p, 0.0), f(p));
    const double g1 = chart_gap(t.connect.eval(p, 1.0), f_tri(p));
    if (g0 <= 1e-12 && g1 <= 1e-12)
      conn.add_pass();
    else
      conn.add_fail([&] { return w.to_string() + " endpoints off by " + format_number(std::max(g0, g1)); });
  }

  const auto& sampling = options.sampling;
  const auto ts_y = time_grid(t.h_y, sampling.time_steps);
  const auto ts_x = time_grid(t.h_x, sampling.time_steps);
  const auto& ybase = *yrec.complex(0);

  // H_Y keeps the interior of each simplex of Y inside it
  {
    const auto tallies = segment_tallies(rep, "H_Y triangular", t.h_y);
    std::uint64_t key = 0;
    ybase.for_each([&](const Simplex& sigma) {
      for (const auto& y : interior_points(yrec, 0, sigma, sampling, derive_seed(sampling.seed, {2, key++})))
        for (double time : ts_y) {
          const auto seg = t.h_y.locate_time(time).first;
          const auto p = t.h_y.eval(y, time);
          record(*tallies[seg], membership(yrec, p, sigma, options), [&] {
            return "sigma " + sigma.to_string() + " y " + y.to_string() + " t=" + format_number(time) + " -> " +
                   p.to_string();
          });
        }
    });
  }

  // H_X over f_tri: a point over the interior of σ stays over σ
  {
    const auto tallies = segment_tallies(rep, "H_X triangular", t.h_x);
    std::vector<std::vector<Simplex>> over(ybase.size());
    xrec.complex(fl)->for_each([&](const Simplex& tau) { over[*ybase.index_of(t.f_tri.apply(tau))].push_back(tau); });
    std::uint64_t key = 0;
    ybase.for_each([&](const Simplex& sigma) {
      const auto& pre = over[*ybase.index_of(sigma)];
      ++key;
      if (pre.empty()) return;
      std::mt19937_64 rng(derive_seed(sampling.seed, {3, key}));
      const std::size_t budget =
          barycentric_grid(static_cast<int>(sigma.size()), sampling.grid_resolution, true).size() +
          static_cast<std::size_t>(sampling.random_per_simplex);
      for (std::size_t s = 0; s < budget; ++s) {
        const Simplex& tau = pre[s < pre.size() ? s : rng() % pre.size()];
        const auto pts = xrec.realization(fl).positions_of(tau);
        const auto x = combine(pts, random_barycentric(rng, static_cast<int>(tau.size())), xrec.geometry().get());
        for (double time : ts_x) {
          const auto seg = t.h_x.locate_time(time).first;
          const auto p = f_tri(t.h_x.eval(x, time));
          record(*tallies[seg], membership(yrec, p, sigma, options), [&] {
            return "sigma " + sigma.to_string() + " x " + x.to_string() + " t=" + format_number(time) + " -> " +
                   p.to_string();
          });
        }
      }
    });
  }
  return rep;
}

Report conjecture_probe(const TriangularEquivalence& t) {
  Report rep;
  rep.title = "experimental: triangularity over Sd Y";
  rep.note("status", "experimental; a failure only says this pair is not already triangular over Sd Y");
  const int fl = t.f_tri_level(), gl = t.g_tri_level();
  const auto xrec = iterate_subdivide(t.rx.record, fl + 1);
  const auto yrec = iterate_subdivide(t.ry.record, gl + 1);
  // Sd f_tri : Sd^{a+i+1} X -> Sd Y and Sd g_tri : Sd^{b+i+1} Y -> Sd X
  const auto sd_f = subdivide_map(t.f_tri, *xrec, fl, *yrec, 0, 1);
  const auto sd_g = subdivide_map(t.g_tri, *yrec, gl, *xrec, 0, 1);
  rep.checks.push_back(triangular_over(sd_g, *yrec, gl + 1, 1, sd_f, *xrec, fl + 1, 1, "Sd g_tri over Sd f_tri"));
  return rep;
}

}  // namespace trisq
