#include "trisq/retraction.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "trisq/errors.hpp"

namespace trisq {

namespace {

constexpr double kDepthMargin = 1e-9;
constexpr double kTieTolerance = 1e-12;

RecordPtr depth_record(const RecordPtr& x, double epsilon, std::size_t budget, int& depth) {
  if (!(epsilon > 0)) throw OutOfRangeError("epsilon must be positive");
  const double c = comesh(x->realization(0));
  if (epsilon >= c)
    throw OutOfRangeError("epsilon " + format_number(epsilon) + " must be below comesh(X) = " + format_number(c));
  const double target = c - epsilon - kDepthMargin;
  RecordPtr rec = x;
  for (int i = 0;; ++i) {
    if (i > rec->depth()) rec = barycentric_subdivide(*rec, budget);
    if (mesh(rec->realization(i)) < target) {
      depth = i;
      return rec;
    }
  }
}

PLMap realised(const RecordPtr& rec, int level, const SimplicialMap& f, int target_level) {
  return PLMap::from_simplicial(rec, level, f, rec->realization(target_level));
}

double dist_to_face_of(const SubdivisionRecord& rec, const PointInComplex& p, const Simplex& sigma) {
  return dist_point_to_realized(p, rec.realization(0).positions_of(sigma), *rec.geometry());
}

double dist_to_boundary_of(const SubdivisionRecord& rec, const PointInComplex& p, const Simplex& sigma) {
  return dist_to_boundary(p, rec.realization(0).positions_of(sigma), *rec.geometry());
}

bool lies_in_base(const SubdivisionRecord& rec, const PointInComplex& p, const Simplex& sigma) {
  return rec.locate(p, 0).carrier.is_face_of(sigma);
}

}  // namespace

SimplicialMap build_r1(const SubdivisionRecord& x, const VertexChoice& choice) {
  const auto& sd = x.complex(1);
  std::vector<VertexId> images;
  images.reserve(sd->num_vertices());
  for (const auto& w : sd->vertices()) {
    const Simplex& sigma = x.flag_label(1, w.front());
    const VertexId v = choice ? choice(sigma) : sigma.front();
    if (!sigma.contains(v))
      throw OutOfRangeError("vertex choice " + std::to_string(v) + " is not a vertex of " + sigma.to_string());
    images.push_back(v);
  }
  return build_simplicial_map(std::move(images), sd, x.complex(0));
}

SimplicialMap build_rj(const SubdivisionRecord& x, int j) {
  if (j < 2) throw OutOfRangeError("build_rj needs j >= 2");
  const auto& level = x.complex(j);
  const auto& geometry = *x.geometry();
  std::vector<VertexId> images;
  images.reserve(level->num_vertices());
  for (const auto& w : level->vertices()) {
    const Simplex& tau = x.flag_label(j, w.front());
    const Simplex rho = x.carrier(tau, j - 1, 1);
    if (rho.size() == 1) {
      images.push_back(tau.front());
      continue;
    }
    // drop the barycentre of the largest simplex of the flag
    std::size_t top = 0;
    for (std::size_t k = 1; k < rho.size(); ++k)
      if (x.flag_label(1, rho[k]).size() > x.flag_label(1, rho[top]).size()) top = k;
    const auto face = x.realization(1).positions_of(rho.without(top));
    VertexId best = tau.front();
    double best_d = kInfinity;
    for (VertexId v : tau) {
      const double d = dist_point_to_realized(x.position(j - 1, v), face, geometry);
      if (d < best_d - kTieTolerance) {
        best_d = d;
        best = v;
      }
    }
    images.push_back(best);
  }
  return build_simplicial_map(std::move(images), level, x.complex(j - 1));
}

int subdivision_depth(const RecordPtr& x, double epsilon, std::size_t budget) {
  int depth = 0;
  depth_record(x, epsilon, budget, depth);
  return depth;
}

int subdivision_depth_bound(int dim, double mesh, double comesh, double epsilon) {
  if (!(epsilon > 0) || epsilon >= comesh) throw OutOfRangeError("epsilon must lie in (0, comesh)");
  const double target = comesh - epsilon;
  if (mesh < target) return 0;
  if (dim < 1) return 0;
  const double q = static_cast<double>(dim) / (dim + 1.0);
  int i = static_cast<int>(std::ceil(std::log(target / mesh) / std::log(q)));
  while (std::pow(q, i) * mesh >= target) ++i;
  return i;
}

RetractionBundle build_retraction(const RecordPtr& x, double epsilon, std::optional<int> depth,
                                  const VertexChoice& choice) {
  RetractionBundle b;
  b.epsilon = epsilon;
  int minimum = 0;
  RecordPtr rec = x;
  if (x->complex(0)->dim() >= 1) rec = depth_record(x, epsilon, kDefaultSimplexBudget, minimum);
  if (depth && *depth < minimum)
    throw OutOfRangeError("depth " + std::to_string(*depth) + " is below the required minimum " + std::to_string(minimum));
  b.depth = depth.value_or(minimum);
  b.record = iterate_subdivide(rec, b.depth);
  const int i = b.depth;

  for (int j = 1; j <= i; ++j) b.stages.push_back(j == 1 ? build_r1(*b.record, choice) : build_rj(*b.record, j));
  b.composites.resize(static_cast<std::size_t>(i));
  for (int k = i; k >= 1; --k) {
    const auto& rk = b.stages[static_cast<std::size_t>(k - 1)];
    b.composites[static_cast<std::size_t>(k - 1)] = k == i ? rk : compose(rk, b.composites[static_cast<std::size_t>(k)]);
  }
  b.r = i >= 1 ? b.composites[0] : identity_map(b.record->complex(0));
  b.r_map = realised(b.record, i, b.r, 0);

  std::vector<HomotopySegment> segments;
  for (int k = i; k >= 1; --k) {
    PLMap from = k == i ? PLMap::identity(b.record, i) : realised(b.record, i, b.composites[static_cast<std::size_t>(k)], k);
    PLMap to = realised(b.record, i, b.composites[static_cast<std::size_t>(k - 1)], k - 1);
    segments.push_back(straight_line("r_" + std::to_string(k), std::move(from), std::move(to)));
  }
  b.P = HomotopyChain(std::move(segments));
  return b;
}

std::vector<PointInComplex> collar_samples(const SubdivisionRecord& record, const Simplex& sigma, double epsilon,
                                           std::size_t count, std::uint64_t seed) {
  const auto& x = *record.complex(0);
  const auto& real = record.realization(0);
  std::vector<Simplex> tops;
  for (const auto& s : x.cofaces(sigma))
    if (x.cofaces(s).size() == 1) tops.push_back(s);
  std::mt19937_64 rng(seed);
  std::vector<PointInComplex> out;
  out.reserve(count);
  const auto base = real.positions_of(sigma);
  for (std::size_t k = 0; k < count; ++k) {
    const Simplex& top = tops[k % tops.size()];
    const auto verts = real.positions_of(top);
    const auto z = combine(verts, random_barycentric(rng, static_cast<int>(top.size())), real.geometry.get());
    if (k % 4 == 3 || top == sigma) {
      out.push_back(z);
      continue;
    }
    const auto y = combine(base, random_barycentric(rng, static_cast<int>(sigma.size())), real.geometry.get());
    const double dz = dist_point_to_realized(z, base, *real.geometry);
    const double reach = dz > 0 ? std::min(1.0, 2 * epsilon / dz) : 1.0;
    out.push_back(interpolate(y, z, reach * uniform01(rng), *real.geometry));
  }
  return out;
}

Report verify_retraction(const RetractionBundle& b, double epsilon, const RetractionCheckOptions& options) {
  const auto& rec = *b.record;
  const auto& x = *rec.complex(0);
  const int i = b.depth;
  const double margin = options.margin;
  Report report;
  report.title = "retraction";
  report.note("depth", std::to_string(i));
  report.note("epsilon", format_number(epsilon));
  report.note("monotone stage 1", "exempt");

  // each stage is a simplicial approximation to the identity
  auto& stage_faces = report.add("stage face condition", true);
  for (int j = 1; j <= i; ++j) {
    const auto& rj = b.stages[static_cast<std::size_t>(j - 1)];
    rec.complex(j)->for_each([&](const Simplex& tau) {
      if (rj.apply(tau).is_face_of(rec.carrier(tau, j, j - 1)))
        stage_faces.add_pass();
      else
        stage_faces.add_fail([&] { return "r_" + std::to_string(j) + " on " + tau.to_string(); });
    });
  }

  auto& r_faces = report.add("r inside carrier", true);
  std::map<Simplex, std::size_t> onto;
  auto& boundary = report.add("off dual cell to boundary", true);
  auto& in_cell = report.add("onto simplex in dual cell", true);
  rec.complex(i)->for_each([&](const Simplex& tau) {
    const Simplex c = rec.carrier(tau, i, 0);
    const Simplex image = b.r.apply(tau);
    if (image.is_face_of(c))
      r_faces.add_pass();
    else
      r_faces.add_fail([&] { return tau.to_string() + " -> " + image.to_string(); });
    if (i == 0) return;
    for (const auto& sigma : x.cofaces(c)) {
      if (sigma.dim() < 1) continue;
      const VertexId hat = rec.barycentre_vertex(sigma, 0, i);
      const bool in_star = rec.complex(i)->contains(simplex_union(tau, Simplex::vertex(hat)));
      if (!tau.contains(hat)) {
        if (image != sigma)
          boundary.add_pass();
        else
          boundary.add_fail([&] { return tau.to_string() + " in " + sigma.to_string(); });
      }
      if (c == sigma && tau.dim() == sigma.dim() && image == sigma) {
        ++onto[sigma];
        if (in_star)
          in_cell.add_pass();
        else
          in_cell.add_fail([&] { return tau.to_string() + " onto " + sigma.to_string(); });
      }
    }
  });
  if (i >= 1) {
    auto& unique = report.add("unique onto simplex", true);
    x.for_each([&](const Simplex& sigma) {
      if (sigma.dim() < 1) return;
      if (onto[sigma] == 1)
        unique.add_pass();
      else
        unique.add_fail([&] { return sigma.to_string() + " has " + std::to_string(onto[sigma]) + " onto simplices"; });
    });

    // the dual cell of the barycentre stays ε away from the boundary; the
    // distance to ∂σ is concave on σ, so vertices suffice
    auto& middle = report.add("dual cell clear of boundary collar", true);
    x.for_each([&](const Simplex& sigma) {
      if (sigma.dim() < 1) return;
      const VertexId hat = rec.barycentre_vertex(sigma, 0, i);
      std::vector<VertexId> cell{hat};
      for (const auto& e : rec.complex(i)->cofaces(Simplex::vertex(hat)))
        if (e.dim() == 1 && rec.carrier(e, i, 0).is_face_of(sigma)) cell.push_back(e[0] == hat ? e[1] : e[0]);
      for (VertexId w : cell) {
        const double d = dist_to_boundary_of(rec, rec.position(i, w), sigma);
        if (d >= epsilon)
          middle.add_pass();
        else
          middle.add_fail([&] { return "vertex " + std::to_string(w) + " of " + sigma.to_string() + " at " + format_number(d); });
      }
    });
  }

  // distance to the boundary never grows: vertices, then random points
  auto& mono_v = report.add("stage monotone at vertices", true);
  auto& mono_s = report.add("stage monotone sampled");
  for (int j = 2; j <= i; ++j) {
    const auto& rj = b.stages[static_cast<std::size_t>(j - 1)];
    for (const auto& w : rec.complex(j)->vertices()) {
      const Simplex sigma = rec.vertex_carrier(j, w.front());
      if (sigma.dim() < 1) continue;
      const double before = dist_to_boundary_of(rec, rec.position(j, w.front()), sigma);
      const double after = dist_to_boundary_of(rec, rec.position(j - 1, rj(w.front())), sigma);
      if (after <= before + 1e-12)
        mono_v.add_pass();
      else
        mono_v.add_fail([&] { return "r_" + std::to_string(j) + " at vertex " + std::to_string(w.front()); });
    }
    const PLMap rj_map = realised(b.record, j, rj, j - 1);
    std::vector<Simplex> tops = rec.complex(j)->maximal_simplices();
    std::mt19937_64 rng(derive_seed(options.sampling.seed, {1, static_cast<std::uint64_t>(j)}));
    const std::size_t per_stage = std::max<std::size_t>(1, options.monotone_samples / static_cast<std::size_t>(i - 1));
    for (std::size_t k = 0; k < per_stage; ++k) {
      const Simplex& tau = tops[rng() % tops.size()];
      const Simplex sigma = rec.carrier(tau, j, 0);
      if (sigma.dim() < 1) {
        mono_s.add_vacuous();
        continue;
      }
      const auto p = combine(rec.realization(j).positions_of(tau), random_barycentric(rng, static_cast<int>(tau.size())),
                             rec.geometry().get());
      const double before = dist_to_boundary_of(rec, p, sigma);
      const double after = dist_to_boundary_of(rec, rj_map(p), sigma);
      if (after <= before + 1e-12)
        mono_s.add_pass();
      else
        mono_s.add_fail([&] { return "r_" + std::to_string(j) + " at " + p.to_string(); });
    }
  }

  // sampled neighbourhood conditions in the collar of every simplex
  auto& collar = report.add("r maps collar into simplex");
  auto& stay = report.add("P keeps collar");
  auto& ends = report.add("P endpoints");
  std::vector<double> eps_grid;
  for (int k = 0; k < options.epsilon_grid; ++k)
    eps_grid.push_back(options.epsilon_grid == 1 ? epsilon : epsilon * k / (options.epsilon_grid - 1));
  std::vector<double> times;
  for (int k = 0; k <= options.sampling.time_steps; ++k) times.push_back(static_cast<double>(k) / options.sampling.time_steps);

  const std::size_t per_simplex = std::max<std::size_t>(1, options.samples / x.size());
  std::size_t index = 0;
  x.for_each([&](const Simplex& sigma) {
    const auto pts = collar_samples(rec, sigma, epsilon, per_simplex, derive_seed(options.sampling.seed, {2, index++}));
    for (const auto& p : pts) {
      const double d = dist_to_face_of(rec, p, sigma);
      if (d < epsilon - margin) {
        if (lies_in_base(rec, b.r_map(p), sigma))
          collar.add_pass();
        else
          collar.add_fail([&] { return p.to_string() + " near " + sigma.to_string(); });
      } else if (d <= epsilon + margin) {
        collar.add_unknown();
      } else {
        collar.add_vacuous();
      }

      if (chart_gap(b.P.eval(p, 0.0), p) < 1e-12 && chart_gap(b.P.eval(p, 1.0), b.r_map(p)) < 1e-12)
        ends.add_pass();
      else
        ends.add_fail([&] { return p.to_string(); });

      std::vector<double> along;
      for (double t : times) along.push_back(dist_to_face_of(rec, b.P.eval(p, t), sigma));
      for (double e : eps_grid) {
        if (!(d < e - margin)) {
          stay.add_vacuous(along.size());
          continue;
        }
        for (std::size_t k = 0; k < along.size(); ++k) {
          if (along[k] < e)
            stay.add_pass();
          else if (along[k] < e + margin)
            stay.add_unknown();
          else
            stay.add_fail([&] {
              return p.to_string() + " near " + sigma.to_string() + " t=" + format_number(times[k]) +
                     " eps'=" + format_number(e) + " from " + format_number(d) + " to " + format_number(along[k]);
            });
        }
      }
    }
  });
  return report;
}

}  // namespace trisq
