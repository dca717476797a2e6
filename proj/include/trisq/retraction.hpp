#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "trisq/homotopy.hpp"
#include "trisq/report.hpp"
#include "trisq/sampling.hpp"

namespace trisq {

/// Picks the image of the barycentre of a simplex; must return one of its vertices.
using VertexChoice = std::function<VertexId(const Simplex&)>;

/// r_1 : Sd X -> X sending each barycentre to a vertex of its simplex
/// (smallest id by default).
SimplicialMap build_r1(const SubdivisionRecord& x, const VertexChoice& choice = {});

/// r_j : Sd^j X -> Sd^{j-1} X for j >= 2. A vertex τ̂ goes to the vertex of τ
/// closest to the face of its Sd X carrier opposite the top barycentre, with
/// ties to the smallest id; vertices of Sd X are fixed.
SimplicialMap build_rj(const SubdivisionRecord& x, int j);

/// Smallest i with mesh(Sd^i X) < comesh(X) - ε, measured level by level.
/// Throws OutOfRangeError unless 0 < ε < comesh(X).
int subdivision_depth(const RecordPtr& x, double epsilon, std::size_t budget = kDefaultSimplexBudget);

/// Upper estimate of subdivision_depth from the contraction bound alone.
int subdivision_depth_bound(int dim, double mesh, double comesh, double epsilon);

struct RetractionBundle {
  RecordPtr record;  // level 0 is X; depth >= `depth`
  double epsilon = 0;
  int depth = 0;
  std::vector<SimplicialMap> stages;      // stages[j-1] = r_j
  std::vector<SimplicialMap> composites;  // composites[k-1] = r_k ∘ ... ∘ r_depth
  SimplicialMap r;                        // Sd^depth X -> X
  PLMap r_map;                            // r on points of the geometry
  HomotopyChain P;                        // id at t = 0, r at t = 1
};

/// Builds r = r_1 ∘ ... ∘ r_i and P : id ≃ r. With no depth given the
/// smallest admissible one is used; a smaller explicit depth is refused.
RetractionBundle build_retraction(const RecordPtr& x, double epsilon, std::optional<int> depth = std::nullopt,
                                  const VertexChoice& choice = {});

inline PointInComplex eval_homotopy(const HomotopyChain& p, const PointInComplex& x, double t) { return p.eval(x, t); }

struct RetractionCheckOptions {
  SampleOptions sampling;
  std::size_t samples = 10000;  // collar samples, split over the simplices of X
  std::size_t monotone_samples = 1000;
  int epsilon_grid = 8;
  double margin = 1e-7;
};

Report verify_retraction(const RetractionBundle& bundle, double epsilon, const RetractionCheckOptions& options = {});

/// Points of the closed star of `sigma` in level 0 of `record`, concentrated
/// within about 2ε of the realised simplex.
std::vector<PointInComplex> collar_samples(const SubdivisionRecord& record, const Simplex& sigma, double epsilon,
                                           std::size_t count, std::uint64_t seed);

}  // namespace trisq
