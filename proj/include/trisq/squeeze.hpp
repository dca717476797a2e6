#pragma once

#include <optional>
#include <string>

#include "trisq/retraction.hpp"

namespace trisq {

struct LemmaConstants {
  double k = 0;  // diam(τ) / 2 rad(σ)
  double K = 0;  // 2 rad(τ) / diam(σ)
};

/// Constants for a simplicial surjection of σ onto τ, both measured in
/// their realisations. Throws DegenerateInputError for a vertex.
LemmaConstants lemma_constants(const Simplex& sigma, const Realization& x, const Simplex& tau, const Realization& y);

struct SandwichOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 20240917;
  double margin = 1e-9;
};

/// Sampled check of the preimage sandwich for `f` (onto a single simplex τ
/// from a single simplex σ) around the proper face `rho` of τ:
///   f^-1(N_{Kε} ρ) ⊂ N_ε(f^-1 ρ) ⊂ f^-1(N_{kε} ρ).
/// The inclusions with k and K the other way round are tallied in the notes.
/// Also checks σ = f^-1(ρ) * f^-1(ρ') combinatorially.
Report verify_sandwich(const SimplicialMap& f, const Simplex& rho, double epsilon, const SandwichOptions& options = {});

struct SqueezeConstants {
  double k = 0;       // mesh(Y) / 2 comesh(X)
  double K = 0;       // 2 comesh(Y) / mesh(X)
  double eps_xy = 0;  // min(k comesh(X), k comesh(Y) / K)
  double epsilon = 0;
  int depth_x = 0;  // for the threshold ε/k on X
  int depth_y = 0;  // for the threshold Kε/k on Y
  int depth = 0;
};

/// k, K and ε(X,Y) from the measured level-0 realisations; with an ε also the
/// common depth. Throws OutOfRangeError unless 0 < ε < ε(X,Y).
SqueezeConstants squeeze_constants(const RecordPtr& x, const RecordPtr& y, std::optional<double> epsilon = {});

/// A simplicial homotopy equivalence f : Sd^a X -> Y with inverse
/// g : Sd^b Y -> X. Points of X live in the geometry of `x`, which may be a
/// declared subdivision of another complex.
struct EquivalenceData {
  RecordPtr x;
  RecordPtr y;
  int f_level = 0;
  SimplicialMap f;
  int g_level = 0;
  SimplicialMap g;
  HomotopyChain h1;  // f∘g ≃ id_Y on Y
  HomotopyChain h2;  // g∘f ≃ id_X on X
  double epsilon = 0;

  PLMap f_map() const;
  PLMap g_map() const;
};

/// One straight segment from the simplicial map `from` (on `level` of `rec`,
/// into `target`) to the identity of the geometry of `rec`.
HomotopyChain straight_line_to_identity(const std::string& label, const RecordPtr& rec, int level,
                                        const SimplicialMap& from, const Realization& target);

struct ControlMeasurements {
  double f = 0;
  double g = 0;
  double h1 = 0;
  double h2 = 0;
  double max() const;
};

/// Sampled controls with X controlled by f and Y by the identity.
ControlMeasurements measure_controls(const EquivalenceData& data, const SampleOptions& sampling = {});

struct SqueezeOptions {
  SampleOptions sampling;
  std::size_t endpoint_samples = 1000;
  double tolerance = 1e-9;  // closed-simplex membership
  double unknown_band = 1e-7;
};

struct TriangularEquivalence {
  EquivalenceData data;
  SqueezeConstants constants;
  ControlMeasurements controls;
  RetractionBundle rx;
  RetractionBundle ry;
  SimplicialMap f_tri;  // Sd^{a+i} X -> Y
  SimplicialMap g_tri;  // Sd^{b+i} Y -> X
  HomotopyChain h_y;    // f_tri∘g_tri ≃ id_Y
  HomotopyChain h_x;    // g_tri∘f_tri ≃ id_X
  HomotopyChain connect;  // f ≃ f_tri
  Report certificate;

  PLMap f_tri_map() const;
  PLMap g_tri_map() const;
  int f_tri_level() const { return data.f_level + constants.depth; }
  int g_tri_level() const { return data.g_level + constants.depth; }
};

/// Builds the triangular equivalence and certifies it. Refuses (OutOfRangeError
/// carrying the measured controls) when the controls are not below ε(X,Y)
/// or ε itself is not.
TriangularEquivalence squeeze(const EquivalenceData& data, const SqueezeOptions& options = {});

/// Re-runs every certification check.
Report verify_triangular_equivalence(const TriangularEquivalence& t, const SqueezeOptions& options = {});

/// Union of f(w) over the vertices w of `level` whose carrier in level
/// `target` is a face of ρ, for every simplex ρ of that target level.
std::vector<Simplex> image_support(const SubdivisionRecord& rec, int level, int target, const SimplicialMap& f);

/// Exact: g(τ) lies in the preimage of the carrier of τ under `f`, for every
/// simplex τ of g's domain; carriers taken in level `target` of `yrec`,
/// preimages through level `x_target` of `xrec`.
CheckTally triangular_over(const SimplicialMap& g, const SubdivisionRecord& yrec, int g_level, int y_target,
                           const SimplicialMap& f, const SubdivisionRecord& xrec, int f_level, int x_target,
                           std::string name);

/// Experimental: whether the certified pair is already triangular over Sd Y.
Report conjecture_probe(const TriangularEquivalence& t);

}  // namespace trisq
