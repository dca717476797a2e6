#include <doctest.h>

#include <cmath>
#include <random>

#include "instances.hpp"
#include "trisq/errors.hpp"
#include "trisq/squeeze.hpp"

using namespace trisq;
using namespace trisq::testing;

namespace {

const double kSqrt2 = std::sqrt(2.0);

SimplicialMap collapse() {
  auto s2 = standard_simplex(2);
  auto s1 = standard_simplex(1);
  return build_simplicial_map(std::vector<VertexId>{0, 0, 1}, s2, s1);
}

SqueezeOptions light() {
  SqueezeOptions o;
  o.sampling.random_per_simplex = 30;
  o.sampling.time_steps = 4;
  o.endpoint_samples = 200;
  return o;
}

}  // namespace

TEST_CASE("lemma constants from closed forms") {
  auto s2 = identity_realization(standard_simplex(2));
  auto s1 = identity_realization(standard_simplex(1));
  // rad(Δ²) = 1/√6, rad(Δ¹) = √2/2, diam = √2
  auto c = lemma_constants(Simplex{0, 1, 2}, s2, Simplex{0, 1}, s1);
  CHECK(c.k == doctest::Approx(kSqrt2 / (2 / std::sqrt(6.0))));
  CHECK(c.k == doctest::Approx(std::sqrt(3.0)));
  CHECK(c.K == doctest::Approx(1.0));
  c = lemma_constants(Simplex{0, 1}, s1, Simplex{0, 1}, s1);
  CHECK(c.k == doctest::Approx(1.0));
  CHECK(c.K == doctest::Approx(1.0));
  c = lemma_constants(Simplex{0, 1, 2}, s2, Simplex{0, 1, 2}, s2);
  CHECK(c.k == doctest::Approx(1.7320508));
  CHECK(c.K == doctest::Approx(0.5773503));
  CHECK_THROWS_AS(lemma_constants(Simplex{0}, s1, Simplex{0, 1}, s1), DegenerateInputError);
}

TEST_CASE("distances behind the collapse have closed forms") {
  // x = (a,b,c): d(x, edge 01) = c·√(3/2), d(f(x), vertex 0) = c·√2
  auto s2 = standard_simplex(2);
  auto s1 = standard_simplex(1);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const Eigen::VectorXd w = random_barycentric(rng, 3);
    const auto x = make_point(Simplex{0, 1, 2}, w);
    Eigen::VectorXd v(2);
    v << w(0) + w(1), w(2);
    const auto fx = make_point(Simplex{0, 1}, v);
    CHECK(dist_point_to_face(x, Simplex{0, 1}, *s2) == doctest::Approx(w(2) * std::sqrt(1.5)));
    CHECK(dist_point_to_face(fx, Simplex{0}, *s1) == doctest::Approx(w(2) * kSqrt2));
  }
}

TEST_CASE("sandwich holds for the collapse and the identity") {
  auto id1 = identity_map(standard_simplex(1));
  for (double eps : {0.05, 0.1, 0.2}) {
    for (const auto& f : {collapse(), id1}) {
      const auto rep = verify_sandwich(f, Simplex{0}, eps);
      INFO(rep.to_text());
      CHECK(rep.ok());
      for (const auto& c : rep.checks) {
        CHECK(c.fail == 0);
        CHECK(c.unknown_fraction() < 0.01);
        if (!c.exact) CHECK(c.pass > 0);
      }
    }
  }
}

TEST_CASE("sandwich with the constants as printed breaks on the collapse") {
  // inner radius √3·ε lets c reach ε·√(3/2) > ε/√(3/2)
  const auto rep = verify_sandwich(collapse(), Simplex{0}, 0.1);
  bool noted = false;
  for (const auto& [key, value] : rep.info)
    if (key == "inner inclusion with k as printed") {
      noted = true;
      CHECK(value.find("fail=0 ") == std::string::npos);
    }
  CHECK(noted);
}

TEST_CASE("sandwich edge cases") {
  CHECK(verify_sandwich(collapse(), Simplex{0}, 0.0).ok());
  CHECK(verify_sandwich(collapse(), Simplex{1}, 0.1).ok());
  CHECK_THROWS_AS(verify_sandwich(collapse(), Simplex{0, 1}, 0.1), OutOfRangeError);
  auto s1 = standard_simplex(1);
  auto s2 = make_complex({{0, 1, 2}});
  auto flat = build_simplicial_map(std::vector<VertexId>{0, 0}, s1, s2);
  CHECK_THROWS_AS(verify_sandwich(flat, Simplex{0}, 0.1), DomainMismatchError);
}

TEST_CASE("squeeze constants") {
  auto d2 = SubdivisionRecord::create(standard_simplex(2));
  auto c = squeeze_constants(d2, d2);
  CHECK(c.k == doctest::Approx(std::sqrt(3.0)));
  CHECK(c.K == doctest::Approx(1 / std::sqrt(3.0)));
  CHECK(c.eps_xy == doctest::Approx(1 / kSqrt2));
  CHECK(c.eps_xy <= c.k * (1 / std::sqrt(6.0)) + 1e-15);

  auto y = SubdivisionRecord::create(standard_simplex(1));
  auto x = iterate_subdivide(y, 1)->rebase(1);
  c = squeeze_constants(x, y);
  CHECK(c.k == doctest::Approx(2.0));
  CHECK(c.K == doctest::Approx(2.0));
  CHECK(c.eps_xy == doctest::Approx(kSqrt2 / 2));
  CHECK_THROWS_AS(squeeze_constants(x, y, c.eps_xy), OutOfRangeError);
  CHECK_THROWS_AS(squeeze_constants(x, y, 0.0), OutOfRangeError);
  const auto e = squeeze_constants(x, y, 0.1);
  CHECK(e.depth == std::max(e.depth_x, e.depth_y));
  CHECK(e.depth_x == subdivision_depth(x, 0.1 / e.k));
  CHECK(e.depth_y == subdivision_depth(y, e.K * 0.1 / e.k));
}

TEST_CASE("identity instance is certified") {
  const auto t = squeeze(identity_instance(2, 0.1), light());
  INFO(t.certificate.to_text());
  CHECK(t.certificate.ok());
  CHECK(t.controls.max() < 1e-12);
  CHECK(t.f_tri == t.ry.r);
  for (const auto& c : t.certificate.checks) CHECK(c.unknown_fraction() < 0.01);
  CHECK(verify_triangular_equivalence(t, light()).to_text() == t.certificate.to_text());
}

TEST_CASE("derived instance on a subdivided interval is certified") {
  const auto d = derived_instance(0.1);
  const auto t = squeeze(d, light());
  INFO(t.certificate.to_text());
  CHECK(t.certificate.ok());
  CHECK(t.constants.k == doctest::Approx(4.0));
  CHECK(t.constants.K == doctest::Approx(4.0));
  CHECK(t.controls.max() < t.constants.eps_xy);
  CHECK(t.certificate.find("g_tri triangular over f_tri")->pass > 0);
}

TEST_CASE("a badly controlled inverse is refused") {
  EquivalenceData d = identity_instance(1, 0.1);
  d.g = build_simplicial_map(std::vector<VertexId>{0, 0}, d.y->base(), d.x->base());
  d.h1 = straight_line_to_identity("h1", d.y, 0, d.g, d.y->realization(0));
  d.h2 = straight_line_to_identity("h2", d.x, 0, d.g, d.x->realization(0));
  CHECK_THROWS_AS(squeeze(d, light()), OutOfRangeError);
  CHECK_THROWS_AS(squeeze(identity_instance(1, 1.0), light()), OutOfRangeError);
}

TEST_CASE("a corrupted inverse loses its certificate") {
  auto t = squeeze(identity_instance(2, 0.1), light());
  std::vector<VertexId> images(t.g_tri.images().begin(), t.g_tri.images().end());
  images[0] = 2;  // vertex 0 of Y now goes to vertex 2 of X
  t.g_tri = build_simplicial_map(images, t.g_tri.domain(), t.g_tri.codomain());
  const auto rep = verify_triangular_equivalence(t, light());
  const auto* g = rep.find("g_tri triangular over f_tri");
  REQUIRE(g);
  CHECK(g->fail > 0);
  REQUIRE(!g->witnesses.empty());
  CHECK(g->witnesses.front().find("(0)") != std::string::npos);
}

TEST_CASE("certification is deterministic") {
  const auto a = squeeze(derived_instance(0.1), light());
  const auto b = squeeze(derived_instance(0.1), light());
  CHECK(a.certificate.to_text() == b.certificate.to_text());
}

TEST_CASE("image support collects images of vertices over each face") {
  auto rec = iterate_subdivide(standard_simplex(1), 1);
  const auto r1 = build_r1(*rec);
  const auto s = image_support(*rec, 1, 0, r1);
  // vertex 0 sees only itself; the edge sees 0 and 1
  CHECK(s[0] == Simplex{0});
  CHECK(s[1] == Simplex{1});
  CHECK(s[2] == (Simplex{0, 1}));
}

TEST_CASE("conjecture probe runs on a certified pair") {
  const auto t = squeeze(identity_instance(1, 0.1), light());
  const auto rep = conjecture_probe(t);
  CHECK(rep.find("Sd g_tri over Sd f_tri") != nullptr);
}
