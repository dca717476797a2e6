#include <doctest.h>

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <set>

#include "trisq/errors.hpp"
#include "trisq/sampling.hpp"
#include "trisq/subdivision.hpp"

using namespace trisq;

namespace {

std::size_t count_dim(const SimplicialComplex& x, int d) { return x.simplices(d).size(); }

// number of strictly increasing chains in the face poset of x
std::size_t count_chains(const SimplicialComplex& x) {
  std::vector<Simplex> all;
  x.for_each([&](const Simplex& s) { all.push_back(s); });
  // chains ending at s
  std::vector<std::size_t> ending(all.size(), 1);
  for (std::size_t b = 0; b < all.size(); ++b)
    for (std::size_t a = 0; a < b; ++a)
      if (all[a] != all[b] && all[a].is_face_of(all[b])) ending[b] += ending[a];
  std::size_t total = 0;
  for (auto c : ending) total += c;
  return total;
}

// geometric position of a located point, as weights over the base vertices
Eigen::VectorXd base_weights(const PointInComplex& p, const SubdivisionRecord& rec, int level, int n) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (std::size_t k = 0; k < p.carrier.size(); ++k) {
    const auto& pos = rec.position(level, p.carrier[k]);
    for (std::size_t j = 0; j < pos.carrier.size(); ++j) out(pos.carrier[j]) += p.coords(k) * pos.coords(j);
  }
  return out;
}

}  // namespace

TEST_CASE("one subdivision of small simplices") {
  auto d1 = iterate_subdivide(standard_simplex(1), 1);
  CHECK(count_dim(*d1->complex(1), 0) == 3);
  CHECK(count_dim(*d1->complex(1), 1) == 2);

  auto d2 = iterate_subdivide(standard_simplex(2), 1);
  const auto& s = *d2->complex(1);
  CHECK(count_dim(s, 0) == 7);
  CHECK(count_dim(s, 1) == 12);
  CHECK(count_dim(s, 2) == 6);

  auto dd1 = iterate_subdivide(standard_simplex(1), 2);
  CHECK(count_dim(*dd1->complex(2), 0) == 5);
  CHECK(count_dim(*dd1->complex(2), 1) == 4);
}

TEST_CASE("iterated subdivision counts") {
  auto e = iterate_subdivide(standard_simplex(1), 3);
  CHECK(count_dim(*e->complex(3), 0) == 9);
  CHECK(count_dim(*e->complex(3), 1) == 8);

  auto t = iterate_subdivide(standard_simplex(2), 2);
  CHECK(count_dim(*t->complex(2), 2) == 36);

  auto x = make_complex({{0, 1}, {1, 2, 3}});
  auto z = iterate_subdivide(x, 0);
  CHECK(*z->complex(0) == *x);
  x->for_each([&](const Simplex& s) { CHECK(z->carrier(s, 0) == s); });

  for (int n = 0; n <= 4; ++n) {
    auto r = iterate_subdivide(standard_simplex(n), 1);
    std::size_t fact = 1;
    for (int k = 2; k <= n + 1; ++k) fact *= static_cast<std::size_t>(k);
    CHECK(count_dim(*r->complex(1), n) == fact);
  }
}

TEST_CASE("flags biject with simplices of the subdivision") {
  for (auto x : {standard_simplex(1), standard_simplex(2), standard_simplex(3), make_complex({{0, 1}, {1, 2, 3}, {3, 4}}),
                 make_complex({{0, 1, 2}, {1, 2, 3}, {2, 4}})}) {
    auto r = iterate_subdivide(x, 1);
    CHECK(r->complex(1)->size() == count_chains(*x));
    // every simplex of Sd X is a chain of flag labels
    r->complex(1)->for_each([&](const Simplex& tau) {
      std::vector<Simplex> labels;
      for (VertexId v : tau) labels.push_back(r->flag_label(1, v));
      std::sort(labels.begin(), labels.end());
      for (std::size_t k = 1; k < labels.size(); ++k) CHECK(labels[k - 1].is_face_of(labels[k]));
    });
  }
}

TEST_CASE("budget guard") {
  auto x = standard_simplex(3);
  CHECK_THROWS_AS(iterate_subdivide(x, 4, 1000), BudgetExceededError);
  CHECK(projected_subdivision_size(*x) >= 24);
}

TEST_CASE("carriers") {
  auto r = iterate_subdivide(standard_simplex(2), 1);
  // ids at level 1 are the canonical indices: (0),(1),(2),(0,1),(0,2),(1,2),(0,1,2)
  CHECK(r->flag_label(1, 6) == Simplex{0, 1, 2});
  CHECK(r->carrier(Simplex{6}, 1) == Simplex{0, 1, 2});
  CHECK(r->carrier(Simplex{0, 3}, 1) == Simplex{0, 1});
  for (int n = 1; n <= 3; ++n) {
    auto rn = iterate_subdivide(standard_simplex(n), 2);
    for (const auto& top : rn->complex(2)->simplices(n)) CHECK(rn->carrier(top, 2).dim() == n);
  }
}

TEST_CASE("carrier is monotone and matches positions") {
  auto x = make_complex({{0, 1, 2}, {2, 3}});
  auto r = iterate_subdivide(x, 2);
  const auto& c = *r->complex(2);
  c.for_each([&](const Simplex& tau) {
    const Simplex car = r->carrier(tau, 2);
    for (const auto& f : faces(tau)) CHECK(r->carrier(f, 2).is_face_of(car));
    // all vertices lie in the carrier, and one of them has support equal to it

    for (VertexId v : tau) {
      const auto& p = r->position(2, v);
      CHECK(p.carrier.is_face_of(car));

    }
    // the barycentre of tau is interior to the carrier
    CHECK(r->realization(2).barycentre_of(tau).carrier == car);

  });
}

TEST_CASE("subdivide_map") {
  auto d2 = standard_simplex(2);
  auto id = identity_map(d2);
  auto sd = iterate_subdivide(d2, 1);
  CHECK(subdivide_map(id, sd->complex(1), sd->complex(1)) == identity_map(sd->complex(1)));

  auto d1 = standard_simplex(1);
  auto sd1 = iterate_subdivide(d1, 1);
  auto collapse = build_simplicial_map({0, 0, 1}, d2, d1);
  auto sc = subdivide_map(collapse, sd->complex(1), sd1->complex(1));
  // (0,1) has index 3 in Δ², vertex 0 of Δ¹ has index 0, (0,1) of Δ¹ has index 2
  CHECK(sc(3) == 0);
  CHECK(sc(6) == 2);
  sd->complex(1)->for_each([&](const Simplex& tau) {
    CHECK(sd1->carrier(sc.apply(tau), 1) == collapse.apply(sd->carrier(tau, 1)));
  });

  auto edge = make_complex({{0, 1}});
  auto incl = build_simplicial_map({0, 1}, edge, d2);
  auto sedge = iterate_subdivide(edge, 1);
  auto si = subdivide_map(incl, sedge->complex(1), sd->complex(1));
  CHECK(si(0) == 0);
  CHECK(si(1) == 1);
  CHECK(si(2) == 3);
}

TEST_CASE("iterated subdivide_map commutes with carriers") {
  auto x = make_complex({{0, 1, 2}, {2, 3}});
  auto y = make_complex({{0, 1}, {1, 2}});
  auto f = build_simplicial_map({0, 1, 1, 2}, x, y);
  auto rx = iterate_subdivide(x, 2);
  auto ry = iterate_subdivide(y, 2);
  auto f2 = subdivide_map(f, *rx, 0, *ry, 0, 2);
  rx->complex(2)->for_each([&](const Simplex& tau) {
    CHECK(ry->carrier(f2.apply(tau), 2) == f.apply(rx->carrier(tau, 2)));
  });
}

TEST_CASE("dual cells") {
  auto r1 = iterate_subdivide(standard_simplex(1), 1);
  // flags of Δ¹ starting at (0) or (0,1): vertices 0 and 2 and their edge
  auto half = dual_cell(Simplex{0}, *r1);
  CHECK(half.cell == build_complex({{0, 2}}));

  auto r2 = iterate_subdivide(standard_simplex(2), 1);
  auto top = dual_cell(Simplex{0, 1, 2}, *r2);
  CHECK(top.cell == build_complex({{6}}));

  auto path = make_complex({{0, 1}, {1, 2}});
  auto rp = iterate_subdivide(path, 1);
  // (0,1) and (1,2) have indices 3 and 4
  CHECK(dual_cell(Simplex{1}, *rp).cell == build_complex({{1, 3}, {1, 4}}));

  CHECK_THROWS_AS(dual_cell(Simplex{0, 2}, *rp), NotInComplexError);
}

TEST_CASE("dual cells cover and meet their simplex in the barycentre") {
  auto y = make_complex({{0, 1, 2}, {2, 3}});
  auto r = iterate_subdivide(y, 1);
  std::set<VertexId> covered;
  y->for_each([&](const Simplex& sigma) {
    auto d = dual_cell(sigma, *r);
    for (const auto& v : d.cell.vertices()) covered.insert(v.front());
    const VertexId hat = r->barycentre_vertex(sigma, 0, 1);
    d.cell.for_each([&](const Simplex& tau) {
      if (r->carrier(tau, 1) == sigma) CHECK(tau == Simplex{hat});
    });
  });
  CHECK(covered.size() == r->complex(1)->num_vertices());
}

TEST_CASE("locate") {
  auto r = iterate_subdivide(standard_simplex(2), 1);
  auto centre = r->locate(barycentre(Simplex{0, 1, 2}), 1);
  CHECK(centre.carrier == Simplex{6});

  auto mid = r->locate(barycentre(Simplex{0, 1}), 1);
  CHECK(mid.carrier == Simplex{3});

  Eigen::Vector3d w(0.5, 0.3, 0.2);
  auto p = r->locate(make_point(Simplex{0, 1, 2}, w), 1);
  CHECK(p.carrier == Simplex{0, 3, 6});
  CHECK(p.coords.sum() == doctest::Approx(1.0).epsilon(1e-12));
  // independent solve: columns are the realised vertices v0, (01)^, σ̂
  Eigen::Matrix3d m;
  m.col(0) << 1, 0, 0;
  m.col(1) << 0.5, 0.5, 0;
  m.col(2) << 1.0 / 3, 1.0 / 3, 1.0 / 3;
  Eigen::Vector3d mu = m.colPivHouseholderQr().solve(w);
  for (int k = 0; k < 3; ++k) CHECK(p.coords(k) == doctest::Approx(mu(k)).epsilon(1e-12));
}

TEST_CASE("locate round trip on random points") {
  for (auto x : {standard_simplex(2), make_complex({{0, 1, 2}, {2, 3}, {3, 4, 5, 6}})}) {
    auto r = iterate_subdivide(x, 2);
    const int n = static_cast<int>(x->num_vertices());
    std::mt19937_64 rng(3);
    const auto tops = x->maximal_simplices();
    for (int k = 0; k < 1000; ++k) {
      const auto& top = tops[static_cast<std::size_t>(k) % tops.size()];
      auto x0 = make_point(top, random_barycentric(rng, static_cast<int>(top.size())));
      for (int level = 1; level <= 2; ++level) {
        auto y = r->locate(x0, level);
        CHECK(r->complex(level)->contains(y.carrier));
        Eigen::VectorXd back = base_weights(y, *r, level, n);
        Eigen::VectorXd want = Eigen::VectorXd::Zero(n);
        for (std::size_t j = 0; j < x0.carrier.size(); ++j) want(x0.carrier[j]) = x0.coords(j);
        CHECK((back - want).lpNorm<Eigen::Infinity>() < 1e-12);
        CHECK(chart_gap(r->realize(y, level), x0) < 1e-12);
      }
    }
  }
}
