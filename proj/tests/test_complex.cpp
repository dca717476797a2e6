#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "trisq/complex.hpp"
#include "trisq/errors.hpp"

using namespace trisq;

namespace {

std::size_t count_dim(const SimplicialComplex& x, int d) { return x.simplices(d).size(); }

// every nonempty subset of every simplex, by bitmask
std::set<std::vector<VertexId>> brute_closure(const std::vector<std::vector<VertexId>>& tops) {
  std::set<std::vector<VertexId>> out;
  for (auto t : tops) {
    std::sort(t.begin(), t.end());
    for (unsigned mask = 1; mask < (1u << t.size()); ++mask) {
      std::vector<VertexId> s;
      for (std::size_t k = 0; k < t.size(); ++k)
        if (mask & (1u << k)) s.push_back(t[k]);
      out.insert(s);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("face closure of small complexes") {
  auto d2 = build_complex({{0, 1, 2}});
  CHECK(d2.dim() == 2);
  CHECK(count_dim(d2, 0) == 3);
  CHECK(count_dim(d2, 1) == 3);
  CHECK(count_dim(d2, 2) == 1);

  auto pt = build_complex({{0}});
  CHECK(pt.dim() == 0);
  CHECK(pt.size() == 1);

  auto ring = build_complex({{0, 1}, {1, 2}, {2, 0}});
  CHECK(ring.dim() == 1);
  CHECK(count_dim(ring, 0) == 3);
  CHECK(count_dim(ring, 1) == 3);
}

TEST_CASE("repeated vertex is malformed") {
  CHECK_THROWS_AS(build_complex({{0, 1, 1}}), MalformedSimplexError);
  CHECK_THROWS_AS(build_complex({{-1, 2}}), MalformedSimplexError);
}

TEST_CASE("faces") {
  auto f = faces(Simplex{0, 1, 2});
  std::set<Simplex> got(f.begin(), f.end());
  std::set<Simplex> want{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
  CHECK(got == want);
  CHECK(faces(Simplex{0}).empty());
  CHECK(faces(Simplex{0, 1}).size() == 2);
}

TEST_CASE("closed star") {
  auto path = build_complex({{0, 1}, {1, 2}});
  CHECK(closed_star(Simplex{1}, path) == path);

  auto d2 = build_complex({{0, 1, 2}});
  CHECK(closed_star(Simplex{0, 1, 2}, d2) == d2);

  auto two = build_complex({{0, 1}, {2, 3}});
  CHECK(closed_star(Simplex{0}, two) == build_complex({{0, 1}}));

  CHECK_THROWS_AS(closed_star(Simplex{0, 2}, path), NotInComplexError);
}

TEST_CASE("closure matches brute force and is idempotent") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::vector<VertexId>> tops;
    const int m = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < m; ++k) {
      std::set<VertexId> s;
      const int size = 1 + static_cast<int>(rng() % 4);
      while (static_cast<int>(s.size()) < size) s.insert(static_cast<VertexId>(rng() % 7));
      tops.emplace_back(s.begin(), s.end());
    }
    auto x = build_complex(tops);
    auto want = brute_closure(tops);
    CHECK(x.size() == want.size());
    x.for_each([&](const Simplex& s) {
      CHECK(want.count(std::vector<VertexId>(s.begin(), s.end())) == 1);
    });

    std::vector<std::vector<VertexId>> again;
    for (const auto& s : x.maximal_simplices()) again.emplace_back(s.begin(), s.end());
    CHECK(build_complex(again) == x);
  }
}

TEST_CASE("simplicial maps") {
  auto d2 = make_complex({{0, 1, 2}});
  auto d1 = make_complex({{0, 1}});

  auto id = build_simplicial_map({0, 1, 2}, d2, d2);
  CHECK(id == identity_map(d2));

  auto collapse = build_simplicial_map({0, 0, 1}, d2, d1);
  CHECK(collapse.apply(Simplex{0, 1, 2}) == Simplex{0, 1});
  CHECK(collapse.apply(Simplex{0, 1}) == Simplex{0});

  auto ends = make_complex({{0}, {1}});
  auto incl = build_simplicial_map({0, 1}, ends, d1);
  CHECK(incl.apply(Simplex{1}) == Simplex{1});

  auto ring = make_complex({{0, 1}, {1, 2}, {2, 0}});
  auto d1b = make_complex({{0, 1}, {1, 2}});
  try {
    build_simplicial_map({0, 1, 2}, ring, d1b);
    FAIL("expected a non-simplicial error");
  } catch (const NonSimplicialError& e) {
    CHECK(e.witness() == Simplex{0, 2}.to_string());
  }
}

TEST_CASE("compose") {
  auto d2 = make_complex({{0, 1, 2}});
  auto d1 = make_complex({{0, 1}});
  auto collapse = build_simplicial_map({0, 0, 1}, d2, d1);
  CHECK(compose(identity_map(d1), collapse) == collapse);
  CHECK(compose(collapse, identity_map(d2)) == collapse);

  auto edge = make_complex({{0, 2}});
  auto incl = build_simplicial_map({0, 2}, edge, d2);
  auto c = compose(collapse, incl);
  CHECK(c(0) == 0);
  CHECK(c(2) == 1);
  CHECK_THROWS_AS(compose(incl, collapse), DomainMismatchError);
}

TEST_CASE("composition of random maps stays simplicial") {
  std::mt19937 rng(11);
  auto d3 = standard_simplex(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<VertexId> a(4), b(4);
    for (auto& v : a) v = static_cast<VertexId>(rng() % 4);
    for (auto& v : b) v = static_cast<VertexId>(rng() % 4);
    auto f = build_simplicial_map(a, d3, d3);
    auto g = build_simplicial_map(b, d3, d3);
    auto fg = compose(f, g);
    d3->for_each([&](const Simplex& s) { CHECK(d3->contains(fg.apply(s))); });
  }
}

TEST_CASE("is_triangular") {
  auto d2 = make_complex({{0, 1, 2}});
  auto d1 = make_complex({{0, 1}});
  auto collapse = build_simplicial_map({0, 0, 1}, d2, d1);
  CHECK(is_triangular(collapse, collapse));

  // path 0-1-2 controlled by 0,1 -> 0 and 2 -> 1; F moves vertex 1 to 1
  auto path = make_complex({{0, 1}, {1, 2}});
  auto p = build_simplicial_map({0, 0, 1}, path, d1);
  auto f = build_simplicial_map({0, 1, 1}, path, d1);
  auto r = is_triangular(f, p);
  CHECK_FALSE(r.triangular);
  REQUIRE(r.witness);
  CHECK(*r.witness == Simplex{1});

  auto other = make_complex({{0, 1, 2}});
  CHECK_THROWS_AS(is_triangular(identity_map(other), collapse), DomainMismatchError);
}
