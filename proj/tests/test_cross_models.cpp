#include "doctest.h"
#include "gkm/cross_models.hpp"
#include "gkm/error.hpp"
#include "gkm/graph_cohomology.hpp"
#include "oracles.hpp"

using namespace gkm;

TEST_CASE("sphere graph") {
  auto w = generic_weights(Family::Sphere, 5, 3);
  CHECK(w.size() == 5);
  CHECK(w[0] == IntVector{1, 1, 1});
  CHECK(w[4] == IntVector{1, 5, 25});
  GkmGraph g = sphere_graph(w);
  CHECK(validate(g).empty());
  CHECK(euler_characteristic(g) == 2);
  CHECK(g.orientation_sign(*g.find_vertex("p+")) == 1);
  CHECK(g.orientation_sign(*g.find_vertex("p-")) == 1);

  GkmGraph s4 = sphere_graph(std::vector<IntVector>{{1, 0}, {0, 1}});
  CHECK(s4.orientation_sign(*s4.find_vertex("p-")) == -1);
  CHECK_THROWS_AS(sphere_graph(std::vector<IntVector>{{0, 0}}), Error);
}

TEST_CASE("complex projective graph") {
  auto a = generic_weights(Family::ComplexProjective, 5, 3);
  CHECK(a[0] == IntVector{0, 0, 0});
  CHECK(a[5] == IntVector{5, 25, 125});
  GkmGraph g = cpn_graph(a);
  CHECK(g.vertex_count() == 6);
  CHECK(g.edge_count() == 15);
  CHECK(validate(g).empty());
  CHECK(check_gkm_k(g, 3).pass);
  for (std::size_t v = 0; v < 6; ++v) CHECK(g.orientation_sign(v) == -1);

  GkmGraph tri = cpn_graph(std::vector<IntVector>{{0, 0}, {1, 0}, {0, 1}});
  std::set<IntVector> labels;
  for (const auto& e : tri.edges()) labels.insert(e.alpha_at_u);
  CHECK(labels == std::set<IntVector>{{1, 0}, {0, 1}, {-1, 1}});

  GkmGraph s2 = cpn_graph(std::vector<IntVector>{{0}, {1}});
  CHECK(s2.edge_count() == 1);
  CHECK(s2.edge(0).alpha_at_u == IntVector{1});
  CHECK_THROWS_AS(cpn_graph(std::vector<IntVector>{{1, 2}, {1, 2}}), Error);
}

TEST_CASE("cycle consistency of difference labels") {
  GkmGraph g = cpn_graph(generic_weights(Family::ComplexProjective, 4, 3));
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_of;
  for (std::size_t e = 0; e < g.edge_count(); ++e) edge_of[{g.edge(e).u, g.edge(e).v}] = edge_of[{g.edge(e).v, g.edge(e).u}] = e;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t k = 0; k < 5; ++k) {
        if (i == j || j == k || i == k) continue;
        IntVector a = g.label_at(edge_of[{i, j}], i), b = g.label_at(edge_of[{j, k}], j), c = g.label_at(edge_of[{k, i}], k);
        for (int x = 0; x < 3; ++x) CHECK(a[x] + b[x] + c[x] == 0);
      }
}

TEST_CASE("quaternionic projective graph") {
  auto a = generic_weights(Family::QuaternionicProjective, 2, 3);
  GkmGraph g = hpn_graph(a);
  CHECK(g.half_dim() == 4);
  for (std::size_t v = 0; v < 3; ++v) CHECK(g.incident(v).size() == 4);
  CHECK(validate(g).empty());

  GkmGraph h1 = hpn_graph(std::vector<IntVector>{{1, 0}, {0, 1}});
  CHECK(h1.vertex_count() == 2);
  CHECK(h1.edge_count() == 2);
  GkmGraph s4 = sphere_graph(std::vector<IntVector>{{-1, 1}, {1, 1}});
  CHECK(isomorphic(h1, s4, true));
  CHECK_THROWS_AS(hpn_graph(std::vector<IntVector>{{1, 0}, {1, 0}}), Error);
}

TEST_CASE("catalog invariants") {
  for (const auto& c : oracle::catalog()) {
    CAPTURE(c.name);
    CHECK(validate(c.graph).empty());
    CHECK(check_gkm_k(c.graph, 2).pass);
    CHECK(check_gkm_k(c.graph, 3).pass);
  }
  for (int n = 1; n <= 4; ++n) {
    CHECK(euler_characteristic(sphere_graph(generic_weights(Family::Sphere, n, 3))) == 2);
    CHECK(euler_characteristic(cpn_graph(generic_weights(Family::ComplexProjective, n, 3))) == n + 1);
    CHECK(euler_characteristic(hpn_graph(generic_weights(Family::QuaternionicProjective, n, 3))) == n + 1);
  }
}

TEST_CASE("catalog Betti numbers are the known ones") {
  for (int n = 1; n <= 4; ++n) {
    BettiProfile sphere(static_cast<std::size_t>(2 * n + 1), 0), cp(sphere.size(), 0), hp(static_cast<std::size_t>(4 * n + 1), 0);
    sphere.front() = sphere.back() = 1;
    for (int j = 0; j <= n; ++j) cp[2 * j] = 1, hp[4 * j] = 1;
    CHECK(ordinary_betti(sphere_graph(generic_weights(Family::Sphere, n, 3))) == sphere);
    CHECK(ordinary_betti(cpn_graph(generic_weights(Family::ComplexProjective, n, 3))) == cp);
    if (n <= 2) CHECK(ordinary_betti(hpn_graph(generic_weights(Family::QuaternionicProjective, n, 3))) == hp);
  }
}

TEST_CASE("family names") {
  CHECK(parse_family("cpn") == Family::ComplexProjective);
  CHECK(parse_family("sphere") == Family::Sphere);
  CHECK(parse_family("hpn") == Family::QuaternionicProjective);
  CHECK_FALSE(parse_family("op2"));
}
