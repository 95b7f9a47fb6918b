#include <doctest.h>

#include <random>

#include "gkm/classifier.hpp"
#include "gkm/cross_models.hpp"
#include "oracles.hpp"

using gkm::ComponentType;
using gkm::Family;
using gkm::GkmGraph;
using gkm::IntVector;

namespace {

IntVector diff(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVector neg(IntVector a) {
  for (auto& x : a) x = -x;
  return a;
}

// Every edge label is +-(a_v - a_u).
bool realizes(const GkmGraph& g, const std::vector<IntVector>& a) {
  for (const auto& e : g.edges()) {
    const IntVector d = diff(a[e.v], a[e.u]);
    if (e.alpha_at_u != d && e.alpha_at_u != neg(d)) return false;
  }
  return true;
}

long long expected_euler(const std::vector<gkm::ComponentVerdict>& vs) {
  long long chi = 0;
  for (const auto& v : vs) chi += v.type == ComponentType::SphereType ? 2 : v.type == ComponentType::CPType ? 6 : 0;
  return chi;
}

GkmGraph cp5() { return gkm::cpn_graph(gkm::generic_weights(Family::ComplexProjective, 5, 3)); }
GkmGraph s10() { return gkm::sphere_graph(gkm::generic_weights(Family::Sphere, 5, 3)); }

}  // namespace

TEST_CASE("triangle realization") {
  GkmGraph g(2, 2);
  for (const char* id : {"x", "y", "z"}) g.add_vertex(id);
  g.add_edge(0, 1, {1, 0});
  g.add_edge(0, 2, {0, 1});
  g.add_edge(1, 2, {-1, 1});
  auto a = gkm::cpn_realizable(g);
  REQUIRE(a.has_value());
  CHECK(realizes(g, *a));
  // Solving a1 - a0 = (1,0), a2 - a0 = (0,1) with a0 = 0.
  CHECK(*a == std::vector<IntVector>{{0, 0}, {1, 0}, {0, 1}});
}

TEST_CASE("realization recovers model weights up to translation and sign") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long long> coord(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    std::vector<IntVector> a(static_cast<std::size_t>(n + 1), IntVector(3));
    for (auto& v : a)
      for (auto& x : v) x = coord(rng);
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end()) continue;
    std::shuffle(a.begin(), a.end(), rng);
    const GkmGraph g = gkm::cpn_graph(a);
    auto w = gkm::cpn_realizable(g);
    REQUIRE(w.has_value());
    CHECK(realizes(g, *w));
    CHECK((*w)[0] == IntVector{0, 0, 0});
    CHECK(gkm::isomorphic(gkm::cpn_graph(*w), g, true).has_value());
  }
}

TEST_CASE("inconsistent labels on a complete graph are not realizable") {
  GkmGraph g = cp5();
  std::size_t e = 0;
  while (!(g.edge(e).u == 2 && g.edge(e).v == 4)) ++e;
  const GkmGraph bad = oracle::with_label(g, e, {7, -3, 11});
  CHECK_FALSE(gkm::cpn_realizable(bad).has_value());
}

TEST_CASE("realizability needs a complete simple graph") {
  CHECK_THROWS_AS(gkm::cpn_realizable(s10()), gkm::Error);
  GkmGraph path(1, 1);
  for (const char* id : {"a", "b", "c"}) path.add_vertex(id);
  path.add_edge(0, 1, {1});
  path.add_edge(1, 2, {1});
  try {
    (void)gkm::cpn_realizable(path);
    FAIL("expected NotComplete");
  } catch (const gkm::Error& err) {
    CHECK(err.code() == gkm::ErrorCode::NotComplete);
  }
}

TEST_CASE("catalog models classify") {
  SUBCASE("complex projective") {
    const GkmGraph g = cp5();
    auto v = gkm::classify(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].type == ComponentType::CPType);
    CHECK(v[0].vertex_count == 6);
    CHECK(v[0].edge_count == 15);
    CHECK(v[0].triangle.has_value());
    REQUIRE(v[0].weights.size() == 6);
    CHECK(realizes(g, v[0].weights));
    CHECK(gkm::isomorphic(gkm::cpn_graph(v[0].weights), g, true).has_value());
    CHECK(expected_euler(v) == gkm::euler_characteristic(g));
  }
  SUBCASE("sphere") {
    auto v = gkm::classify(s10());
    REQUIRE(v.size() == 1);
    CHECK(v[0].type == ComponentType::SphereType);
    CHECK(v[0].vertex_count == 2);
    CHECK(v[0].edge_count == 5);
    CHECK(v[0].weights.empty());
  }
  SUBCASE("three spheres") {
    const GkmGraph g = gkm::disjoint_union({s10(), s10(), s10()}, {"a.", "b.", "c."});
    auto v = gkm::classify(g);
    REQUIRE(v.size() == 3);
    for (const auto& c : v) CHECK(c.type == ComponentType::SphereType);
    CHECK(gkm::euler_characteristic(g) == 6);
    CHECK(expected_euler(v) == 6);
  }
  SUBCASE("mixed union") {
    const GkmGraph g = gkm::disjoint_union({s10(), cp5()}, {"s.", "p."});
    auto v = gkm::classify(g);
    REQUIRE(v.size() == 2);
    CHECK(v[0].type == ComponentType::SphereType);
    CHECK(v[1].type == ComponentType::CPType);
    CHECK(v[1].vertex_ids.front().rfind("p.", 0) == 0);
    CHECK(expected_euler(v) == gkm::euler_characteristic(g));
  }
  SUBCASE("other moment-curve ranks") {
    for (std::size_t d : {3U, 4U, 5U}) {
      auto v = gkm::classify(gkm::cpn_graph(gkm::generic_weights(Family::ComplexProjective, 5, d)));
      REQUIRE(v.size() == 1);
      CHECK(v[0].type == ComponentType::CPType);
    }
  }
}

TEST_CASE("unrecognized components name the failed check") {
  SUBCASE("corrupted label") {
    const GkmGraph g = cp5();
    const GkmGraph bad = oracle::with_label(g, 3, {7, -3, 11});
    REQUIRE(gkm::validate(bad).empty());
    REQUIRE(gkm::check_gkm_k(bad, 3).pass);
    auto v = gkm::classify(bad);
    REQUIRE(v.size() == 1);
    CHECK(v[0].type == ComponentType::Unrecognized);
    CHECK(v[0].reason == "labels are not differences of vertex weights");
  }
  SUBCASE("four vertices of valence five") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> coord(-9, 9);
    std::optional<GkmGraph> g;
    while (!g) {
      GkmGraph h(3, 5);
      for (const char* id : {"a", "b", "c", "d"}) h.add_vertex(id);
      const std::vector<std::pair<int, int>> pairs{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 1}, {0, 1}, {2, 3}, {2, 3}};
      for (auto [u, v] : pairs) h.add_edge(u, v, {coord(rng), coord(rng), coord(rng)});
      if (gkm::validate(h).empty() && gkm::check_gkm_k(h, 3).pass) g = h;
    }
    auto v = gkm::classify(*g);
    REQUIRE(v.size() == 1);
    CHECK(v[0].type == ComponentType::Unrecognized);
    CHECK(v[0].reason == "4 vertices (expected 2 or 6)");
  }
}

TEST_CASE("classification preconditions") {
  // half dimension other than 5
  CHECK_THROWS_AS(gkm::classify(gkm::cpn_graph(gkm::generic_weights(Family::ComplexProjective, 3, 3))), gkm::Error);
  // rank 2 cannot be GKM_3
  try {
    (void)gkm::classify(gkm::cpn_graph(gkm::generic_weights(Family::ComplexProjective, 5, 2)));
    FAIL("expected Gkm3Required");
  } catch (const gkm::Error& e) {
    CHECK(e.code() == gkm::ErrorCode::Gkm3Required);
  }
  CHECK(gkm::component_type_name(ComponentType::CPType) == "CPType");
}
