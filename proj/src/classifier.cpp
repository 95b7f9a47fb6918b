#include "gkm/classifier.hpp"

#include <algorithm>
#include <map>

#include "gkm/cross_models.hpp"
#include "gkm/error.hpp"

namespace gkm {

namespace {

IntVector add_scaled(const IntVector& a, const IntVector& b, long long s) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
  return out;
}

IntVector difference(const IntVector& a, const IntVector& b) { return add_scaled(a, b, -1); }

IntVector negate(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

}  // namespace

std::string_view component_type_name(ComponentType t) {
  switch (t) {
    case ComponentType::SphereType: return "SphereType";
    case ComponentType::CPType: return "CPType";
    case ComponentType::Unrecognized: return "Unrecognized";
  }
  return "?";
}

std::optional<std::vector<IntVector>> cpn_realizable(const GkmGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw Error(ErrorCode::NotComplete, "empty graph");
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_edge;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    auto key = std::minmax(ed.u, ed.v);
    if (ed.u == ed.v || !pair_edge.emplace(key, e).second)
      throw Error(ErrorCode::NotComplete, "graph has loops or parallel edges");
  }
  if (pair_edge.size() != n * (n - 1) / 2)
    throw Error(ErrorCode::NotComplete, "graph is not complete on " + std::to_string(n) + " vertices");

  // Star spanning tree rooted at vertex 0 (BFS on a complete graph).
  std::vector<std::size_t> tree_edges;
  for (std::size_t v = 1; v < n; ++v) tree_edges.push_back(pair_edge.at({0, v}));

  const std::size_t free_signs = tree_edges.size() <= 1 ? 0 : tree_edges.size() - 1;
  const std::size_t d = g.torus_rank();
  for (std::size_t mask = 0; mask < (std::size_t{1} << free_signs); ++mask) {
    std::vector<IntVector> a(n, IntVector(d, 0));
    for (std::size_t k = 0; k < tree_edges.size(); ++k) {
      long long sign = (k > 0 && (mask >> (k - 1)) & 1U) ? -1 : 1;
      a[k + 1] = add_scaled(a[0], g.label_at(tree_edges[k], 0), sign);
    }
    bool ok = true;
    for (const auto& [key, e] : pair_edge) {
      if (key.first == 0) continue;
      IntVector label = g.label_at(e, key.first);
      IntVector diff = difference(a[key.second], a[key.first]);
      if (label != diff && label != negate(diff)) {
        ok = false;
        break;
      }
    }
    if (ok) return a;
  }
  return std::nullopt;
}

std::vector<ComponentVerdict> classify(const GkmGraph& g) {
  if (g.half_dim() != 5) throw Error(ErrorCode::InvalidArgument, "classifier needs half dimension 5");
  auto violations = validate(g);
  if (!violations.empty()) throw Error(ErrorCode::InvalidArgument, "invalid graph: " + violations.front().detail);
  if (g.torus_rank() < 3) throw Error(ErrorCode::Gkm3Required, "torus rank below 3");
  if (!check_gkm_k(g, 3).pass) throw Error(ErrorCode::Gkm3Required, "graph is not GKM_3");

  std::vector<ComponentVerdict> out;
  for (const auto& comp : connected_components(g)) {
    Subgraph s;
    s.vertices = comp;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      if (std::binary_search(comp.begin(), comp.end(), g.edge(e).u)) s.edges.push_back(e);
    GkmGraph c = extract(g, s, g.half_dim());

    ComponentVerdict v;
    v.vertex_count = c.vertex_count();
    v.edge_count = c.edge_count();
    v.vertex_ids = c.vertex_ids();

    // Triangle witness: first triple of mutually adjacent vertices.
    std::vector<std::vector<bool>> adj(c.vertex_count(), std::vector<bool>(c.vertex_count(), false));
    for (const auto& e : c.edges()) adj[e.u][e.v] = adj[e.v][e.u] = true;
    for (std::size_t x = 0; x < c.vertex_count() && !v.triangle; ++x)
      for (std::size_t y = x + 1; y < c.vertex_count() && !v.triangle; ++y)
        for (std::size_t z = y + 1; z < c.vertex_count() && !v.triangle; ++z)
          if (adj[x][y] && adj[y][z] && adj[x][z])
            v.triangle = std::array<std::string, 3>{c.vertex_id(x), c.vertex_id(y), c.vertex_id(z)};

    if (v.vertex_count == 2) {
      if (v.edge_count == 5) v.type = ComponentType::SphereType;
      else v.reason = "two vertices but " + std::to_string(v.edge_count) + " edges";
    } else if (v.vertex_count == 6) {
      std::optional<std::vector<IntVector>> a;
      try {
        a = cpn_realizable(c);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NotComplete) throw;
        v.reason = "six vertices but not a complete graph";
      }
      if (v.reason.empty() && !a) v.reason = "labels are not differences of vertex weights";
      if (a) {
        GkmGraph rebuilt = cpn_graph(*a);
        if (isomorphic(rebuilt, c, true)) {
          v.type = ComponentType::CPType;
          v.weights = *a;
        } else {
          v.reason = "recovered weights do not rebuild the component";
        }
      }
    } else {
      v.reason = std::to_string(v.vertex_count) + " vertices (expected 2 or 6)";
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace gkm
