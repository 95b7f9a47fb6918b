#include "gkm/gkm_core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <utility>

#include "gkm/error.hpp"

namespace gkm {

bool Weight::is_zero() const {
  return std::all_of(components.begin(), components.end(), [](long long x) { return x == 0; });
}

Weight Weight::negated() const {
  Weight w = *this;
  for (auto& x : w.components) x = -x;
  return w;
}

bool operator==(const Weight& a, const Weight& b) {
  if (a.oriented && b.oriented) return a.components == b.components;
  return sign_normalized(a.components) == sign_normalized(b.components);
}

IntVector sign_normalized(const IntVector& w) {
  IntVector out = w;
  auto it = std::find_if(out.begin(), out.end(), [](long long x) { return x != 0; });
  if (it != out.end() && *it < 0) {
    for (auto& x : out) x = -x;
  }
  return out;
}

IntVector primitive_direction(const IntVector& w) {
  long long g = 0;
  for (long long x : w) g = std::gcd(g, x);
  IntVector out = w;
  if (g > 1) {
    for (auto& x : out) x /= g;
  }
  return sign_normalized(out);
}

IntVector Edge::alpha_at_v() const {
  IntVector out = alpha_at_u;
  for (auto& x : out) x = -x;
  return out;
}

// ---------------------------------------------------------------------------
// GkmGraph

GkmGraph::GkmGraph(std::size_t torus_rank, int half_dim) : torus_rank_(torus_rank), half_dim_(half_dim) {
  if (half_dim < 0) throw Error(ErrorCode::InvalidArgument, "negative half dimension");
}

std::size_t GkmGraph::add_vertex(std::string id, int orientation_sign) {
  if (orientation_sign != 1 && orientation_sign != -1) {
    throw Error(ErrorCode::InvalidArgument, "orientation sign must be +1 or -1");
  }
  const std::size_t idx = ids_.size();
  index_.try_emplace(id, idx);
  ids_.push_back(std::move(id));
  signs_.push_back(orientation_sign);
  incidence_.emplace_back();
  return idx;
}

std::size_t GkmGraph::add_edge(std::size_t u, std::size_t v, IntVector alpha_at_u) {
  if (u >= ids_.size() || v >= ids_.size()) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
  if (alpha_at_u.size() != torus_rank_) {
    throw Error(ErrorCode::InvalidArgument, "label length " + std::to_string(alpha_at_u.size()) +
                                                " does not match torus rank " + std::to_string(torus_rank_));
  }
  const std::size_t e = edges_.size();
  edges_.push_back(Edge{u, v, std::move(alpha_at_u)});
  const Edge& ed = edges_.back();
  incidence_[u].push_back(IncidentEdge{e, v, ed.alpha_at_u});
  if (v != u) incidence_[v].push_back(IncidentEdge{e, u, ed.alpha_at_v()});
  return e;
}

std::size_t GkmGraph::add_edge(std::string_view u, std::string_view v, IntVector alpha_at_u) {
  auto iu = find_vertex(u);
  auto iv = find_vertex(v);
  if (!iu || !iv) throw Error(ErrorCode::InvalidArgument, "edge references unknown vertex");
  return add_edge(*iu, *iv, std::move(alpha_at_u));
}

void GkmGraph::set_orientation_sign(std::size_t vertex, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidArgument, "orientation sign must be +1 or -1");
  signs_.at(vertex) = sign;
}

std::optional<std::size_t> GkmGraph::find_vertex(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

IntVector GkmGraph::label_at(std::size_t e, std::size_t v) const {
  const Edge& ed = edges_.at(e);
  if (v == ed.u) return ed.alpha_at_u;
  if (v == ed.v) return ed.alpha_at_v();
  throw Error(ErrorCode::InvalidArgument, "vertex is not an endpoint of the edge");
}

GkmGraph GkmGraph::canonical() const {
  std::vector<std::size_t> order(ids_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids_[a] < ids_[b]; });
  std::vector<std::size_t> position(ids_.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const auto& e : edges_) {
    Edge c{position[e.u], position[e.v], e.alpha_at_u};
    if (c.u > c.v) c = Edge{c.v, c.u, e.alpha_at_v()};
    edges.push_back(std::move(c));
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v, a.alpha_at_u) < std::tie(b.u, b.v, b.alpha_at_u);
  });

  GkmGraph out(torus_rank_, half_dim_);
  for (std::size_t i : order) out.add_vertex(ids_[i], signs_[i]);
  for (auto& e : edges) out.add_edge(e.u, e.v, std::move(e.alpha_at_u));
  return out;
}

bool operator==(const GkmGraph& a, const GkmGraph& b) {
  if (a.torus_rank_ != b.torus_rank_ || a.half_dim_ != b.half_dim_) return false;
  const GkmGraph ca = a.canonical();
  const GkmGraph cb = b.canonical();
  if (ca.ids_ != cb.ids_ || ca.signs_ != cb.signs_ || ca.edges_.size() != cb.edges_.size()) return false;
  for (std::size_t i = 0; i < ca.edges_.size(); ++i) {
    const auto& x = ca.edges_[i];
    const auto& y = cb.edges_[i];
    if (x.u != y.u || x.v != y.v || x.alpha_at_u != y.alpha_at_u) return false;
  }
  return true;
}

GkmGraph disjoint_union(const std::vector<GkmGraph>& graphs, const std::vector<std::string>& prefixes) {
  if (graphs.empty() || prefixes.size() != graphs.size()) {
    throw Error(ErrorCode::InvalidArgument, "disjoint union needs one prefix per graph");
  }
  GkmGraph out(graphs.front().torus_rank(), graphs.front().half_dim());
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    const auto& g = graphs[k];
    if (g.torus_rank() != out.torus_rank() || g.half_dim() != out.half_dim()) {
      throw Error(ErrorCode::InvalidArgument, "disjoint union of graphs with different shapes");
    }
    const std::size_t offset = out.vertex_count();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) out.add_vertex(prefixes[k] + g.vertex_id(v), g.orientation_sign(v));
    for (const auto& e : g.edges()) out.add_edge(offset + e.u, offset + e.v, e.alpha_at_u);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validity

std::vector<Violation> validate(const GkmGraph& g) {
  std::vector<Violation> out;
  std::map<std::string, int> seen;
  for (const auto& id : g.vertex_ids()) {
    if (++seen[id] == 2) out.push_back({Violation::Kind::DuplicateId, "vertex id '" + id + "' is not unique"});
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    if (ed.u == ed.v) {
      out.push_back({Violation::Kind::Loop, "edge " + std::to_string(e) + " is a loop at '" + g.vertex_id(ed.u) + "'"});
    }
    if (Weight{ed.alpha_at_u}.is_zero()) {
      out.push_back({Violation::Kind::ZeroLabel, "edge " + std::to_string(e) + " ('" + g.vertex_id(ed.u) + "'-'" +
                                                     g.vertex_id(ed.v) + "') has a zero label"});
    }
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::size_t valence = 0;
    for (const auto& inc : g.incident(v)) valence += (inc.other == v) ? 2 : 1;
    if (valence != static_cast<std::size_t>(g.half_dim())) {
      out.push_back({Violation::Kind::Valence, "vertex '" + g.vertex_id(v) + "' has valence " + std::to_string(valence) +
                                                   ", expected " + std::to_string(g.half_dim())});
    }
  }
  return out;
}

namespace {

/// Calls f on every k-subset of {0..n-1} (ascending); stops when f returns true.
template <typename F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (f(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::optional<GkmKWitness> gkm_k_witness(const GkmGraph& g, std::size_t k) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& inc = g.incident(v);
    std::optional<GkmKWitness> found;
    for_each_subset(inc.size(), k, [&](const std::vector<std::size_t>& subset) {
      std::vector<IntVector> labels;
      for (auto i : subset) labels.push_back(inc[i].label);
      if (integer_rank(labels) < k) {
        GkmKWitness w{v, {}};
        for (auto i : subset) w.edges.push_back(inc[i].edge);
        found = std::move(w);
        return true;
      }
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace

GkmKResult check_gkm_k(const GkmGraph& g, int k) {
  if (k < 2 || static_cast<std::size_t>(k) > g.torus_rank()) {
    throw Error(ErrorCode::InvalidArgument,
                "k = " + std::to_string(k) + " outside [2, " + std::to_string(g.torus_rank()) + "]");
  }
  auto witness = gkm_k_witness(g, static_cast<std::size_t>(k));
  return GkmKResult{!witness.has_value(), std::move(witness)};
}

// ---------------------------------------------------------------------------
// Subtori and skeleta

std::size_t SubtorusSpec::codim() const { return integer_rank(generators); }

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

bool in_rational_span(const std::vector<IntVector>& generators, std::size_t span_rank, const IntVector& v) {
  std::vector<IntVector> extended = generators;
  extended.push_back(v);
  return integer_rank(extended) == span_rank;
}

}  // namespace

FixedSubgraph fixed_subgraph(const GkmGraph& g, const SubtorusSpec& t) {
  if (t.generators.empty()) throw Error(ErrorCode::InvalidArgument, "subtorus needs at least one generator");
  const std::size_t r = t.codim();
  std::vector<std::size_t> kept;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (in_rational_span(t.generators, r, g.edge(e).alpha_at_u)) kept.push_back(e);
  }
  DisjointSets ds(g.vertex_count());
  std::vector<bool> touched(g.vertex_count(), false);
  for (auto e : kept) {
    ds.unite(g.edge(e).u, g.edge(e).v);
    touched[g.edge(e).u] = touched[g.edge(e).v] = true;
  }
  std::map<std::size_t, Subgraph> by_root;
  FixedSubgraph out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (touched[v]) {
      by_root[ds.find(v)].vertices.push_back(v);
    } else {
      out.isolated_vertices.push_back(v);
    }
  }
  for (auto e : kept) by_root[ds.find(g.edge(e).u)].edges.push_back(e);
  for (auto& [root, sub] : by_root) out.components.push_back(std::move(sub));
  return out;
}

std::size_t max_valence(const GkmGraph& g, const Subgraph& s) {
  std::map<std::size_t, std::size_t> valence;
  for (auto e : s.edges) {
    ++valence[g.edge(e).u];
    ++valence[g.edge(e).v];
  }
  std::size_t best = 0;
  for (const auto& [v, c] : valence) best = std::max(best, c);
  return best;
}

namespace {

template <typename Relabel>
GkmGraph materialize(const GkmGraph& g, const Subgraph& s, std::size_t rank, int half_dim, Relabel relabel) {
  GkmGraph out(rank, half_dim);
  std::map<std::size_t, std::size_t> local;
  for (auto v : s.vertices) local[v] = out.add_vertex(g.vertex_id(v), g.orientation_sign(v));
  for (auto e : s.edges) {
    const auto& ed = g.edge(e);
    if (!local.count(ed.u) || !local.count(ed.v)) {
      throw Error(ErrorCode::InvalidArgument, "subgraph edge leaves its vertex set");
    }
    out.add_edge(local[ed.u], local[ed.v], relabel(ed.alpha_at_u));
  }
  return out;
}

}  // namespace

GkmGraph extract(const GkmGraph& g, const Subgraph& s, int half_dim) {
  return materialize(g, s, g.torus_rank(), half_dim, [](const IntVector& w) { return w; });
}

GkmGraph restrict_to_lattice(const GkmGraph& g, const Subgraph& s, const std::vector<IntVector>& lattice_basis,
                             int half_dim) {
  return materialize(g, s, lattice_basis.size(), half_dim, [&](const IntVector& w) {
    const auto coords = lattice_coordinates(lattice_basis, w);
    if (coords.empty()) throw Error(ErrorCode::InvalidArgument, "label outside the lattice span");
    IntVector out;
    for (const auto& c : coords) {
      if (!is_integer(c)) throw Error(ErrorCode::InvalidArgument, "label is not integral in the lattice basis");
      out.push_back(c.get_num().get_si());
    }
    return out;
  });
}

std::vector<SkeletonPiece> two_skeleton_components(const GkmGraph& g) {
  if (auto w = gkm_k_witness(g, 3)) {
    throw Error(ErrorCode::Gkm3Required, "three dependent labels at vertex '" + g.vertex_id(w->vertex) + "'");
  }
  std::vector<SkeletonPiece> out;
  std::map<std::vector<IntVector>, std::size_t> seen;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& inc = g.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        std::vector<IntVector> pair{inc[i].label, inc[j].label};
        if (integer_rank(pair) < 2) {
          throw Error(ErrorCode::Gkm3Required, "parallel labels at vertex '" + g.vertex_id(v) + "'");
        }
        auto key = saturated_lattice_basis(pair, g.torus_rank());
        if (seen.count(key)) continue;
        seen.emplace(key, out.size());
        SkeletonPiece piece{key, fixed_subgraph(g, SubtorusSpec{key}).components};
        out.push_back(std::move(piece));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

using PairKey = std::pair<std::size_t, std::size_t>;

struct PairIndex {
  // (min, max) vertex pair -> sorted list of (normalized label, edge)
  std::map<PairKey, std::vector<std::pair<IntVector, std::size_t>>> pairs;
  std::vector<std::size_t> degree;
};

PairIndex index_pairs(const GkmGraph& g, bool match_labels) {
  PairIndex idx;
  idx.degree.assign(g.vertex_count(), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    PairKey key{std::min(ed.u, ed.v), std::max(ed.u, ed.v)};
    IntVector label = match_labels ? sign_normalized(ed.alpha_at_u) : IntVector{};
    idx.pairs[key].emplace_back(std::move(label), e);
    ++idx.degree[ed.u];
    ++idx.degree[ed.v];
  }
  for (auto& [k, list] : idx.pairs) std::sort(list.begin(), list.end());
  return idx;
}

bool same_labels(const std::vector<std::pair<IntVector, std::size_t>>* a,
                 const std::vector<std::pair<IntVector, std::size_t>>* b) {
  const std::size_t na = a ? a->size() : 0;
  const std::size_t nb = b ? b->size() : 0;
  if (na != nb) return false;
  for (std::size_t i = 0; i < na; ++i) {
    if ((*a)[i].first != (*b)[i].first) return false;
  }
  return true;
}

const std::vector<std::pair<IntVector, std::size_t>>* lookup(const PairIndex& idx, std::size_t a, std::size_t b) {
  auto it = idx.pairs.find(PairKey{std::min(a, b), std::max(a, b)});
  return it == idx.pairs.end() ? nullptr : &it->second;
}

}  // namespace

std::optional<Isomorphism> isomorphic(const GkmGraph& g1, const GkmGraph& g2, bool match_labels) {
  if (match_labels && g1.torus_rank() != g2.torus_rank()) {
    throw Error(ErrorCode::InvalidArgument, "label matching requires equal torus ranks");
  }
  const std::size_t n = g1.vertex_count();
  if (n != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return std::nullopt;
  const PairIndex p1 = index_pairs(g1, match_labels);
  const PairIndex p2 = index_pairs(g2, match_labels);
  {
    auto d1 = p1.degree;
    auto d2 = p2.degree;
    std::sort(d1.begin(), d1.end());
    std::sort(d2.begin(), d2.end());
    if (d1 != d2) return std::nullopt;
  }

  // Visit g1 vertices in BFS order from the highest-degree vertex of each
  // component, so every new vertex is constrained by an already-mapped one.
  std::vector<std::size_t> order;
  std::vector<bool> queued(n, false);
  std::vector<std::size_t> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), 0);
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](std::size_t a, std::size_t b) { return p1.degree[a] > p1.degree[b]; });
  for (auto start : by_degree) {
    if (queued[start]) continue;
    queued[start] = true;
    std::size_t head = order.size();
    order.push_back(start);
    for (; head < order.size(); ++head) {
      for (const auto& inc : g1.incident(order[head])) {
        if (!queued[inc.other]) {
          queued[inc.other] = true;
          order.push_back(inc.other);
        }
      }
    }
  }

  std::vector<std::size_t> map(n, n);
  std::vector<bool> used(n, false);
  auto consistent = [&](std::size_t depth, std::size_t u, std::size_t image) {
    if (p1.degree[u] != p2.degree[image]) return false;
    if (!same_labels(lookup(p1, u, u), lookup(p2, image, image))) return false;
    for (std::size_t k = 0; k < depth; ++k) {
      const std::size_t w = order[k];
      if (!same_labels(lookup(p1, u, w), lookup(p2, image, map[w]))) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const std::size_t u = order[depth];
    for (std::size_t cand = 0; cand < n; ++cand) {
      if (used[cand] || !consistent(depth, u, cand)) continue;
      map[u] = cand;
      used[cand] = true;
      if (self(self, depth + 1)) return true;
      used[cand] = false;
      map[u] = n;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;

  Isomorphism iso;
  iso.vertex_map = map;
  iso.edge_map.assign(g1.edge_count(), 0);
  for (const auto& [key, list] : p1.pairs) {
    const auto* image = lookup(p2, map[key.first], map[key.second]);
    for (std::size_t i = 0; i < list.size(); ++i) iso.edge_map[list[i].second] = (*image)[i].second;
  }
  return iso;
}

// ---------------------------------------------------------------------------
// Localization sets

bool s0_membership(const std::vector<Weight>& weights) {
  return std::none_of(weights.begin(), weights.end(), [](const Weight& w) { return w.is_zero(); });
}

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

bool sp_membership(const std::vector<Weight>& weights, long long p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  return std::none_of(weights.begin(), weights.end(), [p](const Weight& w) {
    return std::all_of(w.components.begin(), w.components.end(), [p](long long x) { return x % p == 0; });
  });
}

long long euler_characteristic(const GkmGraph& g) { return static_cast<long long>(g.vertex_count()); }

std::vector<std::vector<std::size_t>> connected_components(const GkmGraph& g) {
  DisjointSets ds(g.vertex_count());
  for (const auto& e : g.edges()) ds.unite(e.u, e.v);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) groups[ds.find(v)].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, vs] : groups) out.push_back(std::move(vs));
  return out;
}

}  // namespace gkm
