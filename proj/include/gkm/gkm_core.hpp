#pragma once

// Labeled GKM multigraphs: vertices are torus-fixed points, edges are
// invariant 2-spheres, and each edge carries the tangent weight at its
// source endpoint (the weight at the other endpoint is the negative).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gkm/exact_algebra.hpp"

namespace gkm {

/// A character of T^d. When `oriented` is false the weight is only defined
/// up to sign and equality ignores the sign.
struct Weight {
  IntVector components;
  bool oriented = true;

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] Weight negated() const;
  friend bool operator==(const Weight& a, const Weight& b);
};

/// Representative of {w, -w}: the first nonzero entry is made positive.
IntVector sign_normalized(const IntVector& w);
/// Primitive representative of the line through w (sign normalized, gcd 1).
IntVector primitive_direction(const IntVector& w);

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  IntVector alpha_at_u;

  [[nodiscard]] IntVector alpha_at_v() const;
};

/// An edge seen from one of its endpoints.
struct IncidentEdge {
  std::size_t edge = 0;
  std::size_t other = 0;
  IntVector label;  // tangent weight at this endpoint
};

class GkmGraph {
 public:
  GkmGraph(std::size_t torus_rank, int half_dim);

  std::size_t add_vertex(std::string id, int orientation_sign = 1);
  std::size_t add_edge(std::size_t u, std::size_t v, IntVector alpha_at_u);
  std::size_t add_edge(std::string_view u, std::string_view v, IntVector alpha_at_u);
  void set_orientation_sign(std::size_t vertex, int sign);

  [[nodiscard]] std::size_t torus_rank() const { return torus_rank_; }
  [[nodiscard]] int half_dim() const { return half_dim_; }
  [[nodiscard]] std::size_t vertex_count() const { return ids_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] const std::string& vertex_id(std::size_t v) const { return ids_.at(v); }
  [[nodiscard]] const std::vector<std::string>& vertex_ids() const { return ids_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const Edge& edge(std::size_t e) const { return edges_.at(e); }
  [[nodiscard]] int orientation_sign(std::size_t v) const { return signs_.at(v); }
  [[nodiscard]] const std::vector<IncidentEdge>& incident(std::size_t v) const { return incidence_.at(v); }
  /// Index of the first vertex with this id.
  [[nodiscard]] std::optional<std::size_t> find_vertex(std::string_view id) const;
  /// Tangent weight of edge e at endpoint v.
  [[nodiscard]] IntVector label_at(std::size_t e, std::size_t v) const;

  /// Same graph with vertices sorted by id and every edge oriented from the
  /// smaller to the larger id; edges sorted by (u, v, label).
  [[nodiscard]] GkmGraph canonical() const;

  /// Structural equality of canonical forms.
  friend bool operator==(const GkmGraph& a, const GkmGraph& b);

 private:
  std::size_t torus_rank_;
  int half_dim_;
  std::vector<std::string> ids_;
  std::vector<int> signs_;
  std::vector<Edge> edges_;
  std::vector<std::vector<IncidentEdge>> incidence_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Disjoint union; vertex ids get the given per-graph prefixes.
GkmGraph disjoint_union(const std::vector<GkmGraph>& graphs, const std::vector<std::string>& prefixes);

struct Violation {
  enum class Kind { Valence, ZeroLabel, DuplicateId, Loop };
  Kind kind;
  std::string detail;
};

std::vector<Violation> validate(const GkmGraph& g);

struct GkmKWitness {
  std::size_t vertex = 0;
  std::vector<std::size_t> edges;  // the dependent k-subset of incident edges
};

struct GkmKResult {
  bool pass = true;
  std::optional<GkmKWitness> witness;
};

/// Checks that at every vertex any k incident labels are linearly
/// independent. Requires 2 <= k <= torus rank.
GkmKResult check_gkm_k(const GkmGraph& g, int k);

/// The subtorus is the identity component of the joint kernel of the
/// generators; it fixes exactly the edges whose label lies in the rational
/// span of the generators.
struct SubtorusSpec {
  std::vector<IntVector> generators;

  [[nodiscard]] std::size_t codim() const;
};

/// Vertex and edge indices into a parent graph.
struct Subgraph {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> edges;
};

struct FixedSubgraph {
  std::vector<Subgraph> components;         // components with at least one edge
  std::vector<std::size_t> isolated_vertices;
};

FixedSubgraph fixed_subgraph(const GkmGraph& g, const SubtorusSpec& t);

/// Maximal valence of a vertex inside a subgraph.
std::size_t max_valence(const GkmGraph& g, const Subgraph& s);

/// Materializes a subgraph as a graph with the given half dimension.
GkmGraph extract(const GkmGraph& g, const Subgraph& s, int half_dim);

/// Materializes a subgraph with labels rewritten in coordinates of a
/// saturated lattice basis (torus rank = lattice rank). Throws if a label is
/// not an integral combination of the basis.
GkmGraph restrict_to_lattice(const GkmGraph& g, const Subgraph& s,
                             const std::vector<IntVector>& lattice_basis, int half_dim);

struct SkeletonPiece {
  std::vector<IntVector> lattice;  // Hermite basis of a saturated rank-2 lattice
  std::vector<Subgraph> components;
};

/// Fixed subgraphs of all codimension-2 subtori spanned by pairs of labels
/// at a common vertex. Requires GKM_3 (throws Gkm3Required).
std::vector<SkeletonPiece> two_skeleton_components(const GkmGraph& g);

struct Isomorphism {
  std::vector<std::size_t> vertex_map;  // g1 vertex -> g2 vertex
  std::vector<std::size_t> edge_map;    // g1 edge -> g2 edge
};

/// Backtracking search for a vertex and edge bijection preserving incidence.
/// With match_labels, labels must agree up to sign in the fixed coordinates
/// of Z^d; lattice automorphisms are not searched.
std::optional<Isomorphism> isomorphic(const GkmGraph& g1, const GkmGraph& g2, bool match_labels);

bool s0_membership(const std::vector<Weight>& weights);
/// Throws InvalidArgument when p is not prime.
bool sp_membership(const std::vector<Weight>& weights, long long p);
bool is_prime(long long p);

/// Number of fixed points.
long long euler_characteristic(const GkmGraph& g);

/// Connected components as vertex index lists (ascending).
std::vector<std::vector<std::size_t>> connected_components(const GkmGraph& g);

}  // namespace gkm
