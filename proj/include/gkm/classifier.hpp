#pragma once

// Sphere-type versus complex-projective-type recognition for GKM_3 graphs
// of 10-dimensional actions.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gkm/gkm_core.hpp"

namespace gkm {

/// Weights a_v (indexed like the vertices of g) with every edge label equal
/// to +-(a_w - a_u), in the gauge a_{v0} = 0 and first tree edge taken with
/// sign +. std::nullopt when no such assignment exists. Throws NotComplete
/// unless g is a complete simple graph.
std::optional<std::vector<IntVector>> cpn_realizable(const GkmGraph& g);

enum class ComponentType { SphereType, CPType, Unrecognized };

std::string_view component_type_name(ComponentType t);

struct ComponentVerdict {
  ComponentType type = ComponentType::Unrecognized;
  std::vector<std::string> vertex_ids;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::optional<std::array<std::string, 3>> triangle;
  std::vector<IntVector> weights;  // CPType only, aligned with vertex_ids
  std::string reason;              // the failed test for Unrecognized
};

/// One verdict per connected component, in order of the smallest vertex
/// index. Requires a valid GKM_3 graph with half dimension 5 (throws
/// InvalidArgument or Gkm3Required otherwise).
std::vector<ComponentVerdict> classify(const GkmGraph& g);

}  // namespace gkm
