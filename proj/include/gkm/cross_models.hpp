#pragma once

// GKM graphs of linear torus actions on compact rank-one symmetric spaces.
// Orientation signs are chosen so that the canonical top class pairs to +1.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gkm/gkm_core.hpp"

namespace gkm {

enum class Family { Sphere, ComplexProjective, QuaternionicProjective };

std::string_view family_name(Family f);
/// Accepts "sphere", "cpn", "hpn" and the long names.
std::optional<Family> parse_family(std::string_view name);

struct ModelSpec {
  Family family = Family::ComplexProjective;
  std::vector<Weight> parameters;  // w_1..w_n for spheres, a_0..a_n otherwise
  std::size_t torus_rank = 0;
};

/// Two vertices p+ and p-, edge i labeled w_i at p+. The sign at p- is
/// (-1)^(n+1).
GkmGraph sphere_graph(std::span<const IntVector> weights);

/// Complete graph on a_0..a_n; edge (i, j) has label a_j - a_i at i. All
/// orientation signs are (-1)^n.
GkmGraph cpn_graph(std::span<const IntVector> weights);

/// n+1 vertices, each pair joined by edges labeled a_j - a_i and a_j + a_i
/// at i (valence 2n, half dimension 2n). Vertex i has sign (-1)^(n+i).
GkmGraph hpn_graph(std::span<const IntVector> weights);

GkmGraph build_model(const ModelSpec& spec);

/// Moment-curve parameters: a_i = (i, i^2, ..., i^d) for complex projective
/// space, a_i = (i+1, ..., (i+1)^d) for quaternionic projective space and
/// w_i = (1, i, ..., i^(d-1)) for spheres.
std::vector<IntVector> generic_weights(Family family, int n, std::size_t d);

}  // namespace gkm
