#pragma once

// Canonical JSON interchange for graphs, classes, chase problems and weight
// lists. Parsers reject unknown fields and report ErrorCode::Parse.

#include <string>
#include <string_view>
#include <vector>

#include "gkm/betti_chase.hpp"
#include "gkm/graph_cohomology.hpp"

namespace gkm {

/// { "torus_rank", "half_dim", "vertices", "orientation_signs"?, "edges": [{"u","v","alpha_at_u"}] }
GkmGraph parse_graph(std::string_view text);
/// Canonical form: sorted keys, sorted vertex ids, edges oriented and sorted.
std::string serialize_graph(const GkmGraph& g);

/// { "degree": 2j, "values": { id: [ {"c": "p/q", "exp": [...]}, ... ] } }
EquivariantClass parse_class(const GkmGraph& g, std::string_view text);
std::string serialize_class(const GkmGraph& g, const EquivariantClass& c);

/// { "totals": [...], "cutoffs"?: [...], "steps"?: n, "pins"?: {...} }.
/// Totals are affine strings, integers or "?". Missing cutoffs default to
/// three steps.
ChaseProblem parse_problem(std::string_view text);

/// A JSON array of integer arrays.
std::vector<IntVector> parse_weights(std::string_view text);

}  // namespace gkm
