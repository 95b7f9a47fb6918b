#pragma once

// Graph equivariant cohomology: vertex assignments of homogeneous polynomials
// whose differences across each edge are divisible by the edge label.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gkm/exact_algebra.hpp"
#include "gkm/gkm_core.hpp"

namespace gkm {

/// A class of cohomological degree 2j: one homogeneous degree-j polynomial
/// in d variables per vertex (indexed like the graph's vertices).
struct EquivariantClass {
  int degree = 0;
  std::vector<Polynomial> values;

  [[nodiscard]] int half_degree() const { return degree / 2; }
};

/// The class f * 1 for a polynomial f pulled back from BT.
EquivariantClass constant_class(const GkmGraph& g, const Polynomial& f);
EquivariantClass operator+(const EquivariantClass& a, const EquivariantClass& b);
EquivariantClass operator*(const EquivariantClass& a, const EquivariantClass& b);
EquivariantClass operator*(const Rational& s, const EquivariantClass& a);
EquivariantClass pow(const EquivariantClass& a, unsigned exponent);

/// Shape (homogeneity, vertex count, ring) and edge divisibility.
bool is_valid_class(const GkmGraph& g, const EquivariantClass& c);

/// Dimension over Q of the degree-2j part.
std::size_t equivariant_dim(const GkmGraph& g, int j);

/// A Q-basis of the degree-2j part, deterministic for a fixed monomial order.
std::vector<EquivariantClass> equivariant_basis(const GkmGraph& g, int j);

struct BettiReport {
  std::vector<std::size_t> equivariant_dims;  // j = 0..n
  BettiProfile betti;                         // degrees 0..2n
};

/// Ordinary Betti numbers, assuming equivariant formality (vanishing odd
/// Betti numbers). Throws NotFormal when the equivariant Poincare series is
/// not of the form P(q) / (1 - q^2)^d with P a valid profile of degree <= 2n.
BettiReport betti_report(const GkmGraph& g);
BettiProfile ordinary_betti(const GkmGraph& g);

/// True iff ordinary_betti succeeds.
bool formality_check(const GkmGraph& g);

/// Equivariant lift x of the degree-2 generator of a complex projective
/// model: x(v_i) = a_i. Throws WrongFamily unless g is the complete graph
/// whose labels are the differences a_j - a_i.
EquivariantClass generator_class(const GkmGraph& g, std::span<const IntVector> weights);

/// Same, with the weights read off the labels at the first vertex
/// (a_0 = 0, a_v = label at v_0 toward v).
EquivariantClass generator_class(const GkmGraph& g);

}  // namespace gkm
