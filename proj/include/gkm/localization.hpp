#pragma once

// Integration over the fiber by fixed-point localization:
//   pi_!(f) = sum_v sign(v) * f(v) / e_v,   e_v = product of tangent weights at v.

#include <cstddef>
#include <string>
#include <vector>

#include "gkm/graph_cohomology.hpp"

namespace gkm {

struct VertexContribution {
  std::size_t vertex = 0;
  Polynomial numerator;    // sign(v) * f(v)
  Polynomial euler_class;  // e_v
};

struct PushforwardReport {
  int input_degree = 0;
  Polynomial result;  // homogeneous of degree j - n, or zero
  std::vector<VertexContribution> contributions;
};

/// Sums the contributions over a common denominator (the product of the
/// distinct label lines with maximal multiplicity) and divides it out
/// exactly. Throws NonPolynomialResult when the division leaves a remainder.
PushforwardReport pushforward(const GkmGraph& g, const EquivariantClass& f);
Polynomial integrate(const GkmGraph& g, const EquivariantClass& f);

struct OrientationCertificate {
  bool consistent = true;
  std::size_t classes_checked = 0;
  int failing_half_degree = -1;       // j of the first failing basis class
  std::size_t failing_class = 0;      // its index in equivariant_basis(g, j)
  std::string detail;
};

/// Every basis class of degree 2j < 2n must push forward to zero.
OrientationCertificate validate_orientation_signs(const GkmGraph& g);

/// Coefficients c_0..c_n with f = sum_i c_i x^i, each c_i homogeneous of
/// degree (deg f)/2 - i in H*(BT).
struct ModuleCoordinates {
  std::vector<Polynomial> coefficients;
};

/// Descending recursion c_n = pi_!(f), c_{n-m} = pi_!(f x^m) - sum_{i>n-m} c_i pi_!(x^{i+m}).
/// Throws ResidualNonzero if the reassembled class differs from f.
ModuleCoordinates module_coordinates(const GkmGraph& g, const EquivariantClass& x, const EquivariantClass& f);
/// Uses generator_class(g) for x.
ModuleCoordinates module_coordinates(const GkmGraph& g, const EquivariantClass& f);

/// sum_i c_i x^i, evaluated vertexwise.
EquivariantClass assemble(const GkmGraph& g, const EquivariantClass& x, const ModuleCoordinates& mc, int degree);

/// For each coefficient: are all its (integer) coefficients divisible by p?
/// Throws NonIntegralCoefficient on fractional input, InvalidArgument when p
/// is not prime.
std::vector<bool> modp_divisibility(const ModuleCoordinates& mc, long long p);

}  // namespace gkm
