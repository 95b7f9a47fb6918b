#include "gkm/graph_cohomology.hpp"

#include <map>

#include "gkm/error.hpp"

namespace gkm {

EquivariantClass constant_class(const GkmGraph& g, const Polynomial& f) {
  if (f.variable_count() != g.torus_rank() || !f.is_homogeneous()) {
    throw Error(ErrorCode::InvalidArgument, "constant class needs a homogeneous polynomial in d variables");
  }
  return EquivariantClass{2 * std::max(f.degree(), 0), std::vector<Polynomial>(g.vertex_count(), f)};
}

namespace {

void check_same_shape(const EquivariantClass& a, const EquivariantClass& b) {
  if (a.values.size() != b.values.size()) throw Error(ErrorCode::InvalidArgument, "classes on different graphs");
}

}  // namespace

EquivariantClass operator+(const EquivariantClass& a, const EquivariantClass& b) {
  check_same_shape(a, b);
  if (a.degree != b.degree) throw Error(ErrorCode::InvalidArgument, "adding classes of different degrees");
  EquivariantClass out{a.degree, a.values};
  for (std::size_t v = 0; v < out.values.size(); ++v) out.values[v] += b.values[v];
  return out;
}

EquivariantClass operator*(const EquivariantClass& a, const EquivariantClass& b) {
  check_same_shape(a, b);
  EquivariantClass out{a.degree + b.degree, {}};
  out.values.reserve(a.values.size());
  for (std::size_t v = 0; v < a.values.size(); ++v) out.values.push_back(a.values[v] * b.values[v]);
  return out;
}

EquivariantClass operator*(const Rational& s, const EquivariantClass& a) {
  EquivariantClass out = a;
  for (auto& p : out.values) p *= s;
  return out;
}

EquivariantClass pow(const EquivariantClass& a, unsigned exponent) {
  EquivariantClass out{a.degree * static_cast<int>(exponent), {}};
  for (const auto& p : a.values) out.values.push_back(p.pow(exponent));
  return out;
}

bool is_valid_class(const GkmGraph& g, const EquivariantClass& c) {
  if (c.degree < 0 || c.degree % 2 != 0 || c.values.size() != g.vertex_count()) return false;
  for (const auto& p : c.values) {
    if (p.variable_count() != g.torus_rank() || !p.is_homogeneous()) return false;
    if (!p.is_zero() && p.degree() != c.half_degree()) return false;
  }
  for (const auto& e : g.edges()) {
    if (e.u == e.v) continue;
    const Polynomial diff = c.values[e.u] - c.values[e.v];
    if (!restrict_to_hyperplane(diff, e.alpha_at_u).is_zero()) return false;
  }
  return true;
}

namespace {

/// Stacked restriction constraints for degree j: unknown (v, m) sits in
/// column v * |monomials| + m.
Matrix constraint_matrix(const GkmGraph& g, int j, const std::vector<Exponent>& monomials) {
  const std::size_t d = g.torus_rank();
  const std::size_t per_vertex = monomials.size();
  const std::size_t cols = g.vertex_count() * per_vertex;
  const auto targets = homogeneous_basis(d == 0 ? 0 : d - 1, j);
  std::map<Exponent, std::size_t> target_index;
  for (std::size_t i = 0; i < targets.size(); ++i) target_index.emplace(targets[i], i);

  // restriction of each monomial to the hyperplane of a label, cached per label line
  std::map<IntVector, std::vector<Polynomial>> cache;
  Matrix m(0, cols);
  std::vector<Rational> row(cols);
  for (const auto& e : g.edges()) {
    if (e.u == e.v) continue;
    const IntVector key = sign_normalized(e.alpha_at_u);
    auto it = cache.find(key);
    if (it == cache.end()) {
      std::vector<Polynomial> images;
      images.reserve(per_vertex);
      for (const auto& mono : monomials) images.push_back(restrict_to_hyperplane(Polynomial::monomial(mono, 1), key));
      it = cache.emplace(key, std::move(images)).first;
    }
    std::vector<std::vector<Rational>> rows(targets.size(), std::vector<Rational>(cols));
    for (std::size_t k = 0; k < per_vertex; ++k) {
      for (const auto& [exp, coeff] : it->second[k].terms()) {
        const std::size_t r = target_index.at(exp);
        rows[r][e.u * per_vertex + k] += coeff;
        rows[r][e.v * per_vertex + k] -= coeff;
      }
    }
    for (const auto& r : rows) m.append_row(r);
  }
  return m;
}

EquivariantClass class_from_vector(const GkmGraph& g, int j, const std::vector<Exponent>& monomials,
                                   const std::vector<Rational>& coords) {
  EquivariantClass c{2 * j, std::vector<Polynomial>(g.vertex_count(), Polynomial(g.torus_rank()))};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t k = 0; k < monomials.size(); ++k) {
      c.values[v].add_term(monomials[k], coords[v * monomials.size() + k]);
    }
  }
  return c;
}

}  // namespace

std::size_t equivariant_dim(const GkmGraph& g, int j) {
  if (j < 0) return 0;
  const auto monomials = homogeneous_basis(g.torus_rank(), j);
  const Matrix m = constraint_matrix(g, j, monomials);
  return m.cols() - rank(m);
}

std::vector<EquivariantClass> equivariant_basis(const GkmGraph& g, int j) {
  if (j < 0) return {};
  const auto monomials = homogeneous_basis(g.torus_rank(), j);
  const Matrix m = constraint_matrix(g, j, monomials);
  std::vector<EquivariantClass> out;
  for (const auto& k : kernel_basis(m)) out.push_back(class_from_vector(g, j, monomials, k));
  return out;
}

BettiReport betti_report(const GkmGraph& g) {
  const int n = g.half_dim();
  const auto d = g.torus_rank();
  // d extra degrees expose implied Betti numbers beyond 2n
  const int top = n + static_cast<int>(d);
  std::vector<Rational> dims;
  BettiReport report;
  for (int j = 0; j <= top; ++j) {
    const auto dim = equivariant_dim(g, j);
    dims.emplace_back(static_cast<unsigned long>(dim));
    if (j <= n) report.equivariant_dims.push_back(dim);
  }
  BettiProfile extended;
  try {
    extended = series_shape_divide(PoincareSeries::from_even(dims), d, top);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotFormal, e.what());
  }
  for (int i = 2 * n + 1; i <= 2 * top; ++i) {
    if (extended[static_cast<std::size_t>(i)] != 0) {
      throw Error(ErrorCode::NotFormal, "implied Betti number b_" + std::to_string(i) + " = " +
                                            std::to_string(extended[static_cast<std::size_t>(i)]) +
                                            " beyond the top degree " + std::to_string(2 * n));
    }
  }
  extended.resize(static_cast<std::size_t>(2 * n + 1));
  report.betti = std::move(extended);
  return report;
}

BettiProfile ordinary_betti(const GkmGraph& g) { return betti_report(g).betti; }

bool formality_check(const GkmGraph& g) {
  try {
    (void)ordinary_betti(g);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotFormal) return false;
    throw;
  }
}

EquivariantClass generator_class(const GkmGraph& g, std::span<const IntVector> weights) {
  const std::size_t n = g.vertex_count();
  if (weights.size() != n) throw Error(ErrorCode::WrongFamily, "need one weight per vertex");
  if (g.edge_count() != n * (n - 1) / 2) throw Error(ErrorCode::WrongFamily, "graph is not complete");
  for (const auto& e : g.edges()) {
    IntVector diff(g.torus_rank());
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = weights[e.v].at(k) - weights[e.u].at(k);
    if (e.u == e.v || diff != e.alpha_at_u) {
      throw Error(ErrorCode::WrongFamily, "edge labels are not the weight differences");
    }
  }
  EquivariantClass x{2, {}};
  for (const auto& a : weights) x.values.push_back(Polynomial::linear_form(a));
  return x;
}

EquivariantClass generator_class(const GkmGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw Error(ErrorCode::WrongFamily, "empty graph");
  std::vector<IntVector> weights(n, IntVector(g.torus_rank(), 0));
  std::vector<bool> set(n, false);
  set[0] = true;
  for (const auto& inc : g.incident(0)) {
    if (set[inc.other]) throw Error(ErrorCode::WrongFamily, "repeated neighbour of the first vertex");
    weights[inc.other] = inc.label;
    set[inc.other] = true;
  }
  for (bool s : set) {
    if (!s) throw Error(ErrorCode::WrongFamily, "first vertex is not adjacent to every vertex");
  }
  return generator_class(g, weights);
}

}  // namespace gkm
