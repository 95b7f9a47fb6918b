#include "gkm/cross_models.hpp"

#include <set>
#include <string>

#include "gkm/error.hpp"

namespace gkm {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Sphere: return "sphere";
    case Family::ComplexProjective: return "cpn";
    case Family::QuaternionicProjective: return "hpn";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "sphere") return Family::Sphere;
  if (name == "cpn" || name == "complex_projective") return Family::ComplexProjective;
  if (name == "hpn" || name == "quaternionic_projective") return Family::QuaternionicProjective;
  return std::nullopt;
}

namespace {

std::size_t common_rank(std::span<const IntVector> weights) {
  if (weights.empty()) throw Error(ErrorCode::InvalidArgument, "model needs at least one weight");
  const std::size_t d = weights.front().size();
  for (const auto& w : weights) {
    if (w.size() != d) throw Error(ErrorCode::InvalidArgument, "weights have different lengths");
  }
  return d;
}

std::string vertex_name(std::size_t i, std::size_t last) {
  const std::size_t width = std::to_string(last).size();
  std::string digits = std::to_string(i);
  return "v" + std::string(width - digits.size(), '0') + digits;
}

IntVector combine(const IntVector& a, const IntVector& b, long long sign_b) {
  IntVector out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + sign_b * b[k];
  return out;
}

}  // namespace

GkmGraph sphere_graph(std::span<const IntVector> weights) {
  const std::size_t d = common_rank(weights);
  const auto n = static_cast<int>(weights.size());
  GkmGraph g(d, n);
  const auto plus = g.add_vertex("p+", 1);
  const auto minus = g.add_vertex("p-", n % 2 == 0 ? -1 : 1);
  for (const auto& w : weights) {
    if (Weight{w}.is_zero()) throw Error(ErrorCode::InvalidArgument, "sphere weights must be nonzero");
    g.add_edge(plus, minus, w);
  }
  return g;
}

GkmGraph cpn_graph(std::span<const IntVector> weights) {
  const std::size_t d = common_rank(weights);
  if (std::set<IntVector>(weights.begin(), weights.end()).size() != weights.size()) {
    throw Error(ErrorCode::InvalidArgument, "complex projective weights must be pairwise distinct");
  }
  const std::size_t n = weights.size() - 1;
  const int sign = n % 2 == 0 ? 1 : -1;
  GkmGraph g(d, static_cast<int>(n));
  for (std::size_t i = 0; i <= n; ++i) g.add_vertex(vertex_name(i, n), sign);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) g.add_edge(i, j, combine(weights[j], weights[i], -1));
  }
  return g;
}

GkmGraph hpn_graph(std::span<const IntVector> weights) {
  const std::size_t d = common_rank(weights);
  const std::size_t n = weights.size() - 1;
  GkmGraph g(d, static_cast<int>(2 * n));
  for (std::size_t i = 0; i <= n; ++i) g.add_vertex(vertex_name(i, n), (n + i) % 2 == 0 ? 1 : -1);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      auto diff = combine(weights[j], weights[i], -1);
      auto sum = combine(weights[j], weights[i], 1);
      if (Weight{diff}.is_zero() || Weight{sum}.is_zero()) {
        throw Error(ErrorCode::InvalidArgument, "degenerate quaternionic weights");
      }
      g.add_edge(i, j, std::move(diff));
      g.add_edge(i, j, std::move(sum));
    }
  }
  return g;
}

GkmGraph build_model(const ModelSpec& spec) {
  std::vector<IntVector> params;
  for (const auto& w : spec.parameters) {
    if (w.components.size() != spec.torus_rank) {
      throw Error(ErrorCode::InvalidArgument, "parameter length does not match torus rank");
    }
    params.push_back(w.components);
  }
  switch (spec.family) {
    case Family::Sphere: return sphere_graph(params);
    case Family::ComplexProjective: return cpn_graph(params);
    case Family::QuaternionicProjective: return hpn_graph(params);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

std::vector<IntVector> generic_weights(Family family, int n, std::size_t d) {
  if (n < 1 || d < 1) throw Error(ErrorCode::InvalidArgument, "generic weights need n >= 1 and d >= 1");
  auto moment = [d](long long base, int first_power) {
    IntVector v(d);
    long long p = 1;
    for (int k = 0; k < first_power; ++k) p *= base;
    for (std::size_t k = 0; k < d; ++k) {
      v[k] = p;
      p *= base;
    }
    return v;
  };
  std::vector<IntVector> out;
  switch (family) {
    case Family::ComplexProjective:
      for (int i = 0; i <= n; ++i) out.push_back(moment(i, 1));
      break;
    case Family::QuaternionicProjective:
      for (int i = 0; i <= n; ++i) out.push_back(moment(i + 1, 1));
      break;
    case Family::Sphere:
      for (int i = 1; i <= n; ++i) out.push_back(moment(i, 0));
      break;
  }
  return out;
}

}  // namespace gkm
