#include "gkm/localization.hpp"

#include <map>
#include <numeric>

#include "gkm/error.hpp"

namespace gkm {

namespace {

struct LabelFactor {
  IntVector line;   // primitive, sign normalized
  long long scale;  // label = scale * line
};

LabelFactor factor_label(const IntVector& label) {
  long long g = 0;
  for (long long x : label) g = std::gcd(g, x);
  if (g == 0) throw Error(ErrorCode::InvalidArgument, "zero label in the Euler class");
  IntVector line = label;
  for (auto& x : line) x /= g;
  IntVector normalized = sign_normalized(line);
  return LabelFactor{normalized, normalized == line ? g : -g};
}

// The graph-only part of the localization sum: Euler classes, the common
// denominator L and the cofactors L / e_v.
struct Plan {
  std::vector<Polynomial> euler;
  std::vector<Polynomial> cofactor;
  std::map<IntVector, int> common;  // line -> exponent in L
};

Plan make_plan(const GkmGraph& g) {
  const std::size_t d = g.torus_rank();
  const std::size_t nv = g.vertex_count();
  Plan plan;
  std::vector<std::map<IntVector, int>> multiplicity(nv);
  std::vector<Rational> scale(nv, 1);
  for (std::size_t v = 0; v < nv; ++v) {
    Polynomial euler = Polynomial::constant(d, 1);
    for (const auto& inc : g.incident(v)) {
      if (inc.other == v) continue;
      const auto factor = factor_label(inc.label);
      ++multiplicity[v][factor.line];
      scale[v] *= Rational(static_cast<long>(factor.scale));
      euler = euler * Polynomial::linear_form(inc.label);
    }
    for (const auto& [line, m] : multiplicity[v]) plan.common[line] = std::max(plan.common[line], m);
    plan.euler.push_back(std::move(euler));
  }
  for (std::size_t v = 0; v < nv; ++v) {
    Polynomial cofactor = Polynomial::constant(d, 1 / scale[v]);
    for (const auto& [line, m] : plan.common) {
      auto it = multiplicity[v].find(line);
      const int missing = m - (it == multiplicity[v].end() ? 0 : it->second);
      if (missing > 0) cofactor = cofactor * Polynomial::linear_form(line).pow(static_cast<unsigned>(missing));
    }
    plan.cofactor.push_back(std::move(cofactor));
  }
  return plan;
}

PushforwardReport apply_plan(const GkmGraph& g, const Plan& plan, const EquivariantClass& f) {
  const std::size_t d = g.torus_rank();
  PushforwardReport report{f.degree, Polynomial(d), {}};
  // N = sum_v sign(v) f(v) * (L / e_v)
  Polynomial numerator(d);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    report.contributions.push_back(VertexContribution{v, f.values[v] * Rational(g.orientation_sign(v)), plan.euler[v]});
    numerator += report.contributions[v].numerator * plan.cofactor[v];
  }
  for (const auto& [line, m] : plan.common) {
    for (int k = 0; k < m; ++k) {
      auto division = divide_by_linear_form(numerator, line);
      if (!division.remainder.is_zero()) {
        std::string l = Polynomial::linear_form(line).to_string();
        throw Error(ErrorCode::NonPolynomialResult,
                    "the localization sum keeps a denominator (" + l + ")^" + std::to_string(m - k));
      }
      numerator = std::move(division.quotient);
    }
  }
  const int expected = f.half_degree() - g.half_dim();
  if (!numerator.is_zero() && (expected < 0 || numerator.degree() != expected || !numerator.is_homogeneous())) {
    throw Error(ErrorCode::NonPolynomialResult, "pushforward has the wrong degree");
  }
  report.result = std::move(numerator);
  return report;
}

}  // namespace

PushforwardReport pushforward(const GkmGraph& g, const EquivariantClass& f) {
  if (!is_valid_class(g, f)) throw Error(ErrorCode::InvalidArgument, "not a valid equivariant class on this graph");
  return apply_plan(g, make_plan(g), f);
}

Polynomial integrate(const GkmGraph& g, const EquivariantClass& f) { return pushforward(g, f).result; }

OrientationCertificate validate_orientation_signs(const GkmGraph& g) {
  OrientationCertificate cert;
  for (int j = 0; j < g.half_dim(); ++j) {
    const auto basis = equivariant_basis(g, j);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      ++cert.classes_checked;
      std::string problem;
      try {
        const auto r = integrate(g, basis[i]);
        if (!r.is_zero()) problem = "pushforward is " + r.to_string() + ", expected 0";
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonPolynomialResult) throw;
        problem = e.what();
      }
      if (!problem.empty()) {
        cert.consistent = false;
        cert.failing_half_degree = j;
        cert.failing_class = i;
        cert.detail = std::move(problem);
        return cert;
      }
    }
  }
  return cert;
}

EquivariantClass assemble(const GkmGraph& g, const EquivariantClass& x, const ModuleCoordinates& mc, int degree) {
  const std::size_t d = g.torus_rank();
  EquivariantClass out{degree, std::vector<Polynomial>(g.vertex_count(), Polynomial(d))};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    Polynomial power = Polynomial::constant(d, 1);
    for (const auto& c : mc.coefficients) {
      out.values[v] += c * power;
      power = power * x.values[v];
    }
  }
  return out;
}

ModuleCoordinates module_coordinates(const GkmGraph& g, const EquivariantClass& x, const EquivariantClass& f) {
  const int n = g.half_dim();
  const std::size_t d = g.torus_rank();
  if (x.degree != 2) throw Error(ErrorCode::InvalidArgument, "generator must have degree 2");
  if (!is_valid_class(g, x) || !is_valid_class(g, f))
    throw Error(ErrorCode::InvalidArgument, "not a valid equivariant class on this graph");
  // Products of valid classes are valid, so the pushforwards below skip the check.
  const Plan plan = make_plan(g);
  auto integrate_valid = [&](const EquivariantClass& c) { return apply_plan(g, plan, c).result; };
  // table[k] = pi_!(x^k)
  std::vector<Polynomial> table;
  EquivariantClass xk = constant_class(g, Polynomial::constant(d, 1));
  for (int k = 0; k <= 2 * n; ++k) {
    table.push_back(integrate_valid(xk));
    xk = xk * x;
  }

  ModuleCoordinates mc{std::vector<Polynomial>(static_cast<std::size_t>(n) + 1, Polynomial(d))};
  EquivariantClass fx = f;
  for (int m = 0; m <= n; ++m) {
    Polynomial c = integrate_valid(fx);
    for (int i = n - m + 1; i <= n; ++i) c -= mc.coefficients[static_cast<std::size_t>(i)] * table[static_cast<std::size_t>(i + m)];
    mc.coefficients[static_cast<std::size_t>(n - m)] = std::move(c);
    fx = fx * x;
  }
  const auto back = assemble(g, x, mc, f.degree);
  if (back.values != f.values) {
    throw Error(ErrorCode::ResidualNonzero, "class is not in the span of 1, x, ..., x^n");
  }
  return mc;
}

ModuleCoordinates module_coordinates(const GkmGraph& g, const EquivariantClass& f) {
  return module_coordinates(g, generator_class(g), f);
}

std::vector<bool> modp_divisibility(const ModuleCoordinates& mc, long long p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  const Integer prime(static_cast<long>(p));
  std::vector<bool> out;
  for (std::size_t i = 0; i < mc.coefficients.size(); ++i) {
    bool divisible = true;
    for (const auto& [e, c] : mc.coefficients[i].terms()) {
      if (!is_integer(c)) {
        throw Error(ErrorCode::NonIntegralCoefficient, "coefficient c_" + std::to_string(i) + " has entry " + c.get_str());
      }
      if (mpz_divisible_p(c.get_num().get_mpz_t(), prime.get_mpz_t()) == 0) divisible = false;
    }
    out.push_back(divisible);
  }
  return out;
}

}  // namespace gkm
