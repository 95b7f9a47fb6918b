#pragma once

// Gysin-sequence Betti chase for almost-free circle actions.
//
// For a circle acting almost freely on X with quotient Y, the rational
// spectral sequence has two rows and only d_2 can be nonzero. Writing
// B_i = b_i(Y) and rho_i = rank(d_2 : H^{i-2}(Y) -> H^i(Y)),
//
//   b_i(X) = (B_i - rho_i) + (B_{i-1} - rho_{i+1}),   0 <= rho_i <= min(B_{i-2}, B_i).
//
// The solver treats B and rho as nonnegative integer unknowns, keeps totals
// as affine expressions in named nonnegative parameters, and eliminates
// whatever the constraints force. Anything left unforced stays as a named
// unknown (e.g. "rho7@1").

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gkm/error.hpp"

namespace gkm {

class AffineExpr {
 public:
  AffineExpr() = default;
  AffineExpr(long long constant) : constant_(constant) {}  // NOLINT(google-explicit-constructor)
  static AffineExpr parameter(const std::string& name, long long coefficient = 1);
  /// Accepts sums of terms like "k", "2k", "2*k", "-3", "B4@3"; "?" is rejected.
  static AffineExpr parse(std::string_view text);

  [[nodiscard]] long long constant() const { return constant_; }
  [[nodiscard]] const std::map<std::string, long long>& coefficients() const { return coeffs_; }
  [[nodiscard]] long long coefficient(const std::string& name) const;
  [[nodiscard]] bool is_constant() const { return coeffs_.empty(); }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty() && constant_ == 0; }

  AffineExpr& operator+=(const AffineExpr& o);
  AffineExpr& operator-=(const AffineExpr& o);
  AffineExpr& operator*=(long long s);
  friend AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
  friend AffineExpr operator-(AffineExpr a, const AffineExpr& b) { return a -= b; }
  friend AffineExpr operator*(long long s, AffineExpr a) { return a *= s; }
  AffineExpr operator-() const { return -1 * *this; }
  friend bool operator==(const AffineExpr& a, const AffineExpr& b) = default;

  /// Replaces a parameter by an expression.
  [[nodiscard]] AffineExpr substitute(const std::string& name, const AffineExpr& value) const;
  /// Evaluates when every parameter is bound.
  [[nodiscard]] std::optional<long long> evaluate(const std::map<std::string, long long>& values) const;

  /// "k + 10", "c - k - 3", "0".
  [[nodiscard]] std::string to_string() const;

 private:
  long long constant_ = 0;
  std::map<std::string, long long> coeffs_;
};

enum class Dominance { Less, Equal, Greater, Incomparable };

/// a <= b iff the constant and every coefficient of a is <= that of b.
Dominance compare(const AffineExpr& a, const AffineExpr& b);

struct Relation {
  enum class Op { Equal, GreaterEqual };
  Op op = Op::Equal;
  AffineExpr expr;  // the relation is "expr = 0" or "expr >= 0"

  /// Parses "lhs = rhs", "lhs >= rhs", "lhs <= rhs".
  static Relation parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;
};

struct ChaseProblem {
  /// Betti numbers of the total space, degree-indexed; beyond the list they
  /// are zero. std::nullopt marks an unprinted entry (fresh unknown "t<i>").
  std::vector<std::optional<AffineExpr>> totals;
  /// Top degree allowed nonzero in the quotient, one per step.
  std::vector<int> cutoffs;
  /// Pins keyed "B<i>@<step>", "rho<i>@<step>" or "t<i>".
  std::map<std::string, AffineExpr> pins;

  /// Default cutoffs: (top degree of totals) - step.
  static std::vector<int> default_cutoffs(std::size_t total_count, int steps);
};

struct ChaseStep {
  int step = 0;
  int cutoff = 0;
  std::vector<AffineExpr> totals;
  std::vector<AffineExpr> quotient;  // B_0..B_cutoff
  std::vector<AffineExpr> ranks;     // rho_0..rho_cutoff
};

struct ChaseResult {
  std::vector<ChaseStep> steps;
  /// Eliminated variables and their values in terms of the free ones.
  std::map<std::string, AffineExpr> substitutions;
  /// Problem parameters that were eliminated (derived parameter relations).
  std::map<std::string, AffineExpr> parameter_relations;
  std::vector<AffineExpr> residual_equalities;  // expr = 0
  std::vector<AffineExpr> conditions;           // expr >= 0, not decided by dominance
  std::vector<std::string> fresh_unknowns;
  bool unique = false;

  /// Value of any variable ("B4@3", "k", ...) under the substitutions.
  [[nodiscard]] AffineExpr reduce(const AffineExpr& e) const;
};

class InconsistentChase : public Error {
 public:
  InconsistentChase(int step, std::string relation, ChaseResult partial);

  [[nodiscard]] int step() const { return step_; }
  [[nodiscard]] const std::string& relation() const { return relation_; }
  /// Completed steps plus whatever the failing step had forced.
  [[nodiscard]] const ChaseResult& partial() const { return partial_; }

 private:
  int step_;
  std::string relation_;
  ChaseResult partial_;
};

struct ChaseOptions {
  /// Per step, the order in which degree equations are imposed. Empty means
  /// ascending; any permutation yields the same solution set.
  std::vector<std::vector<int>> degree_orders;
};

/// One quotient step (uses cutoffs[0]).
ChaseResult gysin_step(const ChaseProblem& p, const ChaseOptions& options = {});

/// Iterated quotients: the quotient profile of each step is the total of the
/// next. Throws InconsistentChase naming the step.
ChaseResult chase_tower(const ChaseProblem& p, const ChaseOptions& options = {});

/// True iff the relation holds on every solution represented by r (proved
/// by substitution and dominance; unproved relations report false).
bool entails(const ChaseResult& r, const Relation& relation);

}  // namespace gkm
