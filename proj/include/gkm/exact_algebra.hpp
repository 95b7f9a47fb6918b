#pragma once

// Exact arithmetic: rationals, homogeneous multivariate polynomials,
// dense rational matrices, integer lattices and truncated Poincare series.
// No floating point is used anywhere in this library.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gkm {

using Rational = mpq_class;
using Integer = mpz_class;

/// Integer vector in Z^d (weights, linear forms, lattice vectors).
using IntVector = std::vector<long long>;

/// Exponent vector of a monomial in d variables.
using Exponent = std::vector<int>;

/// Parses "p", "-p" or "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

bool is_integer(const Rational& value);

// ---------------------------------------------------------------------------
// Polynomials

/// Polynomial in t1..td with rational coefficients. Zero coefficients are
/// never stored. Terms iterate in descending lexicographic order of their
/// exponent vectors (t1 > t2 > ... > td).
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational, std::greater<>>;

  explicit Polynomial(std::size_t variable_count = 0) : variables_(variable_count) {}

  static Polynomial constant(std::size_t variable_count, const Rational& value);
  static Polynomial variable(std::size_t variable_count, std::size_t index);
  static Polynomial monomial(Exponent exponent, const Rational& coefficient);
  /// The linear form sum_i form[i] * t_{i+1}.
  static Polynomial linear_form(std::span<const long long> form);

  [[nodiscard]] std::size_t variable_count() const { return variables_; }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const;
  /// Zero counts as homogeneous of every degree.
  [[nodiscard]] bool is_homogeneous() const;
  [[nodiscard]] Rational coefficient(const Exponent& exponent) const;

  void add_term(const Exponent& exponent, const Rational& coefficient);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  [[nodiscard]] Polynomial pow(unsigned exponent) const;

  /// Substitutes t_i -> images[i], where every image lives in the same ring.
  [[nodiscard]] Polynomial substitute(std::span<const Polynomial> images) const;

  /// Canonical text: descending lex terms, e.g. "t1^2*t3 - 3/2*t2 + 1".
  [[nodiscard]] std::string to_string() const;

 private:
  void check_ring(const Polynomial& other) const;

  std::size_t variables_;
  TermMap terms_;
};

struct LinearDivision {
  Polynomial quotient;
  Polynomial remainder;
};

/// Multivariate division of p by the linear form sum form[i] t_{i+1}, using
/// the lexicographic leading variable of the form. The remainder is free of
/// that variable and vanishes iff the form divides p.
LinearDivision divide_by_linear_form(const Polynomial& p, std::span<const long long> form);

/// All exponent vectors of total degree r in d variables, descending lex.
std::vector<Exponent> homogeneous_basis(std::size_t d, int r);

/// Binomial coefficient C(n, k) (0 when k < 0 or k > n).
Integer binomial(long long n, long long k);

// ---------------------------------------------------------------------------
// Integer lattices

/// Z-basis (as columns, returned as vectors) of {x in Z^d : rows * x = 0}.
/// Computed by unimodular column reduction with a fixed pivot order, so the
/// result is deterministic.
std::vector<IntVector> integer_kernel_basis(std::span<const IntVector> rows, std::size_t d);

/// Rank over Q of a list of integer vectors.
std::size_t integer_rank(std::span<const IntVector> vectors);

/// Row Hermite normal form of the saturation (span_Q(generators) cap Z^d).
/// Unique for a given saturated lattice, hence usable as a dedup key.
std::vector<IntVector> saturated_lattice_basis(std::span<const IntVector> generators,
                                               std::size_t d);

/// Coordinates of v with respect to a lattice basis; empty if v is not in the
/// rational span.
std::vector<Rational> lattice_coordinates(std::span<const IntVector> basis, const IntVector& v);

/// Substitutes a parametrization of the hyperplane {form = 0} into p; the
/// result has d - 1 variables and is zero iff the form divides p.
Polynomial restrict_to_hyperplane(const Polynomial& p, std::span<const long long> form);

// ---------------------------------------------------------------------------
// Matrices

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  /// Appends a row; the row length must equal cols().
  void append_row(std::span<const Rational> row);

  [[nodiscard]] std::vector<Rational> multiply(std::span<const Rational> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

std::size_t rank(const Matrix& m);

/// Basis of the right kernel; one vector per free column of the reduced row
/// echelon form, with a 1 in that free position.
std::vector<std::vector<Rational>> kernel_basis(const Matrix& m);

// ---------------------------------------------------------------------------
// Poincare series

/// Truncated series: coefficients[i] is the coefficient of q^i for
/// 0 <= i <= truncation_degree. Beyond the truncation nothing is known.
class PoincareSeries {
 public:
  PoincareSeries(std::vector<Rational> coefficients, int truncation_degree);

  /// Builds an even series from per-half-degree values: q^{2j} -> values[j].
  static PoincareSeries from_even(std::span<const Rational> values);

  [[nodiscard]] int truncation_degree() const { return truncation_; }
  /// Throws InvalidArgument beyond the truncation degree.
  [[nodiscard]] const Rational& at(int degree) const;

 private:
  std::vector<Rational> coefficients_;
  int truncation_;
};

/// Degree-indexed Betti numbers b_0..b_{2n}.
using BettiProfile = std::vector<long long>;

/// Computes P_T(q) * (1 - q^2)^d truncated at degree 2n. Throws
/// NegativeCoefficient or NonIntegral when the result is not a valid profile.
BettiProfile series_shape_divide(const PoincareSeries& series, std::size_t d, int n);

/// Truncated product profile(q) / (1 - q^2)^d up to degree `truncation`.
PoincareSeries series_shape_multiply(const BettiProfile& profile, std::size_t d, int truncation);

}  // namespace gkm
